#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wfe/diffusion.hpp"
#include "wfe/quadrature.hpp"

namespace wfe {

// ---- rule M1 closed forms ----

// Normalized scale function of the M1 diffusion: S(0)=0, S(1)=1.
// kappa=0 delegates to the classical selection form (1-e^{-2ax})/(1-e^{-2a}).
double scale_m1(double kappa, double alpha, double x);

// Probability that the inefficient type fixes, starting from inefficient
// frequency y (internally x = 1-y). Handles the 2*alpha = kappa branch.
double fixation_prob_inefficient_m1(double kappa, double alpha, double y);

// Expected absorption time of the neutral M1 diffusion (kappa < 1):
// 2x log((1-kx)/(x(1-k))) - (2(1-x)/(1-k)) log((1-x)/(1-kx)).
// kappa = 1 has infinite expectation and throws.
double expected_fixation_time_m1_neutral(double kappa, double x);

// Neutral Green's function: 2x/(u(1-ku)) for x<u<1, 2(1-x)/((1-u)(1-ku)) for 0<u<x.
double greens_m1_neutral(double kappa, double x, double u);

// ---- generic scale machinery ----

// Closed-form scale density s(u) (unnormalized, s = exp(-int 2*mu/sigma^2))
// for any variant; the log-density integrates in closed form for all four.
double scale_density(const DiffusionSpec &spec, double u);

// Independent route: nested numerical integration of 2*drift/sigma^2 built
// only from the diffusion coefficients. Returns the normalized S(x) in [0,1].
double scale_numeric(const DiffusionSpec &spec, double x, const QuadratureSpec &quad = {});

// E[T_absorb | X_0 = x] via the two-branch Green's function built from the
// variant's scale density; throws for kappa = 1 (infinite expectation).
double expected_fixation_time_numeric(const DiffusionSpec &spec, double x,
                                      const QuadratureSpec &quad = {});

// ---- rule M2 case (i) fixation ----

// Integral ratio with density e^{-2ku}(1-ku)^{-2a/k} on [1-y,1] over [0,1].
double fixation_prob_inefficient_m2_case_i(double kappa, double alpha, double y,
                                           const QuadratureSpec &quad = {});

// ---- boundary classification ----

enum class BoundaryAccess { Accessible, Inaccessible, Inconclusive };

struct BoundaryClassification {
  BoundaryAccess at_zero = BoundaryAccess::Inconclusive;
  BoundaryAccess at_one = BoundaryAccess::Inconclusive;
};

// Speed-measure integral test evaluated numerically near each boundary with
// a shrinking truncation and divergence-trend extrapolation.
BoundaryClassification boundary_classification(const DiffusionSpec &spec);

// ---- Sibuya (kappa=1 stationary vertex-count law) ----

struct SibuyaDist {
  double gamma = 1.0;  // in (0,1]; pgf 1-(1-x)^gamma
};

// p_1 = gamma, p_{k+1} = p_k (k-gamma)/(k+1)
double sibuya_pmf(const SibuyaDist &dist, std::int64_t k);
std::vector<double> sibuya_pmf_prefix(const SibuyaDist &dist, std::int64_t kmax);

// P(X_inf = 1) = 1-(1-x)^{1-2a} for kappa=1, alpha < 1/2; 0 for alpha > 1/2.
// alpha = 1/2 exactly is an unresolved case and throws.
double x_infinity_law(double alpha, double x);

// Interior zero of the CaseI drift factor: x* = (kappa-alpha)/kappa^2 when in (0,1).
std::optional<double> drift_root_case_i(double kappa, double alpha);

}  // namespace wfe
