#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wfe/rational.hpp"
#include "wfe/rng.hpp"

namespace wfe {

enum class M2Case { CaseI, CaseII, CaseIII };

// Parameters of the rule-M2 limit, split by the arithmetic of kappa = a/b:
//   CaseI:   kappa in (0,1/2)
//   CaseII:  1-kappa = 1/b
//   CaseIII: 1-kappa = a'/b with a' >= 2 (so 1-kappa in (0,1/2))
struct M2CaseData {
  M2Case case_tag = M2Case::CaseI;
  std::int64_t a = 0;  // numerator of kappa (CaseI) or of 1-kappa (CaseIII)
  std::int64_t b = 0;
  int m = 0;              // CaseIII: floor(1/(1-kappa))
  std::vector<double> c;  // CaseIII: c_1..c_m with c_i = a/b (i<m), c_m = 1-m*a/b
};

M2CaseData classify_m2_case(const Rational &kappa);

struct DiffusionSpec {
  enum class Variant { M1, M2 };
  Variant variant = Variant::M1;
  double alpha = 0.0;  // rescaled selection, s_N = alpha/N
  double kappa = 0.0;
  std::optional<M2CaseData> m2;
  int caseii_sum_from = 2;  // lower index r0 of the CaseII drift sum (1 or 2)
};

DiffusionSpec make_m1_spec(double kappa, double alpha);
DiffusionSpec make_m2_spec(const Rational &kappa, double alpha, int caseii_sum_from = 2);

// drift(x) = drift_factor(x) * x * (1-x); the factor form is what the scale
// density integrates, so it is exposed separately.
double drift_factor(const DiffusionSpec &spec, double x);
double drift(const DiffusionSpec &spec, double x);
double noise_coef(const DiffusionSpec &spec, double x);

// A f = drift * f' + (1/2) * noise^2 * f''  (Ito convention)
template <class F0, class F1, class F2>
double generator_apply(const DiffusionSpec &spec, F0 &&f, F1 &&fp, F2 &&fpp, double x) {
  (void)f;
  const double sigma = noise_coef(spec, x);
  return drift(spec, x) * fp(x) + 0.5 * sigma * sigma * fpp(x);
}

// One Euler-Maruyama step with boundary clamping. For kappa < 1 both clamped
// boundaries are absorbing; for kappa = 1 the state is clamped to
// [0, 1-1e-12] and only 0 absorbs.
double em_step(const DiffusionSpec &spec, double x, double dt, double gaussian);

struct DiffusionPath {
  std::vector<double> times;
  std::vector<double> values;
  struct Absorption {
    int boundary = 0;  // 0 or 1
    double time = 0.0;
  };
  std::optional<Absorption> absorbed;
};

// Simulates until the horizon and/or absorption; at least one must be set.
// record_every thins the stored path (1 = every step).
DiffusionPath simulate_path(const DiffusionSpec &spec, double x0, double dt,
                            std::optional<double> horizon, bool until_absorption,
                            RngStream &rng, std::int64_t record_every = 1);

struct AbsorptionOutcome {
  int boundary = 0;
  double time = 0.0;
};

// Runs to absorption; refuses kappa = 1 (boundary 1 inaccessible).
AbsorptionOutcome absorption_trial(const DiffusionSpec &spec, double x0, double dt,
                                   RngStream &rng);

// Lean stepper: advances x by n_steps EM steps (or until absorbed), returning
// the new state. Used by the Monte Carlo drivers that do not store paths.
double em_advance(const DiffusionSpec &spec, double x, double dt, std::int64_t n_steps,
                  RngStream &rng);

inline bool is_absorbed(const DiffusionSpec &spec, double x) {
  return x == 0.0 || (x == 1.0 && spec.kappa < 1.0);
}

}  // namespace wfe
