#include "wfe/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace wfe {

namespace {

constexpr double kBranchTol = 1e-12;  // |kappa - 2*alpha| switch for the log branch

double scale_classical(double alpha, double x) {
  // scale density e^{2au}: S(x) = (e^{2ax}-1)/(e^{2a}-1); the kappa->0 limit
  // of the efficiency scale function.
  if (alpha == 0.0) return x;
  return std::expm1(2.0 * alpha * x) / std::expm1(2.0 * alpha);
}

}  // namespace

double scale_m1(double kappa, double alpha, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("scale_m1: x must lie in [0,1]");
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("scale_m1: kappa in [0,1]");
  if (kappa == 0.0) return scale_classical(alpha, x);
  if (std::abs(kappa - 2.0 * alpha) < kBranchTol) {
    // S(x) ~ log(1/(1-kx))
    return std::log1p(-kappa * x) / std::log1p(-kappa);
  }
  const double e = 1.0 - 2.0 * alpha / kappa;
  // 1 - (1-kx)^e, computed as -expm1(e*log1p(-kx)) for stability near kx ~ 0
  const double num = -std::expm1(e * std::log1p(-kappa * x));
  const double den = -std::expm1(e * std::log1p(-kappa));
  return num / den;
}

double fixation_prob_inefficient_m1(double kappa, double alpha, double y) {
  if (y < 0.0 || y > 1.0) throw std::invalid_argument("y must lie in [0,1]");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (kappa < 0.0 || kappa >= 1.0)
    throw std::invalid_argument(
        "fixation_prob_inefficient_m1: kappa must lie in [0,1); kappa=1 is x_infinity_law");
  if (kappa == 0.0) {
    // classical Wright-Fisher with selection
    if (alpha == 0.0) return y;
    return -std::expm1(-2.0 * alpha * y) / -std::expm1(-2.0 * alpha);
  }
  // P_y = 1 - S(1-y)/S(1) with the scale of the M1 diffusion
  return 1.0 - scale_m1(kappa, alpha, 1.0 - y);
}

double expected_fixation_time_m1_neutral(double kappa, double x) {
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("kappa must lie in [0,1]");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("x must lie in [0,1]");
  if (kappa == 1.0)
    throw std::domain_error("expected_fixation_time_m1_neutral: infinite at kappa=1");
  if (x == 0.0 || x == 1.0) return 0.0;
  const double kx = 1.0 - kappa * x;
  return 2.0 * x * std::log(kx / (x * (1.0 - kappa))) -
         2.0 * (1.0 - x) / (1.0 - kappa) * std::log((1.0 - x) / kx);
}

double greens_m1_neutral(double kappa, double x, double u) {
  if (u <= 0.0 || u >= 1.0) throw std::invalid_argument("greens_m1_neutral: u must lie in (0,1)");
  if (x <= 0.0 || x >= 1.0) throw std::invalid_argument("greens_m1_neutral: x must lie in (0,1)");
  const double ku = 1.0 - kappa * u;
  return u > x ? 2.0 * x / (u * ku) : 2.0 * (1.0 - x) / ((1.0 - u) * ku);
}

double scale_density(const DiffusionSpec &spec, double u) {
  // log s(u) = -int_0^u 2*drift_factor(v)/(1-kappa*v) dv, in closed form per variant
  const double a = spec.alpha;
  const double k = spec.kappa;
  double logs = k > 0.0 ? -(2.0 * a / k) * std::log1p(-k * u) : 2.0 * a * u;
  if (spec.variant == DiffusionSpec::Variant::M2) {
    const M2CaseData &m2 = *spec.m2;
    switch (m2.case_tag) {
      case M2Case::CaseI:
        logs += -2.0 * k * u;
        break;
      case M2Case::CaseII: {
        double sum = 0.0;
        double up = u;  // u^r
        for (std::int64_t r = 1; r < m2.b; ++r) {
          up *= u;  // u^{r+1}
          if (r >= spec.caseii_sum_from) sum += u - up / static_cast<double>(r + 1);
        }
        logs += -2.0 * (1.0 - k) * sum;
        break;
      }
      case M2Case::CaseIII: {
        double sum = 0.0;
        double up = 1.0;
        for (int i = 1; i <= m2.m; ++i) {
          up *= u;  // u^i -> need u^{i+1} below
          sum += m2.c[static_cast<std::size_t>(i - 1)] * (u - up * u / static_cast<double>(i + 1));
        }
        logs += -2.0 * sum;
        break;
      }
    }
  }
  return std::exp(logs);
}

double scale_numeric(const DiffusionSpec &spec, double x, const QuadratureSpec &quad) {
  if (spec.kappa >= 1.0) throw std::invalid_argument("scale_numeric: requires kappa < 1");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("x must lie in [0,1]");
  QuadratureSpec inner = quad;
  inner.abs_tol = std::min(quad.abs_tol, 1e-12);
  inner.rel_tol = std::min(quad.rel_tol, 1e-12);
  const double k = spec.kappa;
  auto log_density = [&](double u) {
    // -int_{1/2}^{u} 2*drift/sigma^2 dv, using the algebraically reduced ratio
    auto ratio = [&](double v) { return 2.0 * drift_factor(spec, v) / (1.0 - k * v); };
    const double sign = u >= 0.5 ? -1.0 : 1.0;
    const double lo = std::min(u, 0.5), hi = std::max(u, 0.5);
    return sign * adaptive_quadrature(ratio, lo, hi, inner).value;
  };
  auto density = [&](double u) { return std::exp(log_density(u)); };
  const double sx = x == 0.0 ? 0.0 : adaptive_quadrature(density, 0.0, x, quad).value;
  const double s1 = sx + adaptive_quadrature(density, x, 1.0, quad).value;
  return sx / s1;
}

double expected_fixation_time_numeric(const DiffusionSpec &spec, double x,
                                      const QuadratureSpec &quad) {
  if (spec.kappa >= 1.0)
    throw std::domain_error("expected_fixation_time_numeric: infinite at kappa=1");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("x must lie in [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  const double k = spec.kappa;
  QuadratureSpec srule = quad;
  srule.abs_tol = std::min(quad.abs_tol, 1e-12);
  srule.rel_tol = std::min(quad.rel_tol, 1e-12);
  auto density = [&](double u) { return scale_density(spec, u); };
  auto S = [&](double u) {
    return u == 0.0 ? 0.0 : adaptive_quadrature(density, 0.0, u, srule).value;
  };
  const double s1 = S(1.0);
  const double sx = S(x);
  auto green_right = [&](double u) {
    // x < u < 1:  2 S(x) (S(1)-S(u)) / (S(1) s(u) u(1-u)(1-ku))
    return 2.0 * sx * (s1 - S(u)) /
           (s1 * density(u) * u * (1.0 - u) * (1.0 - k * u));
  };
  auto green_left = [&](double u) {
    return 2.0 * (s1 - sx) * S(u) / (s1 * density(u) * u * (1.0 - u) * (1.0 - k * u));
  };
  const double right = adaptive_quadrature(green_right, x, 1.0, quad).value;
  const double left = adaptive_quadrature(green_left, 0.0, x, quad).value;
  return left + right;
}

double fixation_prob_inefficient_m2_case_i(double kappa, double alpha, double y,
                                           const QuadratureSpec &quad) {
  if (!(kappa > 0.0 && kappa < 0.5))
    throw std::invalid_argument("fixation_prob_inefficient_m2_case_i: kappa in (0,1/2)");
  if (y < 0.0 || y > 1.0) throw std::invalid_argument("y must lie in [0,1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  auto density = [&](double u) {
    return std::exp(-2.0 * kappa * u - (2.0 * alpha / kappa) * std::log1p(-kappa * u));
  };
  const double tail = adaptive_quadrature(density, 1.0 - y, 1.0, quad).value;
  const double head = adaptive_quadrature(density, 0.0, 1.0 - y, quad).value;
  return tail / (head + tail);
}

namespace {

// J(eps) = int_{1/2}^{boundary -/+ eps} M(u) dS(u), with M the speed-measure
// integral from 1/2. Divergence as eps -> 0 means the boundary is inaccessible.
double access_integral(const DiffusionSpec &spec, int boundary, double eps) {
  QuadratureSpec rule;
  rule.abs_tol = 1e-9;
  rule.rel_tol = 1e-9;
  rule.max_subdivisions = 20000;
  const double k = spec.kappa;
  auto m = [&](double u) {
    const double var = u * (1.0 - u) * (1.0 - k * u);
    return 1.0 / (var * scale_density(spec, u));
  };
  auto Mfun = [&](double u) {
    const double lo = std::min(u, 0.5), hi = std::max(u, 0.5);
    const double v = adaptive_quadrature(m, lo, hi, rule).value;
    return u >= 0.5 ? v : -v;
  };
  auto integrand = [&](double u) { return std::abs(Mfun(u)) * scale_density(spec, u); };
  if (boundary == 1) return adaptive_quadrature(integrand, 0.5, 1.0 - eps, rule).value;
  return adaptive_quadrature(integrand, eps, 0.5, rule).value;
}

BoundaryAccess classify_one_boundary(const DiffusionSpec &spec, int boundary) {
  // Truncations eps = 1e-2..1e-8; convergent integrals show geometrically
  // shrinking increments per decade, divergent ones flat or growing increments.
  const double epss[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  double vals[7];
  for (int i = 0; i < 7; ++i) vals[i] = access_integral(spec, boundary, epss[i]);
  double incr[6];
  for (int i = 0; i < 6; ++i) incr[i] = vals[i + 1] - vals[i];
  const double last = incr[5], prev = incr[4];
  if (last <= 0.0) return BoundaryAccess::Accessible;
  const double ratio = last / prev;
  // Richardson-style residual estimate for the convergent branch
  if (ratio < 0.75) {
    const double residual = last * ratio / (1.0 - ratio);
    if (residual < 0.05 * std::abs(vals[6]) + 1e-6) return BoundaryAccess::Accessible;
  }
  if (ratio > 0.9) return BoundaryAccess::Inaccessible;  // log- or power-divergent trend
  return BoundaryAccess::Inconclusive;
}

}  // namespace

BoundaryClassification boundary_classification(const DiffusionSpec &spec) {
  BoundaryClassification out;
  out.at_zero = classify_one_boundary(spec, 0);
  out.at_one = classify_one_boundary(spec, 1);
  return out;
}

double sibuya_pmf(const SibuyaDist &dist, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("sibuya_pmf: k >= 1");
  const double g = dist.gamma;
  double p = g;
  for (std::int64_t j = 1; j < k; ++j)
    p *= (static_cast<double>(j) - g) / static_cast<double>(j + 1);
  return p;
}

std::vector<double> sibuya_pmf_prefix(const SibuyaDist &dist, std::int64_t kmax) {
  std::vector<double> p(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (kmax < 1) return p;
  p[1] = dist.gamma;
  for (std::int64_t k = 1; k < kmax; ++k)
    p[static_cast<std::size_t>(k + 1)] =
        p[static_cast<std::size_t>(k)] * (static_cast<double>(k) - dist.gamma) /
        static_cast<double>(k + 1);
  return p;
}

double x_infinity_law(double alpha, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("x must lie in [0,1]");
  if (alpha == 0.5)
    throw std::domain_error("x_infinity_law: alpha = 1/2 is an unresolved case");
  if (alpha > 0.5) return 0.0;
  return -std::expm1((1.0 - 2.0 * alpha) * std::log1p(-x));
}

std::optional<double> drift_root_case_i(double kappa, double alpha) {
  if (!(kappa > 0.0)) return std::nullopt;
  const double root = (kappa - alpha) / (kappa * kappa);
  if (root > 0.0 && root < 1.0) return root;
  return std::nullopt;
}

}  // namespace wfe
