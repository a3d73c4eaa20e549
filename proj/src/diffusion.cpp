#include "wfe/diffusion.hpp"

#include <cmath>
#include <stdexcept>

namespace wfe {

M2CaseData classify_m2_case(const Rational &kappa_in) {
  const Rational kappa = reduce_rational(kappa_in.num, kappa_in.den);
  if (kappa.num <= 0 || kappa.num >= kappa.den)
    throw std::invalid_argument("classify_m2_case: kappa must lie in (0,1)");
  M2CaseData data;
  if (2 * kappa.num < kappa.den) {
    data.case_tag = M2Case::CaseI;
    data.a = kappa.num;
    data.b = kappa.den;
    return data;
  }
  // 1-kappa = (b-a)/b, already reduced since gcd(b-a,b) = gcd(a,b) = 1
  const std::int64_t ap = kappa.den - kappa.num;
  data.b = kappa.den;
  if (ap == 1) {
    data.case_tag = M2Case::CaseII;
    data.a = 1;
    return data;
  }
  data.case_tag = M2Case::CaseIII;
  data.a = ap;
  data.m = static_cast<int>(data.b / ap);  // floor(1/(1-kappa))
  data.c.assign(static_cast<std::size_t>(data.m),
                static_cast<double>(ap) / static_cast<double>(data.b));
  data.c.back() = 1.0 - static_cast<double>(data.m) * static_cast<double>(ap) /
                            static_cast<double>(data.b);
  return data;
}

DiffusionSpec make_m1_spec(double kappa, double alpha) {
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("kappa must lie in [0,1]");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  DiffusionSpec s;
  s.variant = DiffusionSpec::Variant::M1;
  s.alpha = alpha;
  s.kappa = kappa;
  return s;
}

DiffusionSpec make_m2_spec(const Rational &kappa, double alpha, int caseii_sum_from) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (caseii_sum_from != 1 && caseii_sum_from != 2)
    throw std::invalid_argument("caseii_sum_from must be 1 or 2");
  DiffusionSpec s;
  s.variant = DiffusionSpec::Variant::M2;
  s.alpha = alpha;
  s.m2 = classify_m2_case(kappa);
  s.kappa = static_cast<double>(reduce_rational(kappa.num, kappa.den).num) /
            static_cast<double>(reduce_rational(kappa.num, kappa.den).den);
  s.caseii_sum_from = caseii_sum_from;
  return s;
}

double drift_factor(const DiffusionSpec &spec, double x) {
  if (spec.variant == DiffusionSpec::Variant::M1) return -spec.alpha;
  const M2CaseData &m2 = *spec.m2;
  switch (m2.case_tag) {
    case M2Case::CaseI:
      return -spec.alpha + spec.kappa * (1.0 - spec.kappa * x);
    case M2Case::CaseII: {
      double sum = 0.0;
      double xr = x;  // x^1
      for (std::int64_t r = 1; r < m2.b; ++r) {
        if (r >= spec.caseii_sum_from) sum += 1.0 - xr;
        xr *= x;
      }
      return -spec.alpha + (1.0 - spec.kappa) * (1.0 - spec.kappa * x) * sum;
    }
    case M2Case::CaseIII: {
      double sum = 0.0;
      double xi = 1.0;
      for (int i = 1; i <= m2.m; ++i) {
        xi *= x;  // x^i
        sum += m2.c[static_cast<std::size_t>(i - 1)] * (1.0 - xi);
      }
      return -spec.alpha + (1.0 - spec.kappa * x) * sum;
    }
  }
  return 0.0;
}

double drift(const DiffusionSpec &spec, double x) {
  return drift_factor(spec, x) * x * (1.0 - x);
}

double noise_coef(const DiffusionSpec &spec, double x) {
  const double v = x * (1.0 - x) * (1.0 - spec.kappa * x);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

double em_step(const DiffusionSpec &spec, double x, double dt, double gaussian) {
  if (is_absorbed(spec, x)) return x;
  double y = x + drift(spec, x) * dt + noise_coef(spec, x) * std::sqrt(dt) * gaussian;
  const double upper = spec.kappa < 1.0 ? 1.0 : 1.0 - 1e-12;
  if (y < 0.0) y = 0.0;
  if (y > upper) y = upper;
  return y;
}

DiffusionPath simulate_path(const DiffusionSpec &spec, double x0, double dt,
                            std::optional<double> horizon, bool until_absorption,
                            RngStream &rng, std::int64_t record_every) {
  if (x0 < 0.0 || x0 > 1.0) throw std::invalid_argument("simulate_path: x0 must lie in [0,1]");
  if (dt <= 0.0) throw std::invalid_argument("simulate_path: dt must be positive");
  if (!horizon && !until_absorption)
    throw std::invalid_argument("simulate_path: need a horizon or until-absorption");
  if (record_every < 1) record_every = 1;
  DiffusionPath path;
  double x = spec.kappa >= 1.0 && x0 > 1.0 - 1e-12 ? 1.0 - 1e-12 : x0;
  double t = 0.0;
  path.times.push_back(t);
  path.values.push_back(x);
  if (is_absorbed(spec, x)) {
    path.absorbed = DiffusionPath::Absorption{x == 0.0 ? 0 : 1, 0.0};
    return path;
  }
  const double sqdt = std::sqrt(dt);
  std::int64_t step = 0;
  for (;;) {
    if (horizon && t >= *horizon - 0.5 * dt) break;
    double y = x + drift(spec, x) * dt + noise_coef(spec, x) * sqdt * rng.normal();
    const double upper = spec.kappa < 1.0 ? 1.0 : 1.0 - 1e-12;
    if (y < 0.0) y = 0.0;
    if (y > upper) y = upper;
    x = y;
    t += dt;
    ++step;
    const bool absorbed = is_absorbed(spec, x);
    if (absorbed || step % record_every == 0) {
      path.times.push_back(t);
      path.values.push_back(x);
    }
    if (absorbed) {
      path.absorbed = DiffusionPath::Absorption{x == 0.0 ? 0 : 1, t};
      if (!horizon || until_absorption) break;
      // keep the path constant to the horizon
      while (t < *horizon - 0.5 * dt) {
        t += dt;
        ++step;
        if (step % record_every == 0) {
          path.times.push_back(t);
          path.values.push_back(x);
        }
      }
      break;
    }
    if (until_absorption && !horizon) continue;
  }
  return path;
}

AbsorptionOutcome absorption_trial(const DiffusionSpec &spec, double x0, double dt,
                                   RngStream &rng) {
  if (spec.kappa >= 1.0)
    throw std::invalid_argument(
        "absorption_trial: boundary 1 is inaccessible at kappa=1; use a long-horizon run");
  if (x0 < 0.0 || x0 > 1.0) throw std::invalid_argument("x0 must lie in [0,1]");
  double x = x0;
  double t = 0.0;
  const double sqdt = std::sqrt(dt);
  while (!is_absorbed(spec, x)) {
    double y = x + drift(spec, x) * dt + noise_coef(spec, x) * sqdt * rng.normal();
    if (y < 0.0) y = 0.0;
    if (y > 1.0) y = 1.0;
    x = y;
    t += dt;
  }
  return AbsorptionOutcome{x == 0.0 ? 0 : 1, t};
}

double em_advance(const DiffusionSpec &spec, double x, double dt, std::int64_t n_steps,
                  RngStream &rng) {
  const double sqdt = std::sqrt(dt);
  const double upper = spec.kappa < 1.0 ? 1.0 : 1.0 - 1e-12;
  const bool m1 = spec.variant == DiffusionSpec::Variant::M1;
  const double alpha = spec.alpha;
  const double kappa = spec.kappa;
  for (std::int64_t i = 0; i < n_steps; ++i) {
    if (x == 0.0 || (x == 1.0 && kappa < 1.0)) return x;
    const double xq = x * (1.0 - x);
    const double g = m1 ? -alpha : drift_factor(spec, x);
    const double var = xq * (1.0 - kappa * x);
    const double sigma = var > 0.0 ? std::sqrt(var) : 0.0;
    double y = x + g * xq * dt + sigma * sqdt * rng.normal();
    if (y < 0.0) y = 0.0;
    if (y > upper) y = upper;
    x = y;
  }
  return x;
}

}  // namespace wfe
