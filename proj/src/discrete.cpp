#include "wfe/discrete.hpp"

#include <cmath>
#include <stdexcept>

namespace wfe {

DiscreteConfig make_discrete_config(std::int64_t resource_n, Rational kappa, double s,
                                    StoppingRule rule, double x0,
                                    std::int64_t max_generations) {
  if (resource_n <= 0) throw std::invalid_argument("resource_n must be positive");
  kappa = reduce_rational(kappa.num, kappa.den);
  if (kappa.num < 0 || kappa > Rational{1, 1})
    throw std::invalid_argument("kappa must lie in [0,1]");
  if (s < 0.0 || s >= 1.0) throw std::invalid_argument("s must lie in [0,1)");
  if (x0 < 0.0 || x0 > 1.0) throw std::invalid_argument("x0 must lie in [0,1]");
  DiscreteConfig c;
  c.resource_n = resource_n;
  c.kappa_rat = kappa;
  c.kappa = kappa.value();
  c.kappa_exact = true;
  c.s = s;
  c.rule = rule;
  c.x0 = x0;
  c.max_generations = max_generations > 0 ? max_generations : 100 * resource_n;
  return c;
}

DiscreteConfig make_discrete_config_real_kappa(std::int64_t resource_n, double kappa, double s,
                                               StoppingRule rule, double x0,
                                               std::int64_t max_generations) {
  if (rule == StoppingRule::M2)
    throw std::invalid_argument("rule M2 requires an exact rational kappa");
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("kappa must lie in [0,1]");
  DiscreteConfig c = make_discrete_config(resource_n, Rational{0, 1}, s, rule, x0, max_generations);
  c.kappa = kappa;
  c.kappa_exact = false;
  return c;
}

double effective_size_nx(std::int64_t resource_n, double kappa, double x) {
  if (kappa * x >= 1.0) throw std::invalid_argument("effective_size_nx: kappa*x must be < 1");
  return static_cast<double>(resource_n) / (1.0 - kappa * x);
}

Generation initial_generation(const DiscreteConfig &config) {
  const double nx = effective_size_nx(config.resource_n, config.kappa, config.x0);
  Generation g;
  g.size_m = static_cast<std::int64_t>(std::floor(nx));
  g.count_type0 = static_cast<std::int64_t>(std::floor(config.x0 * nx));
  if (g.count_type0 > g.size_m) g.count_type0 = g.size_m;
  if (config.kappa_exact) {
    // consumed = m - kappa*count in exact arithmetic
    g.consumed = Rational{g.size_m, 1} - config.kappa_rat * Rational{g.count_type0, 1};
  } else {
    const double c = static_cast<double>(g.size_m) - config.kappa * static_cast<double>(g.count_type0);
    g.consumed = reduce_rational(static_cast<std::int64_t>(std::llround(c * 1e12)),
                                 static_cast<std::int64_t>(1e12));
  }
  return g;
}

namespace {

Generation next_generation_exact(double prev_freq, const DiscreteConfig &config, RngStream &rng) {
  const std::int64_t a = config.kappa_rat.num;
  const std::int64_t b = config.kappa_rat.den;
  const std::int64_t budget = config.resource_n * b;  // ledger in units of 1/b
  const std::int64_t cost0 = b - a;
  const std::int64_t cost1 = b;
  const double p0 = parent_type_prob(prev_freq, config.s);
  if (cost0 == 0 && p0 >= 1.0)
    throw std::invalid_argument("next_generation: kappa=1 with all-efficient parents never stops");
  std::int64_t cost = 0, m = 0, k = 0;
  if (config.rule == StoppingRule::M1) {
    for (;;) {
      const bool eff = rng.uniform() < p0;
      cost += eff ? cost0 : cost1;
      ++m;
      k += eff;
      if (cost >= budget) break;  // overshooting individual is kept
    }
  } else {
    for (;;) {
      const bool eff = rng.uniform() < p0;
      const std::int64_t c = eff ? cost0 : cost1;
      if (cost + c > budget) break;  // discarded, production stops
      cost += c;
      ++m;
      k += eff;
      if (cost == budget) break;
    }
  }
  Generation g;
  g.size_m = m;
  g.count_type0 = k;
  g.consumed = reduce_rational(cost, b);
  return g;
}

Generation next_generation_real(double prev_freq, const DiscreteConfig &config, RngStream &rng) {
  // M1 only; stopping comparison carries a 1e-12*N guard band against
  // accumulated rounding in the double ledger.
  const double n = static_cast<double>(config.resource_n);
  const double guard = 1e-12 * n;
  const double cost0 = 1.0 - config.kappa;
  const double p0 = parent_type_prob(prev_freq, config.s);
  if (cost0 == 0.0 && p0 >= 1.0)
    throw std::invalid_argument("next_generation: kappa=1 with all-efficient parents never stops");
  double cost = 0.0;
  std::int64_t m = 0, k = 0;
  for (;;) {
    const bool eff = rng.uniform() < p0;
    cost += eff ? cost0 : 1.0;
    ++m;
    k += eff;
    if (cost >= n - guard) break;
  }
  Generation g;
  g.size_m = m;
  g.count_type0 = k;
  g.consumed = reduce_rational(static_cast<std::int64_t>(std::llround(cost * 1e12)),
                               static_cast<std::int64_t>(1e12));
  return g;
}

}  // namespace

Generation next_generation(double prev_freq, const DiscreteConfig &config, RngStream &rng) {
  if (prev_freq < 0.0 || prev_freq > 1.0)
    throw std::invalid_argument("next_generation: prev_freq must lie in [0,1]");
  return config.kappa_exact ? next_generation_exact(prev_freq, config, rng)
                            : next_generation_real(prev_freq, config, rng);
}

DiscreteTrajectory simulate_trajectory(const DiscreteConfig &config, RngStream &rng) {
  DiscreteTrajectory traj;
  Generation g = initial_generation(config);
  traj.generations.push_back(g);
  for (std::int64_t n = 0;; ++n) {
    if (g.count_type0 == 0 || g.count_type0 == g.size_m) {
      traj.absorbed_at = n;
      traj.absorbed_state =
          g.count_type0 == 0 ? AbsorbedState::AllInefficient : AbsorbedState::AllEfficient;
      break;
    }
    if (n >= config.max_generations) break;
    g = next_generation(g.frequency(), config, rng);
    traj.generations.push_back(g);
  }
  return traj;
}

FixationResult fixation_trial(const DiscreteConfig &config, RngStream &rng) {
  // Same loop as simulate_trajectory without storing the path.
  Generation g = initial_generation(config);
  FixationResult r;
  for (std::int64_t n = 0;; ++n) {
    if (g.count_type0 == 0 || g.count_type0 == g.size_m) {
      r.winner = g.count_type0 == 0 ? FixationResult::Winner::AllInefficient
                                    : FixationResult::Winner::AllEfficient;
      r.generations = n;
      return r;
    }
    if (n >= config.max_generations) {
      r.winner = FixationResult::Winner::Censored;
      r.generations = n;
      return r;
    }
    g = next_generation(g.frequency(), config, rng);
  }
}

std::vector<double> leftover_distribution(const DiscreteConfig &config, double prev_freq,
                                          std::int64_t replicates, RngStream &rng) {
  if (config.rule != StoppingRule::M2 || !config.kappa_exact)
    throw std::invalid_argument("leftover_distribution: requires rule M2 with exact kappa");
  const std::int64_t a = config.kappa_rat.num;
  const std::int64_t b = config.kappa_rat.den;
  if (a <= 0 || a >= b)
    throw std::invalid_argument("leftover_distribution: requires 0 < kappa < 1");
  const std::int64_t cost0 = b - a;
  const std::int64_t threshold = (config.resource_n - 1) * b;  // stop once cost exceeds N-1
  const std::int64_t budget = config.resource_n * b;
  const double p0 = parent_type_prob(prev_freq, config.s);
  std::vector<double> mass(static_cast<std::size_t>(b), 0.0);
  for (std::int64_t r = 0; r < replicates; ++r) {
    std::int64_t cost = 0;
    while (cost <= threshold) cost += rng.uniform() < p0 ? cost0 : b;
    mass[static_cast<std::size_t>(budget - cost)] += 1.0;
  }
  for (double &m : mass) m /= static_cast<double>(replicates);
  return mass;
}

LeftoverChain make_leftover_chain(std::int64_t a, std::int64_t b, double x) {
  if (b <= 0 || a <= 0 || a >= b) throw std::invalid_argument("leftover chain: needs 0 < a < b");
  if (std::gcd(a, b) != 1) throw std::invalid_argument("leftover chain: a/b must be reduced");
  LeftoverChain chain;
  chain.a = a;
  chain.b = b;
  chain.x = x;
  chain.transition.assign(static_cast<std::size_t>(b),
                          std::vector<double>(static_cast<std::size_t>(b), 0.0));
  for (std::int64_t j = 0; j < b; ++j) {
    const std::int64_t to = ((j - a) % b + b) % b;
    chain.transition[static_cast<std::size_t>(j)][static_cast<std::size_t>(to)] += x;
    chain.transition[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] += 1.0 - x;
  }
  return chain;
}

std::vector<double> leftover_chain_stationary(const LeftoverChain &chain) {
  if (chain.x <= 0.0 || chain.x >= 1.0)
    throw std::invalid_argument("leftover_chain_stationary: chain degenerate at x in {0,1}");
  const std::size_t b = static_cast<std::size_t>(chain.b);
  // Solve pi (P - I) = 0 with sum(pi) = 1: rows of A are (P^T - I), last row replaced
  // by the normalization constraint.
  std::vector<std::vector<double>> A(b, std::vector<double>(b + 1, 0.0));
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) A[i][j] = chain.transition[j][i] - (i == j ? 1.0 : 0.0);
  }
  for (std::size_t j = 0; j < b; ++j) A[b - 1][j] = 1.0;
  A[b - 1][b] = 1.0;
  // Gaussian elimination with partial pivoting
  for (std::size_t col = 0; col < b; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < b; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[piv], A[col]);
    if (A[col][col] == 0.0) throw std::runtime_error("leftover_chain_stationary: singular system");
    for (std::size_t r = 0; r < b; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j <= b; ++j) A[r][j] -= f * A[col][j];
    }
  }
  std::vector<double> pi(b, 0.0);
  for (std::size_t i = 0; i < b; ++i) pi[i] = A[i][b] / A[i][i];
  return pi;
}

double concentration_probe(const DiscreteConfig &config, double x, double a_exponent,
                           std::int64_t replicates, RngStream &rng) {
  if (config.s != 0.0)
    throw std::invalid_argument("concentration_probe: stated for the neutral rule (s=0)");
  if (a_exponent <= -0.5 || a_exponent >= 0.0)
    throw std::invalid_argument("concentration_probe: exponent must lie in (-1/2, 0)");
  const double nx = effective_size_nx(config.resource_n, config.kappa, x);
  const double band = std::pow(static_cast<double>(config.resource_n), a_exponent);
  std::int64_t inside = 0;
  for (std::int64_t r = 0; r < replicates; ++r) {
    const Generation g = next_generation(x, config, rng);
    const double ratio = static_cast<double>(g.size_m) / nx;
    if (ratio >= 1.0 - band && ratio <= 1.0 + band) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(replicates);
}

}  // namespace wfe
