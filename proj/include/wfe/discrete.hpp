#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wfe/rational.hpp"
#include "wfe/rng.hpp"

namespace wfe {

enum class StoppingRule { M1, M2 };

// Resource-constrained Wright-Fisher generation model.
// Type 0 (efficient) costs 1-kappa resource units, type 1 (inefficient) costs 1;
// each generation spends a fixed budget of resource_n units.
struct DiscreteConfig {
  std::int64_t resource_n = 0;
  Rational kappa_rat{0, 1};  // exact value; meaningful when kappa_exact
  double kappa = 0.0;
  bool kappa_exact = true;
  double s = 0.0;  // selection against type 0
  StoppingRule rule = StoppingRule::M1;
  double x0 = 0.0;
  std::int64_t max_generations = 0;  // 0 -> default 100*resource_n
};

// Validates invariants and fills defaults. M2 requires exact rational kappa.
DiscreteConfig make_discrete_config(std::int64_t resource_n, Rational kappa, double s,
                                    StoppingRule rule, double x0,
                                    std::int64_t max_generations = 0);
// M1-only variant accepting an inexact kappa (cost ledger runs in doubles with
// a 1e-12*N guard band on the stopping comparison).
DiscreteConfig make_discrete_config_real_kappa(std::int64_t resource_n, double kappa, double s,
                                               StoppingRule rule, double x0,
                                               std::int64_t max_generations = 0);

struct Generation {
  std::int64_t size_m = 0;
  std::int64_t count_type0 = 0;
  Rational consumed{0, 1};  // exact when kappa is; else nearest 1e-12 rational
  double frequency() const {
    return size_m == 0 ? 0.0 : static_cast<double>(count_type0) / static_cast<double>(size_m);
  }
};

enum class AbsorbedState { AllEfficient, AllInefficient };

struct DiscreteTrajectory {
  std::vector<Generation> generations;
  std::optional<std::int64_t> absorbed_at;
  std::optional<AbsorbedState> absorbed_state;
};

// N_x = N / (1 - kappa*x), the equilibrium generation size at frequency x.
double effective_size_nx(std::int64_t resource_n, double kappa, double x);

// P(new individual picks a type-0 parent) = (1-s)x / (1-sx).
inline double parent_type_prob(double x, double s) {
  return (1.0 - s) * x / (1.0 - s * x);
}

Generation initial_generation(const DiscreteConfig &config);
Generation next_generation(double prev_freq, const DiscreteConfig &config, RngStream &rng);
DiscreteTrajectory simulate_trajectory(const DiscreteConfig &config, RngStream &rng);

struct FixationResult {
  enum class Winner { AllEfficient, AllInefficient, Censored };
  Winner winner = Winner::Censored;
  std::int64_t generations = 0;
};

FixationResult fixation_trial(const DiscreteConfig &config, RngStream &rng);

// Empirical law of the resource left when the running cost first exceeds N-1,
// on the grid {j/b : j=0..b-1}. Requires rule M2 with exact kappa in (0,1).
std::vector<double> leftover_distribution(const DiscreteConfig &config, double prev_freq,
                                          std::int64_t replicates, RngStream &rng);

// b-state chain of the fractional part of the cost ledger: from state j/b the
// chain moves to (j-a mod b)/b with probability x and stays with probability 1-x.
struct LeftoverChain {
  std::int64_t a = 0;
  std::int64_t b = 0;
  double x = 0.0;
  std::vector<std::vector<double>> transition;  // row-stochastic, b x b
};

LeftoverChain make_leftover_chain(std::int64_t a, std::int64_t b, double x);
// Stationary distribution by direct linear solve; uniform(1/b) for 0<x<1.
std::vector<double> leftover_chain_stationary(const LeftoverChain &chain);

// P(M_1/N_x in [1-N^a, 1+N^a]) for one generation step from frequency x; s must be 0.
double concentration_probe(const DiscreteConfig &config, double x, double a_exponent,
                           std::int64_t replicates, RngStream &rng);

}  // namespace wfe
