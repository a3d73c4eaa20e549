#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wfe/mc.hpp"
#include "wfe/rng.hpp"

namespace wfe {

// Branching-coalescing genealogy with three event kinds from j active vertices:
//   coalescence        rate j(j-1)/2   (j -> j-1)
//   branching          rate alpha*j    (j -> j+1)
//   pairwise branching rate kappa*j(j-1)/2  (j -> j+1)
struct AsegParams {
  std::int64_t n0 = 1;
  double alpha = 0.0;
  double kappa = 0.0;
  double horizon = 0.0;  // T
  double x = 0.0;        // tip type-0 probability
};

AsegParams make_aseg_params(std::int64_t n0, double alpha, double kappa, double horizon,
                            double x);

// up = alpha*j + kappa*j(j-1)/2, down = j(j-1)/2
std::pair<double, double> transition_rates(std::int64_t j, double alpha, double kappa);

// Jump-chain step law from state k: (p_up, p_down) with p_up = up/(up+down).
std::pair<double, double> jump_chain_probs(std::int64_t k, double alpha, double kappa);

// Simulation guards. The count ceiling flags probable transience; the event
// budget bounds work in regimes where the jump intensity is heavy-tailed.
// ReflectAtCap instead suppresses up-jumps at the cap: for a birth-death chain
// this truncation leaves the stationary law equal to the original one
// restricted to {1..cap} and renormalized.
struct CountGuard {
  std::int64_t max_count = 1'000'000;
  std::uint64_t max_events = 1'000'000'000ull;
  enum class Mode { FlagAndStop, ReflectAtCap } mode = Mode::FlagAndStop;
};

struct VertexCountPath {
  std::int64_t n0 = 1;
  std::vector<double> event_times;
  std::vector<std::int64_t> counts;  // value after each event
  bool guard_tripped = false;
  double guard_time = 0.0;
  std::int64_t final_count = 0;
};

VertexCountPath simulate_vertex_count(const AsegParams &params, RngStream &rng,
                                      const CountGuard &guard = {});

// Lean walker over the count process; no path storage. Holding times are
// resampled across advance_until calls, which the exponential law permits.
class CountWalker {
 public:
  CountWalker(std::int64_t n0, double alpha, double kappa, const CountGuard &guard)
      : z_(n0), alpha_(alpha), kappa_(kappa), guard_(guard) {}

  // Advances to absolute time t_end. Returns false once the guard trips.
  bool advance_until(double t_end, RngStream &rng);

  std::int64_t count() const { return z_; }
  double time() const { return t_; }
  bool guard_tripped() const { return tripped_; }
  std::uint64_t events() const { return events_; }

 private:
  std::int64_t z_;
  double alpha_;
  double kappa_;
  CountGuard guard_;
  double t_ = 0.0;
  bool tripped_ = false;
  std::uint64_t events_ = 0;
};

// ---- full graph ----

enum class AsegEventKind { Coalescence, Branching, PairwiseBranching };

struct AsegEvent {
  double time = 0.0;
  AsegEventKind kind = AsegEventKind::Coalescence;
  std::vector<std::int64_t> parents;   // deactivated participants
  std::vector<std::int64_t> children;  // produced vertices
};

struct AsegVertex {
  double birth_time = 0.0;
  double deactivation_time = -1.0;  // -1 while active
  bool active_at_end = false;
  int type = -1;  // -1 untyped, else 0/1
};

struct AsegGraph {
  std::int64_t n0 = 1;
  double horizon = 0.0;
  std::vector<AsegVertex> vertices;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;  // producer -> produced
  std::vector<AsegEvent> events;
  std::vector<std::int64_t> active_at_end;
  bool guard_tripped = false;
};

AsegGraph simulate_graph(const AsegParams &params, RngStream &rng, const CountGuard &guard = {});

// Rule: tips draw type 0 with probability x; a deactivated vertex is type 0
// iff no directed producer->produced path from it reaches a type-1 vertex.
void color_and_propagate(AsegGraph &graph, double x, RngStream &rng);

// Monte Carlo of x^{Z_T}; the dual-side estimator. explosion_flagged counts
// replicates stopped by the guard (their contribution is skipped).
struct PgfEstimate {
  McSummary summary;
  std::int64_t explosion_flagged = 0;
};

PgfEstimate pgf_estimate(const AsegParams &params, std::int64_t replicates, RngStream &rng,
                         const CountGuard &guard = {});

// Z at the horizon across replicates (kappa = 1 stationarity studies); the
// guard should use ReflectAtCap in the recurrent regime.
std::vector<std::int64_t> stationary_sample(double alpha, double horizon, std::int64_t n0,
                                            std::int64_t replicates, RngStream &rng,
                                            const CountGuard &guard);

}  // namespace wfe
