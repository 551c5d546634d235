#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ergm/graph_state.hpp"
#include "ergm/motif.hpp"
#include "ergm/observables.hpp"
#include "ergm/rng.hpp"

namespace ergm {

// Raised when a sampling run is requested for a spec whose phase
// classification is Critical and force_critical is not set.
struct CriticalRegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Edge-density band [p_star - eta, p_star + eta]; the conditioned dynamics
// rejects any move whose resulting density leaves the band.
struct WellSpec {
  double p_star = 0.5;
  double eta = 0.1;
};

enum class ChainInit { ErdosRenyi, Empty, Complete, Explicit };

struct ChainConfig {
  ErgmSpec spec;
  int n = 0;
  std::optional<WellSpec> well;
  ChainInit init = ChainInit::ErdosRenyi;
  double init_p = 0.5;
  std::optional<GraphState> init_graph;
  long long burn_in = -1;   // -1: n^3
  long long thinning = -1;  // -1: C(n,2), one sweep
  int samples = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // replica index; chains split off (seed, stream)
  bool force_critical = false;
  bool record_bitmasks = false;  // only possible when C(n,2) <= 64

  long long resolved_burn_in() const;
  long long resolved_thinning() const;
  void validate() const;
};

// Precomputed per-spec scaling: z(x, e) = sum_j beta_j N_{G_j}(x, e) / n^{v_j - 2}.
class GlauberKernel {
 public:
  GlauberKernel(const ErgmSpec& spec, int n);
  double conditional_energy(const GraphState& x, EdgeId e) const;  // n^2 dH
  double flip_probability(const GraphState& x, EdgeId e) const;    // logistic of the above
  const ErgmSpec& spec() const { return *spec_; }

 private:
  const ErgmSpec* spec_;
  std::vector<double> inv_scale_;  // n^{-(v_j - 2)}
};

struct StepRecord {
  long long edge_index = 0;
  bool proposed_present = false;
  bool boundary_rejected = false;
};

// One Glauber update: draw an edge uniformly, resample it from the
// conditional law, rejecting moves that would leave the well band.
StepRecord glauber_step(GraphState& x, const GlauberKernel& kernel, const EdgeIndexer& indexer,
                        CounterRng& rng, const std::optional<WellSpec>& well);

struct ChainRun {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;       // one row per retained sample
  std::vector<long long> step_index;           // Glauber step at which each row was taken
  std::vector<std::uint64_t> bitmasks;         // per-sample state, when requested
  long long boundary_rejections = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  GraphState final_state{2};

  SampleBatch batch() const;
};

// Burn-in then `samples` recordings at the thinning interval. The RNG stream
// is a pure function of (seed, stream), so runs replay byte-identically.
ChainRun run_chain(const ChainConfig& cfg, const std::vector<Observable>& observables);

// Same schedule, but hands each retained state to a visitor instead of
// materializing observable rows. Returns the boundary rejection count.
long long run_chain_visit(const ChainConfig& cfg,
                          const std::function<void(const GraphState&)>& on_sample);

struct CouplingConfig {
  ChainConfig base;
  EdgeId flip_edge{0, 1};  // x' = x with this edge toggled
  int watch_vertex = 2;    // d_loc vertex, must not lie in flip_edge
  long long horizon = 0;
};

struct CouplingRun {
  std::vector<int> d_hamming;        // index t; entry 0 is the initial condition
  std::vector<int> d_local;          // index t, for the designated watch vertex
  // sum of d_local over every vertex off the flipped edge, tracked as
  // 2 d_H - d_loc(u0) - d_loc(w0); dividing by n-2 gives the exchangeable
  // per-vertex average, a far lower-variance estimate of E[d_loc]
  std::vector<int> d_local_all;
  std::vector<std::uint8_t> order_ok;  // 1 while the initial order is intact
  long long order_violations = 0;    // number of steps spent out of order
  long long first_violation_step = -1;
  long long boundary_rejections = 0;
  long long coalesced_at = -1;  // first step with d_hamming == 0, -1 if never
};

// Evolves x and x^{(+/-)flip_edge} under shared (edge, uniform) randomness
// with the monotone acceptance rule, recording Hamming and local-Hamming
// distances and any order violations.
CouplingRun run_coupled(const CouplingConfig& cfg);

struct GammaReport {
  bool member = false;
  double worst_deviation = 0;
  EdgeId worst_edge{0, 1};
  std::string worst_graph;
  int graphs_checked = 0;
  long long edges_checked = 0;
  bool motif_only_fallback = false;  // motifs beyond the catalog limit
};

// Checks |r_G(x, e) - p| < eps over a catalog of connected graphs up to the
// largest motif size (catalog limit 5 vertices; larger specs fall back to the
// motifs themselves). edge_sample = 0 scans every edge.
GammaReport gamma_diagnostic(const GraphState& x, const ErgmSpec& spec, double p, double eps,
                             long long edge_sample = 0, CounterRng* rng = nullptr);

}  // namespace ergm
