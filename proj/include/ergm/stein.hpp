#pragma once

#include <span>
#include <vector>

#include "ergm/graph_state.hpp"
#include "ergm/motif.hpp"
#include "ergm/rng.hpp"

namespace ergm {

// Which standardized observable f drives the error terms: the total edge
// count (proxy sigma_n^2, sums over all edges) or the degree of one vertex
// (proxy varsigma_n^2, sums restricted to incident edges).
enum class SteinMode { EdgeCount, Degree };

// A tilted sample x next to an independent Erdos-Renyi partner y at the same
// density; the partner is drawn from a split RNG stream so the two never
// share randomness. The estimators below integrate the partner coordinate
// analytically wherever possible; the explicit pair backs the Monte Carlo
// cross-checks.
struct TiltedPair {
  GraphState x;
  GraphState y;
};

TiltedPair make_tilted_pair(const GraphState& x, double p, CounterRng& partner_rng);

struct SteinParams {
  ErgmSpec spec;
  double p = 0.5;
  double sigma_sq = 1;  // sigma_n^2 or varsigma_n^2 depending on mode
  SteinMode mode = SteinMode::EdgeCount;
  int vertex = 0;  // degree mode only
};

// g(x) = sum_{j>=1} beta_j (N_{G_j}(x) / n^{v_j-2} - 2 e_j p^{e_j-1} E(x)).
// The well surrogate penalty vanishes on every sampled state and is omitted.
double tilting_g(const GraphState& x, const ErgmSpec& spec, double p);

// g(x^{+e}) - g(x^{-e}).
double tilting_g_delta(const GraphState& x, const ErgmSpec& spec, double p, EdgeId e);

// Closed form: Delta_{1,e}(x) = ((1-2p) x(e) + p) / (2 sigma_n^2).
double delta1_edge_closed(const GraphState& x, EdgeId e, double p, double sigma_sq);

// Generic definition evaluated by graph surgery with the Y(e)-expectation
// taken analytically over the single Bernoulli coordinate.
double delta1_edge_generic(const GraphState& x, EdgeId e, double p, double sigma_sq);

// Closed form: Delta_{2,e}(x) =
//   sum_j beta_j / (2 n^{v_j-2} sigma_n) ((1-2p) x(e) + p)
//         (N_{G_j}(x,e) - 2 e_j p^{e_j-1} n^{v_j-2}).
double delta2_edge_closed(const GraphState& x, EdgeId e, const ErgmSpec& spec, double p,
                          double sigma_sq);

struct MonteCarloEstimate {
  double value = 0;
  double se = 0;
  long long draws = 0;
};

// Generic definition of Delta_{2,e} estimated by Monte Carlo over Y(e) draws,
// evaluating the tilting function on actual modified graphs.
MonteCarloEstimate delta2_edge_generic_mc(const GraphState& x, EdgeId e, const ErgmSpec& spec,
                                          double p, double sigma_sq, int draws, CounterRng& rng);

struct BEstimate {
  double value = 0;
  double se = 0;  // batch-means standard error
};

struct SteinReport {
  double b_hat = 0, b_se = 0;
  double delta0 = 0, delta0_se = 0;
  double delta1 = 0, delta1_se = 0;
  double delta1_prime = 0, delta1_prime_se = 0;
  double delta2 = 0, delta2_se = 0;
  double delta3 = 0, delta3_se = 0;
  long long samples = 0;
};

// Streams ERGM samples and accumulates per-sample statistics for the Monte
// Carlo error-term estimates; all Y(e)-expectations that appear are taken
// analytically, so no Erdos-Renyi partner sample is required here.
class SteinAccumulator {
 public:
  explicit SteinAccumulator(SteinParams params);
  void add(const GraphState& x);
  SteinReport report() const;  // requires at least 100 samples

  // per-sample diagnostic columns (sum_e Delta_1, sum_e Delta_2, f)
  std::span<const double> sum_delta1_samples() const { return sum_d1_; }
  std::span<const double> sum_delta2_samples() const { return sum_d2_; }
  std::vector<double> f_samples() const;

 private:
  SteinParams params_;
  int n_ = 0;
  std::vector<double> inv_scale_;      // n^{-(v_j-2)}
  std::vector<double> hajek_per_edge_;  // 2 e_j p^{e_j-1} n^{v_j-2}
  std::vector<double> stat_;            // E(x) or deg_v(x)
  std::vector<double> sum_d1_, sum_d2_, d0_, d1_, d1p_first_, d1p_second_;
};

BEstimate estimate_b(std::span<const GraphState> xs, const SteinParams& params);

SteinReport estimate_deltas(std::span<const GraphState> xs, const SteinParams& params);

}  // namespace ergm
