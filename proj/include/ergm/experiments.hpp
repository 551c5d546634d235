#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ergm/dynamics.hpp"
#include "ergm/motif.hpp"
#include "ergm/phase.hpp"
#include "ergm/stein.hpp"

namespace ergm {

// Shared chain setup for the per-size experiments. A well band is attached
// around p_star when eta > 0; otherwise the free dynamics runs.
struct ExperimentChain {
  ErgmSpec spec;
  double p_star = 0.5;
  double eta = 0;                // 0: unconditioned dynamics
  long long burn_in = -1;        // -1: n^3
  double thinning_sweeps = 1;    // thinning = sweeps * C(n,2)
  int samples = 2000;
  std::uint64_t seed = 0;
  bool force_critical = false;

  ChainConfig chain_config(int n, std::uint64_t stream) const;
};

struct CltSizeResult {
  int n = 0;
  double sigma_sq = 0, varsigma_sq = 0;
  double var_edge = 0, var_degree = 0;
  double var_ratio_edge = 0, var_ratio_degree = 0;
  double dkol_edge = 0, dwas_edge = 0;
  double dkol_degree = 0, dwas_degree = 0;
  long long samples = 0;
  std::vector<double> z_edge, z_degree;  // standardized samples
};

// Runs one chain per size, recording edge count and deg_v, and compares the
// standardized samples against the normal law.
std::vector<CltSizeResult> run_clt_experiment(const ExperimentChain& setup,
                                              const std::vector<int>& sizes, int degree_vertex,
                                              int workers);

struct ResidualScanRow {
  int n = 0;
  double variance = 0;
  double normalizer = 0;  // n^{2v-2}
  double ratio = 0;
};

struct ResidualScanResult {
  std::vector<ResidualScanRow> rows;
  double loglog_slope = 0;  // slope of log Var against log n
};

// Empirical variance of the Hajek residual (global, or rooted at rho -> v)
// across sizes, with the n^{2v-2} normalizer and a log-log slope fit.
ResidualScanResult residual_variance_scan(const ExperimentChain& setup,
                                          const std::vector<int>& sizes, const MotifGraph& motif,
                                          bool rooted, int rho, int vertex, int workers);

struct CouplingExperimentResult {
  int n = 0;
  std::vector<double> mean_d_hamming;  // index t, averaged over replicas
  std::vector<double> mean_d_local;    // designated watch vertex
  std::vector<double> order_ok_fraction;
  double fitted_step_rate = 0;   // per-step decay rate of E[d_H]
  double time_avg_d_local = 0;   // watch-vertex series
  // same expectation estimated by the exchangeable average over every vertex
  // off the flipped edge; far lower Monte Carlo variance
  double time_avg_d_local_allv = 0;
  long long order_violations = 0;
  long long boundary_rejections = 0;
  int replicas = 0;
};

// Replicated monotone-coupling runs from x vs x with one edge toggled; the
// watch vertex is kept off the toggled edge. Start states are burned in.
CouplingExperimentResult run_coupling_experiment(const ExperimentChain& setup, int n, int replicas,
                                                 long long horizon, int workers);

struct SteinSizeResult {
  int n = 0;
  SteinReport report;
  // per-sample diagnostics: sum_e Delta_1, sum_e Delta_2, f
  std::vector<double> sum_delta1, sum_delta2, f;
};

// Chains at each size feeding the Stein accumulator (variance proxies from
// the phase module).
std::vector<SteinSizeResult> run_stein_experiment(const ExperimentChain& setup,
                                                  const std::vector<int>& sizes, SteinMode mode,
                                                  int vertex, int workers);

// Convenience: phase report followed by proxy evaluation at p_star.
struct ModelSummary {
  PhaseReport phase;
  double p_star = 0;
};

ModelSummary summarize_model(const ErgmSpec& spec);

}  // namespace ergm
