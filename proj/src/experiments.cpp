#include "ergm/experiments.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "ergm/observables.hpp"
#include "ergm/parallel.hpp"
#include "ergm/stats.hpp"

namespace ergm {

ChainConfig ExperimentChain::chain_config(int n, std::uint64_t stream) const {
  ChainConfig cfg;
  cfg.spec = spec;
  cfg.n = n;
  if (eta > 0) cfg.well = WellSpec{p_star, eta};
  cfg.init = ChainInit::ErdosRenyi;
  cfg.init_p = p_star;
  cfg.burn_in = burn_in;
  cfg.thinning = static_cast<long long>(thinning_sweeps * static_cast<double>(pair_count(n)));
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.stream = stream;
  cfg.force_critical = force_critical;
  return cfg;
}

ModelSummary summarize_model(const ErgmSpec& spec) {
  ModelSummary s;
  s.phase = find_stationary_points(spec);
  s.p_star = s.phase.p_star;
  return s;
}

std::vector<CltSizeResult> run_clt_experiment(const ExperimentChain& setup,
                                              const std::vector<int>& sizes, int degree_vertex,
                                              int workers) {
  std::vector<CltSizeResult> results(sizes.size());
  parallel_for(0, static_cast<int>(sizes.size()), workers, [&](int i) {
    const int n = sizes[static_cast<std::size_t>(i)];
    const ChainConfig cfg = setup.chain_config(n, static_cast<std::uint64_t>(i));
    const std::vector<Observable> obs{Observable::edge_count(), Observable::degree(degree_vertex)};
    const ChainRun run = run_chain(cfg, obs);

    CltSizeResult r;
    r.n = n;
    r.samples = static_cast<long long>(run.rows.size());
    r.sigma_sq = variance_proxy_edge(setup.spec, setup.p_star, n);
    r.varsigma_sq = variance_proxy_degree(setup.spec, setup.p_star, n);

    const SampleBatch batch = run.batch();
    const auto edges = batch.column(0);
    const auto degrees = batch.column(1);
    r.var_edge = sample_variance(edges);
    r.var_degree = sample_variance(degrees);
    r.var_ratio_edge = r.var_edge / r.sigma_sq;
    r.var_ratio_degree = r.var_degree / r.varsigma_sq;

    r.z_edge = standardize(edges, r.sigma_sq);
    r.z_degree = standardize(degrees, r.varsigma_sq);
    r.dkol_edge = kolmogorov_distance_to_normal(r.z_edge);
    r.dwas_edge = wasserstein_distance_to_normal(r.z_edge);
    r.dkol_degree = kolmogorov_distance_to_normal(r.z_degree);
    r.dwas_degree = wasserstein_distance_to_normal(r.z_degree);
    results[static_cast<std::size_t>(i)] = std::move(r);
  });
  return results;
}

ResidualScanResult residual_variance_scan(const ExperimentChain& setup,
                                          const std::vector<int>& sizes, const MotifGraph& motif,
                                          bool rooted, int rho, int vertex, int workers) {
  ResidualScanResult result;
  result.rows.resize(sizes.size());
  parallel_for(0, static_cast<int>(sizes.size()), workers, [&](int i) {
    const int n = sizes[static_cast<std::size_t>(i)];
    const ChainConfig cfg = setup.chain_config(n, static_cast<std::uint64_t>(i));
    const Observable obs = rooted
                               ? Observable::hajek_rooted(motif, rho, vertex, setup.p_star)
                               : Observable::hajek_global(motif, setup.p_star);
    const ChainRun run = run_chain(cfg, {obs});
    ResidualScanRow row;
    row.n = n;
    row.variance = sample_variance(run.batch().column(0));
    row.normalizer = std::pow(n, 2 * motif.vertex_count - 2);
    row.ratio = row.variance / row.normalizer;
    result.rows[static_cast<std::size_t>(i)] = row;
  });
  if (sizes.size() >= 2) {
    std::vector<double> lx, ly;
    for (const auto& row : result.rows) {
      lx.push_back(std::log(static_cast<double>(row.n)));
      ly.push_back(std::log(std::max(row.variance, 1e-300)));
    }
    result.loglog_slope = fit_line(lx, ly).slope;
  }
  return result;
}

CouplingExperimentResult run_coupling_experiment(const ExperimentChain& setup, int n, int replicas,
                                                 long long horizon, int workers) {
  if (replicas < 1) throw std::invalid_argument("coupling experiment: replicas must be positive");
  CouplingExperimentResult result;
  result.n = n;
  result.replicas = replicas;
  result.mean_d_hamming.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
  result.mean_d_local.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
  result.order_ok_fraction.assign(static_cast<std::size_t>(horizon) + 1, 0.0);

  std::vector<CouplingRun> runs(static_cast<std::size_t>(replicas));
  parallel_for(0, replicas, workers, [&](int rep) {
    CouplingConfig ccfg;
    ccfg.base = setup.chain_config(n, static_cast<std::uint64_t>(rep));
    // warm Erdos-Renyi start at p_star plus a couple of sweeps
    ccfg.base.burn_in = 2 * pair_count(n);
    ccfg.horizon = horizon;
    CounterRng pick = CounterRng::stream(setup.seed, 0xC0DE0000ULL + static_cast<std::uint64_t>(rep));
    const EdgeIndexer indexer(n);
    const EdgeId e = indexer.edge(static_cast<long long>(pick.below(static_cast<std::uint64_t>(indexer.count()))));
    ccfg.flip_edge = e;
    int v = static_cast<int>(pick.below(static_cast<std::uint64_t>(n)));
    while (e.contains(v)) v = static_cast<int>(pick.below(static_cast<std::uint64_t>(n)));
    ccfg.watch_vertex = v;
    runs[static_cast<std::size_t>(rep)] = run_coupled(ccfg);
  });

  double local_sum = 0, local_all_sum = 0;
  long long local_terms = 0;
  for (const auto& run : runs) {
    result.order_violations += run.order_violations;
    result.boundary_rejections += run.boundary_rejections;
    for (std::size_t t = 0; t < run.d_hamming.size(); ++t) {
      result.mean_d_hamming[t] += run.d_hamming[t];
      result.mean_d_local[t] += run.d_local[t];
      result.order_ok_fraction[t] += run.order_ok[t];
      local_sum += run.d_local[t];
      local_all_sum += run.d_local_all[t];
      ++local_terms;
    }
  }
  for (auto& v : result.mean_d_hamming) v /= replicas;
  for (auto& v : result.mean_d_local) v /= replicas;
  for (auto& v : result.order_ok_fraction) v /= replicas;
  result.time_avg_d_local = local_sum / static_cast<double>(local_terms);
  result.time_avg_d_local_allv = local_all_sum / static_cast<double>(local_terms) / (n - 2);

  // per-step decay rate: regression of log mean d_H over the window where the
  // mean remains resolvable
  std::vector<double> ts, logs;
  for (std::size_t t = 0; t < result.mean_d_hamming.size(); ++t) {
    if (result.mean_d_hamming[t] >= 0.05) {
      ts.push_back(static_cast<double>(t));
      logs.push_back(std::log(result.mean_d_hamming[t]));
    }
  }
  if (ts.size() >= 2) result.fitted_step_rate = -fit_line(ts, logs).slope;
  return result;
}

std::vector<SteinSizeResult> run_stein_experiment(const ExperimentChain& setup,
                                                  const std::vector<int>& sizes, SteinMode mode,
                                                  int vertex, int workers) {
  std::vector<SteinSizeResult> results(sizes.size());
  parallel_for(0, static_cast<int>(sizes.size()), workers, [&](int i) {
    const int n = sizes[static_cast<std::size_t>(i)];
    ChainConfig cfg = setup.chain_config(n, static_cast<std::uint64_t>(i));

    SteinParams params;
    params.spec = setup.spec;
    params.p = setup.p_star;
    params.mode = mode;
    params.vertex = vertex;
    params.sigma_sq = mode == SteinMode::EdgeCount
                          ? variance_proxy_edge(setup.spec, setup.p_star, n)
                          : variance_proxy_degree(setup.spec, setup.p_star, n);
    SteinAccumulator acc(params);
    run_chain_visit(cfg, [&](const GraphState& x) { acc.add(x); });

    SteinSizeResult r;
    r.n = n;
    r.report = acc.report();
    r.sum_delta1.assign(acc.sum_delta1_samples().begin(), acc.sum_delta1_samples().end());
    r.sum_delta2.assign(acc.sum_delta2_samples().begin(), acc.sum_delta2_samples().end());
    r.f = acc.f_samples();
    results[static_cast<std::size_t>(i)] = std::move(r);
  });
  return results;
}

}  // namespace ergm
