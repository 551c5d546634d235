// Experiment driver: phase | sample | clt | hajek | couple | stein | oracle.
// Each subcommand reads a JSON config, writes CSV data plus a JSON summary
// into the output directory, and drops a manifest that reproduces the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergm/config.hpp"
#include "ergm/dynamics.hpp"
#include "ergm/experiments.hpp"
#include "ergm/io.hpp"
#include "ergm/observables.hpp"
#include "ergm/oracle.hpp"
#include "ergm/parallel.hpp"
#include "ergm/phase.hpp"
#include "ergm/scalar_model.hpp"
#include "ergm/stats.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CliOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> workers;
  bool force = false;
  bool force_critical = false;
};

struct RunContext {
  ergm::ExperimentConfig cfg;
  fs::path out_dir;
  int workers = 1;
  bool force = false;
  std::chrono::steady_clock::time_point started;

  double wall_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  void write_manifest(const std::string& command) const {
    json resolved = cfg.resolved;
    resolved["__command"] = command;
    resolved["__workers"] = workers;
    ergm::write_json(out_dir / "manifest.json",
                     ergm::make_manifest(resolved, cfg.seed, wall_seconds()));
  }
};

RunContext make_context(const CliOptions& opt) {
  RunContext ctx;
  ctx.cfg = ergm::load_config(opt.config_path);
  if (opt.seed) ctx.cfg.seed = *opt.seed;
  if (opt.out) ctx.cfg.out_dir = *opt.out;
  if (opt.workers) ctx.cfg.workers = *opt.workers;
  ctx.workers = ctx.cfg.workers > 0 ? ctx.cfg.workers : ergm::default_workers();
  ctx.force = opt.force;
  ctx.out_dir = ctx.cfg.out_dir;
  fs::create_directories(ctx.out_dir);
  ctx.started = std::chrono::steady_clock::now();
  return ctx;
}

json phase_report_json(const ergm::PhaseReport& report) {
  json j;
  j["regime"] = ergm::regime_name(report.regime);
  j["p_star"] = report.p_star;
  j["h_second_at_one"] = report.h_second_at_one;
  j["m_beta"] = report.m_beta;
  j["u_beta"] = report.u_beta;
  j["solver_tol"] = report.solver_tol;
  json pts = json::array();
  for (const auto& sp : report.stationary_points) {
    json p;
    p["q"] = sp.q;
    p["l_value"] = sp.l_value;
    p["l_second"] = sp.l_second;
    p["attracting"] = sp.attracting;
    pts.push_back(p);
  }
  j["stationary_points"] = pts;
  return j;
}

// Resolves the experiment density and well settings, enforcing the
// local-well guard: non-global wells need --force.
ergm::ExperimentChain make_setup(const RunContext& ctx) {
  const ergm::PhaseReport report =
      ergm::find_stationary_points(ctx.cfg.spec, ctx.cfg.phase_grid, ctx.cfg.phase_tol);
  ergm::ExperimentChain setup;
  setup.spec = ctx.cfg.spec;
  setup.burn_in = ctx.cfg.burn_in;
  setup.thinning_sweeps = ctx.cfg.thinning_sweeps;
  setup.samples = ctx.cfg.samples;
  setup.seed = ctx.cfg.seed;
  setup.force_critical = ctx.force;

  double p = report.p_star;
  if (ctx.cfg.well_index >= 0) {
    if (ctx.cfg.well_index >= static_cast<int>(report.local_maxima.size()))
      throw std::runtime_error("well index out of range of attracting fixed points");
    p = report.local_maxima[static_cast<std::size_t>(ctx.cfg.well_index)].q;
    bool global = false;
    for (double m : report.m_beta) global = global || std::abs(m - p) < 1e-9;
    if (!global && !ctx.force)
      throw std::runtime_error(
          "well around a non-global local maximizer requested; pass --force to allow it");
  } else if (ctx.cfg.well_p >= 0) {
    p = ctx.cfg.well_p;
  }
  setup.p_star = p;
  if (ctx.cfg.well_enabled) setup.eta = ctx.cfg.well_eta;
  return setup;
}

int cmd_phase(const CliOptions& opt) {
  RunContext ctx = make_context(opt);
  const auto& cfg = ctx.cfg;
  const ergm::PhaseReport report =
      ergm::find_stationary_points(cfg.spec, cfg.phase_grid, cfg.phase_tol);
  ergm::write_json(ctx.out_dir / "phase_report.json", phase_report_json(report));

  ergm::CsvWriter grid_csv(ctx.out_dir / "phase_grid.csv", "ergm.phase_grid.v1",
                           {"q", "l_beta", "phi_beta"});
  const int grid = cfg.phase_grid;
  for (int i = 1; i < grid; ++i) {
    const double q = static_cast<double>(i) / grid;
    grid_csv.write_row({q, ergm::l_beta(cfg.spec, q), ergm::phi_beta(cfg.spec, q)});
  }

  if (!cfg.phase_scan.empty()) {
    std::vector<std::string> cols;
    for (const auto& scan : cfg.phase_scan) cols.push_back("beta" + std::to_string(scan.motif_index));
    cols.push_back("regime");
    cols.push_back("p_star");
    ergm::CsvWriter map_csv(ctx.out_dir / "regime_map.csv", "ergm.regime_map.v1", cols);
    std::vector<int> idx(cfg.phase_scan.size(), 0);
    for (;;) {
      ergm::ErgmSpec cell = cfg.spec;
      std::vector<std::string> row;
      for (std::size_t d = 0; d < cfg.phase_scan.size(); ++d) {
        const auto& scan = cfg.phase_scan[d];
        const double b = scan.count == 1 ? scan.lo
                                         : scan.lo + (scan.hi - scan.lo) * idx[d] / (scan.count - 1);
        cell.beta[static_cast<std::size_t>(scan.motif_index)] = b;
        row.push_back(ergm::CsvWriter::format(b));
      }
      ergm::PhaseReport cell_report = ergm::find_stationary_points(cell, cfg.phase_grid, cfg.phase_tol);
      row.push_back(ergm::regime_name(cell_report.regime));
      row.push_back(ergm::CsvWriter::format(cell_report.p_star));
      map_csv.write_raw_row(row);
      std::size_t d = 0;
      while (d < idx.size() && ++idx[d] == cfg.phase_scan[d].count) idx[d++] = 0;
      if (d == idx.size()) break;
    }
  }
  ctx.write_manifest("phase");
  return 0;
}

std::vector<ergm::Observable> parse_observables(const ergm::ExperimentConfig& cfg, double p_star) {
  auto motif_arg = [](const std::string& s) { return ergm::motif_from_name(s); };
  std::vector<ergm::Observable> out;
  for (const auto& name : cfg.observable_names) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= name.size()) {
      const auto next = name.find(':', pos);
      parts.push_back(name.substr(pos, next == std::string::npos ? next : next - pos));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    const std::string& kind = parts[0];
    if (kind == "edge_count") {
      out.push_back(ergm::Observable::edge_count());
    } else if (kind == "degree") {
      out.push_back(ergm::Observable::degree(std::stoi(parts.at(1))));
    } else if (kind == "hom") {
      out.push_back(ergm::Observable::hom_count(motif_arg(parts.at(1))));
    } else if (kind == "hom_rooted") {
      out.push_back(ergm::Observable::rooted_hom_count(motif_arg(parts.at(1)),
                                                       std::stoi(parts.at(2)),
                                                       std::stoi(parts.at(3))));
    } else if (kind == "hom_at") {
      out.push_back(ergm::Observable::vertex_hom_count(motif_arg(parts.at(1)), std::stoi(parts.at(2))));
    } else if (kind == "hajek") {
      out.push_back(ergm::Observable::hajek_global(motif_arg(parts.at(1)), p_star));
    } else if (kind == "hajek_rooted") {
      out.push_back(ergm::Observable::hajek_rooted(motif_arg(parts.at(1)), std::stoi(parts.at(2)),
                                                   std::stoi(parts.at(3)), p_star));
    } else if (kind == "rstat") {
      out.push_back(ergm::Observable::r_stat(motif_arg(parts.at(1)),
                                             {std::stoi(parts.at(2)), std::stoi(parts.at(3))}));
    } else {
      throw std::runtime_error("unknown observable '" + name + "'");
    }
  }
  return out;
}

int cmd_sample(const CliOptions& opt) {
  RunContext ctx = make_context(opt);
  const ergm::ExperimentChain setup = make_setup(ctx);
  const auto observables = parse_observables(ctx.cfg, setup.p_star);

  // fan (n, replica) jobs across the worker pool; files are written after
  // the joins, in job order, so output stays deterministic
  struct Job {
    int n;
    int replica;
    ergm::ChainRun run;
  };
  std::vector<Job> jobs;
  for (int n : ctx.cfg.sizes)
    for (int rep = 0; rep < ctx.cfg.replicas; ++rep) jobs.push_back({n, rep, {}});
  ergm::parallel_for(0, static_cast<int>(jobs.size()), ctx.workers, [&](int i) {
    auto& job = jobs[static_cast<std::size_t>(i)];
    ergm::ChainConfig ccfg = setup.chain_config(job.n, static_cast<std::uint64_t>(job.replica));
    if (ctx.cfg.init == "empty") ccfg.init = ergm::ChainInit::Empty;
    if (ctx.cfg.init == "complete") ccfg.init = ergm::ChainInit::Complete;
    if (ctx.cfg.init_p >= 0) ccfg.init_p = ctx.cfg.init_p;
    job.run = ergm::run_chain(ccfg, observables);
  });

  json summary;
  summary["p_star"] = setup.p_star;
  json per_run = json::array();
  for (const auto& job : jobs) {
    const auto& run = job.run;
    const std::string stem = "chain_n" + std::to_string(job.n) + "_r" + std::to_string(job.replica);
    std::vector<std::string> cols{"step"};
    for (const auto& c : run.columns) cols.push_back(c);
    ergm::CsvWriter csv(ctx.out_dir / (stem + ".csv"), "ergm.chain.v1", cols);
    for (std::size_t i = 0; i < run.rows.size(); ++i) {
      std::vector<double> row{static_cast<double>(run.step_index[i])};
      row.insert(row.end(), run.rows[i].begin(), run.rows[i].end());
      csv.write_row(row);
    }

    json r;
    r["n"] = job.n;
    r["replica"] = job.replica;
    r["boundary_rejections"] = run.boundary_rejections;
    json col_stats;
    const auto batch = run.batch();
    for (std::size_t c = 0; c < run.columns.size(); ++c) {
      const auto col = batch.column(c);
      col_stats[run.columns[c]] = {{"mean", ergm::sample_mean(col)},
                                   {"sd", std::sqrt(ergm::sample_variance(col))}};
    }
    r["observables"] = col_stats;
    per_run.push_back(r);
  }
  summary["runs"] = per_run;
  ergm::write_json(ctx.out_dir / "summary.json", summary);
  ctx.write_manifest("sample");
  return 0;
}

int cmd_clt(const CliOptions& opt) {
  RunContext ctx = make_context(opt);
  const ergm::ExperimentChain setup = make_setup(ctx);
  const auto results =
      ergm::run_clt_experiment(setup, ctx.cfg.sizes, ctx.cfg.stein_vertex, ctx.workers);

  json per_n = json::array();
  for (const auto& r : results) {
    json j;
    j["n"] = r.n;
    j["proxy_edge"] = r.sigma_sq;
    j["proxy_degree"] = r.varsigma_sq;
    j["d_kol_edge"] = r.dkol_edge;
    j["d_was_edge"] = r.dwas_edge;
    j["d_kol_degree"] = r.dkol_degree;
    j["d_was_degree"] = r.dwas_degree;
    j["empirical_variance_edge"] = r.var_edge;
    j["empirical_variance_degree"] = r.var_degree;
    j["var_ratio_edge"] = r.var_ratio_edge;
    j["var_ratio_degree"] = r.var_ratio_degree;
    per_n.push_back(j);
  }
  json summary;
  summary["p_star"] = setup.p_star;
  summary["per_n"] = per_n;
  ergm::write_json(ctx.out_dir / "clt_summary.json", summary);

  for (const auto& r : results) {
    ergm::CsvWriter csv(ctx.out_dir / ("clt_samples_n" + std::to_string(r.n) + ".csv"),
                        "ergm.clt_samples.v1", {"z_edge", "z_degree"});
    for (std::size_t i = 0; i < r.z_edge.size(); ++i) csv.write_row({r.z_edge[i], r.z_degree[i]});
  }
  ctx.write_manifest("clt");
  return 0;
}

int cmd_hajek(const CliOptions& opt) {
  RunContext ctx = make_context(opt);
  const ergm::ExperimentChain setup = make_setup(ctx);
  const ergm::MotifGraph motif = ergm::motif_from_name(ctx.cfg.hajek_motif);
  const auto result =
      ergm::residual_variance_scan(setup, ctx.cfg.sizes, motif, ctx.cfg.hajek_rooted,
                                   ctx.cfg.hajek_rho, ctx.cfg.hajek_vertex, ctx.workers);

  ergm::CsvWriter csv(ctx.out_dir / "hajek_scan.csv", "ergm.hajek_scan.v1",
                      {"n", "variance", "normalizer", "ratio"});
  for (const auto& row : result.rows)
    csv.write_row({static_cast<double>(row.n), row.variance, row.normalizer, row.ratio});
  json j;
  j["motif"] = motif.name;
  j["rooted"] = ctx.cfg.hajek_rooted;
  j["loglog_slope"] = result.loglog_slope;
  j["p_star"] = setup.p_star;
  ergm::write_json(ctx.out_dir / "hajek_summary.json", j);
  ctx.write_manifest("hajek");
  return 0;
}

int cmd_couple(const CliOptions& opt) {
  RunContext ctx = make_context(opt);
  const ergm::ExperimentChain setup = make_setup(ctx);
  json per_n = json::array();
  for (int n : ctx.cfg.sizes) {
    const long long horizon =
        static_cast<long long>(ctx.cfg.couple_horizon_sweeps * static_cast<double>(ergm::pair_count(n)));
    const auto result = ergm::run_coupling_experiment(setup, n, ctx.cfg.couple_replicas, horizon,
                                                      ctx.workers);
    ergm::CsvWriter csv(ctx.out_dir / ("coupling_n" + std::to_string(n) + ".csv"),
                        "ergm.coupling.v1", {"t", "d_hamming", "d_local", "order_ok"});
    for (std::size_t t = 0; t < result.mean_d_hamming.size(); ++t)
      csv.write_row({static_cast<double>(t), result.mean_d_hamming[t], result.mean_d_local[t],
                     result.order_ok_fraction[t]});
    json j;
    j["n"] = n;
    j["fitted_step_rate"] = result.fitted_step_rate;
    j["time_avg_d_local"] = result.time_avg_d_local;
    j["time_avg_d_local_vertex_avg"] = result.time_avg_d_local_allv;
    j["order_violations"] = result.order_violations;
    j["boundary_rejections"] = result.boundary_rejections;
    j["replicas"] = result.replicas;
    per_n.push_back(j);
  }
  json summary;
  summary["p_star"] = setup.p_star;
  summary["per_n"] = per_n;
  ergm::write_json(ctx.out_dir / "coupling_summary.json", summary);
  ctx.write_manifest("couple");
  return 0;
}

int cmd_stein(const CliOptions& opt) {
  RunContext ctx = make_context(opt);
  const ergm::ExperimentChain setup = make_setup(ctx);
  const auto results = ergm::run_stein_experiment(setup, ctx.cfg.sizes, ctx.cfg.stein_mode,
                                                  ctx.cfg.stein_vertex, ctx.workers);
  json per_n = json::array();
  for (const auto& r : results) {
    json j;
    j["n"] = r.n;
    j["b_hat"] = r.report.b_hat;
    j["b_se"] = r.report.b_se;
    j["delta0"] = r.report.delta0;
    j["delta0_se"] = r.report.delta0_se;
    j["delta1"] = r.report.delta1;
    j["delta1_prime"] = r.report.delta1_prime;
    j["delta2"] = r.report.delta2;
    j["delta3"] = r.report.delta3;
    j["samples"] = r.report.samples;
    // raw sums behind the Wasserstein/Kolmogorov bounds; the absolute
    // constant in front is unknown, so these are recorded, not asserted
    j["was_bound_sum"] =
        (r.report.delta0 + r.report.delta1 + r.report.delta2 + r.report.delta3) / r.report.b_hat;
    j["kol_bound_sum"] = (r.report.delta0 + r.report.delta1_prime + r.report.delta2 +
                          r.report.delta3) /
                         r.report.b_hat;
    per_n.push_back(j);

    ergm::CsvWriter csv(ctx.out_dir / ("stein_samples_n" + std::to_string(r.n) + ".csv"),
                        "ergm.stein_samples.v1", {"sum_delta1", "sum_delta2", "f"});
    for (std::size_t i = 0; i < r.f.size(); ++i)
      csv.write_row({r.sum_delta1[i], r.sum_delta2[i], r.f[i]});
  }
  json summary;
  summary["mode"] = ctx.cfg.stein_mode == ergm::SteinMode::EdgeCount ? "edge" : "degree";
  summary["p_star"] = setup.p_star;
  summary["per_n"] = per_n;
  ergm::write_json(ctx.out_dir / "stein_summary.json", summary);
  ctx.write_manifest("stein");
  return 0;
}

int cmd_oracle(const CliOptions& opt) {
  RunContext ctx = make_context(opt);
  const ergm::ExperimentChain setup = make_setup(ctx);
  const int n = ctx.cfg.oracle_n;
  std::optional<ergm::WellSpec> well;
  if (setup.eta > 0) well = ergm::WellSpec{setup.p_star, setup.eta};
  const ergm::ExactDistribution dist = ergm::build_exact(ctx.cfg.spec, n, well, ctx.workers);

  const auto [mean_e, var_e] = ergm::exact_moments(
      dist, [](const ergm::GraphState& x) { return static_cast<double>(x.edge_count()); });
  const auto [mean_d, var_d] = ergm::exact_moments(
      dist, [](const ergm::GraphState& x) { return static_cast<double>(x.degree(0)); });

  ergm::ChainConfig ccfg = setup.chain_config(n, 0);
  ccfg.record_bitmasks = ergm::pair_count(n) <= 64;
  const ergm::ChainRun run =
      ergm::run_chain(ccfg, {ergm::Observable::edge_count(), ergm::Observable::degree(0)});
  const auto batch = run.batch();
  const auto edges = batch.column(0);
  const auto degrees = batch.column(1);

  json j;
  j["n"] = n;
  j["detailed_balance_violation"] = ergm::exact_transition_violation(dist);
  j["exact"] = {{"edge_mean", mean_e}, {"edge_var", var_e}, {"degree_mean", mean_d},
                {"degree_var", var_d}};
  j["sampled"] = {{"edge_mean", ergm::sample_mean(edges)},
                  {"edge_var", ergm::sample_variance(edges)},
                  {"degree_mean", ergm::sample_mean(degrees)},
                  {"degree_var", ergm::sample_variance(degrees)}};
  j["z_scores"] = {
      {"edge_mean",
       (ergm::sample_mean(edges) - mean_e) / ergm::batch_means_se(edges)},
      {"degree_mean",
       (ergm::sample_mean(degrees) - mean_d) / ergm::batch_means_se(degrees)}};
  if (!run.bitmasks.empty()) j["empirical_tv"] = ergm::tv_to_exact(dist, run.bitmasks);
  j["marginal_first_edge"] = ergm::exact_marginal(dist, {0, 1});
  ergm::write_json(ctx.out_dir / "oracle_summary.json", j);

  if (ctx.cfg.oracle_dump) {
    std::ofstream dump(ctx.out_dir / "oracle_distribution.bin", std::ios::binary);
    for (std::uint64_t mask = 0; mask < dist.state_count(); ++mask) {
      dump.write(reinterpret_cast<const char*>(&mask), sizeof mask);
      dump.write(reinterpret_cast<const char*>(&dist.log_weight[mask]), sizeof(double));
    }
  }
  ctx.write_manifest("oracle");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ferromagnetic random-graph sampling and limit-theorem experiments"};
  app.require_subcommand(1);

  CliOptions opt;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "experiment config file (JSON)")->required();
    sub->add_option("--seed", opt.seed, "master seed override");
    sub->add_option("--out", opt.out, "output directory override");
    sub->add_option("--workers", opt.workers, "worker pool size override");
    sub->add_flag("--force", opt.force, "allow critical-regime runs and non-global wells");
    sub->add_flag("--force-critical", opt.force_critical, "allow critical-regime runs");
  };

  int (*handler)(const CliOptions&) = nullptr;
  for (const auto& [name, desc, fn] :
       {std::tuple{"phase", "stationary points, regime, optional beta-grid map", &cmd_phase},
        std::tuple{"sample", "run Glauber chains and record observables", &cmd_sample},
        std::tuple{"clt", "standardized edge/degree distances to normal per size", &cmd_clt},
        std::tuple{"hajek", "residual variance scan across sizes", &cmd_hajek},
        std::tuple{"couple", "monotone coupling decay experiments", &cmd_couple},
        std::tuple{"stein", "error-term estimates per size", &cmd_stein},
        std::tuple{"oracle", "exact enumeration cross-check at tiny n", &cmd_oracle}}) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub);
    sub->callback([&handler, fn] { handler = fn; });
  }

  CLI11_PARSE(app, argc, argv);
  opt.force = opt.force || opt.force_critical;
  try {
    return handler(opt);
  } catch (const ergm::CriticalRegimeError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
