#include "ergm/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "ergm/hom_count.hpp"
#include "ergm/phase.hpp"
#include "ergm/scalar_model.hpp"

namespace ergm {

long long ChainConfig::resolved_burn_in() const {
  return burn_in >= 0 ? burn_in : static_cast<long long>(n) * n * n;
}

long long ChainConfig::resolved_thinning() const { return thinning >= 0 ? thinning : pair_count(n); }

void ChainConfig::validate() const {
  if (n < 2) throw std::invalid_argument("chain config: n must be at least 2");
  if (samples < 1) throw std::invalid_argument("chain config: samples must be positive");
  if (resolved_thinning() < 1) throw std::invalid_argument("chain config: thinning must be >= 1");
  if (resolved_burn_in() < 0) throw std::invalid_argument("chain config: burn_in must be >= 0");
  if (well) {
    if (!(well->p_star > 0 && well->p_star < 1))
      throw std::invalid_argument("chain config: well p_star must lie in (0,1)");
    const double bound = std::min(well->p_star, 1 - well->p_star);
    if (!(well->eta > 0 && well->eta < bound))
      throw std::invalid_argument("chain config: well eta must lie in (0, min(p, 1-p))");
  }
  if (init == ChainInit::Explicit) {
    if (!init_graph) throw std::invalid_argument("chain config: explicit init needs a graph");
    if (init_graph->n() != n) throw std::invalid_argument("chain config: init graph size mismatch");
  }
  if (init == ChainInit::ErdosRenyi && !(init_p >= 0 && init_p <= 1))
    throw std::invalid_argument("chain config: init_p must lie in [0,1]");
  if (record_bitmasks && pair_count(n) > 64)
    throw std::invalid_argument("chain config: bitmask recording needs C(n,2) <= 64");
}

GlauberKernel::GlauberKernel(const ErgmSpec& spec, int n) : spec_(&spec) {
  inv_scale_.reserve(static_cast<std::size_t>(spec.motif_count()));
  for (const auto& g : spec.motifs)
    inv_scale_.push_back(std::pow(static_cast<double>(n), -(g.vertex_count - 2)));
}

double GlauberKernel::conditional_energy(const GraphState& x, EdgeId e) const {
  double z = 0;
  for (int j = 0; j < spec_->motif_count(); ++j)
    z += spec_->beta[static_cast<std::size_t>(j)] * inv_scale_[static_cast<std::size_t>(j)] *
         static_cast<double>(count_hom_delta(x, spec_->motifs[static_cast<std::size_t>(j)], e));
  return z;
}

double GlauberKernel::flip_probability(const GraphState& x, EdgeId e) const {
  return logistic(conditional_energy(x, e));
}

namespace {

bool density_in_band(long long edges, int n, const WellSpec& well) {
  const double d = static_cast<double>(edges) / static_cast<double>(pair_count(n));
  return d >= well.p_star - well.eta && d <= well.p_star + well.eta;
}

// Applies the proposed edge state, honoring the band constraint. Returns true
// when the proposal was rejected at the boundary.
bool apply_proposal(GraphState& x, EdgeId e, bool present, const std::optional<WellSpec>& well) {
  const bool current = x.has_edge(e);
  if (present == current) return false;
  if (well) {
    const long long next = x.edge_count() + (present ? 1 : -1);
    if (!density_in_band(next, x.n(), *well)) return true;
  }
  x.flip(e);
  return false;
}

GraphState make_initial_state(const ChainConfig& cfg, CounterRng& rng) {
  switch (cfg.init) {
    case ChainInit::Empty:
      return GraphState(cfg.n);
    case ChainInit::Complete:
      return GraphState::complete(cfg.n);
    case ChainInit::Explicit:
      return *cfg.init_graph;
    case ChainInit::ErdosRenyi:
      break;
  }
  const double p = cfg.well ? cfg.well->p_star : cfg.init_p;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    GraphState x = GraphState::erdos_renyi(cfg.n, p, rng);
    if (!cfg.well || density_in_band(x.edge_count(), cfg.n, *cfg.well)) return x;
  }
  throw std::runtime_error("run_chain: could not draw a warm start inside the well band");
}

void refuse_critical(const ChainConfig& cfg) {
  if (cfg.force_critical) return;
  const PhaseReport report = find_stationary_points(cfg.spec);
  if (report.regime == Regime::Critical)
    throw CriticalRegimeError(
        "run_chain: spec is in the critical regime; Gaussian-fluctuation "
        "experiments are refused without force_critical");
}

}  // namespace

StepRecord glauber_step(GraphState& x, const GlauberKernel& kernel, const EdgeIndexer& indexer,
                        CounterRng& rng, const std::optional<WellSpec>& well) {
  StepRecord rec;
  rec.edge_index = static_cast<long long>(rng.below(static_cast<std::uint64_t>(indexer.count())));
  const EdgeId e = indexer.edge(rec.edge_index);
  rec.proposed_present = rng.uniform01() < kernel.flip_probability(x, e);
  rec.boundary_rejected = apply_proposal(x, e, rec.proposed_present, well);
  return rec;
}

SampleBatch ChainRun::batch() const {
  SampleBatch b;
  b.columns = columns;
  b.rows = rows;
  return b;
}

namespace {

long long drive_chain(const ChainConfig& cfg,
                      const std::function<void(long long step, GraphState& x)>& on_sample) {
  cfg.validate();
  refuse_critical(cfg);
  CounterRng rng = CounterRng::stream(cfg.seed, cfg.stream);
  GraphState x = make_initial_state(cfg, rng);
  const EdgeIndexer indexer(cfg.n);
  const GlauberKernel kernel(cfg.spec, cfg.n);

  const long long burn = cfg.resolved_burn_in();
  const long long thin = cfg.resolved_thinning();
  long long rejections = 0;
  long long step = 0;
  for (; step < burn; ++step)
    rejections += glauber_step(x, kernel, indexer, rng, cfg.well).boundary_rejected;
  for (int s = 0; s < cfg.samples; ++s) {
    for (long long t = 0; t < thin; ++t, ++step)
      rejections += glauber_step(x, kernel, indexer, rng, cfg.well).boundary_rejected;
    on_sample(step, x);
  }
  return rejections;
}

}  // namespace

ChainRun run_chain(const ChainConfig& cfg, const std::vector<Observable>& observables) {
  for (const auto& o : observables) o.validate(cfg.n);

  ChainRun run;
  run.seed = cfg.seed;
  run.stream = cfg.stream;
  for (const auto& o : observables) run.columns.push_back(o.name());
  run.rows.reserve(static_cast<std::size_t>(cfg.samples));

  run.boundary_rejections = drive_chain(cfg, [&](long long step, GraphState& x) {
    std::vector<double> row;
    row.reserve(observables.size());
    for (const auto& o : observables) row.push_back(o.evaluate(x));
    run.rows.push_back(std::move(row));
    run.step_index.push_back(step);
    if (cfg.record_bitmasks) run.bitmasks.push_back(x.to_bitmask());
    run.final_state = x;
  });
  return run;
}

long long run_chain_visit(const ChainConfig& cfg,
                          const std::function<void(const GraphState&)>& on_sample) {
  return drive_chain(cfg, [&](long long, GraphState& x) { on_sample(x); });
}

CouplingRun run_coupled(const CouplingConfig& cfg) {
  cfg.base.validate();
  const int n = cfg.base.n;
  if (cfg.flip_edge.u < 0 || cfg.flip_edge.w >= n || cfg.flip_edge.u >= cfg.flip_edge.w)
    throw std::invalid_argument("run_coupled: invalid flip edge");
  if (cfg.watch_vertex < 0 || cfg.watch_vertex >= n || cfg.flip_edge.contains(cfg.watch_vertex))
    throw std::invalid_argument("run_coupled: watch vertex must lie outside the flipped edge");
  if (cfg.horizon < 1) throw std::invalid_argument("run_coupled: horizon must be positive");

  CounterRng rng = CounterRng::stream(cfg.base.seed, cfg.base.stream);
  GraphState lower = make_initial_state(cfg.base, rng);

  const EdgeIndexer indexer(n);
  const GlauberKernel kernel(cfg.base.spec, n);
  const auto& well = cfg.base.well;

  for (long long t = 0; t < cfg.base.resolved_burn_in(); ++t)
    glauber_step(lower, kernel, indexer, rng, well);

  GraphState upper = lower;
  upper.flip(cfg.flip_edge);
  // keep "lower <= upper" literal: the chain holding the extra edge is upper
  if (!upper.has_edge(cfg.flip_edge)) std::swap(lower, upper);

  CouplingRun run;
  run.d_hamming.reserve(static_cast<std::size_t>(cfg.horizon) + 1);
  run.d_local.reserve(static_cast<std::size_t>(cfg.horizon) + 1);
  run.d_local_all.reserve(static_cast<std::size_t>(cfg.horizon) + 1);
  run.order_ok.reserve(static_cast<std::size_t>(cfg.horizon) + 1);

  int d_h = 1;
  int d_loc = 0;       // watch vertex lies outside the flipped edge
  int d_loc_u0 = 1;    // flipped edge counts at both of its endpoints
  int d_loc_w0 = 1;
  int violations = 0;  // edges where lower has an edge that upper lacks
  run.d_hamming.push_back(d_h);
  run.d_local.push_back(d_loc);
  run.d_local_all.push_back(2 * d_h - d_loc_u0 - d_loc_w0);
  run.order_ok.push_back(1);

  for (long long t = 0; t < cfg.horizon; ++t) {
    const long long ei = static_cast<long long>(rng.below(static_cast<std::uint64_t>(indexer.count())));
    const EdgeId e = indexer.edge(ei);
    const double u01 = rng.uniform01();

    const bool lo_before = lower.has_edge(e), up_before = upper.has_edge(e);
    const bool lo_prop = u01 < kernel.flip_probability(lower, e);
    // coalesced chains share the conditional law exactly
    const bool up_prop = d_h == 0 ? lo_prop : u01 < kernel.flip_probability(upper, e);
    const bool lo_rej = apply_proposal(lower, e, lo_prop, well);
    const bool up_rej = apply_proposal(upper, e, up_prop, well);
    run.boundary_rejections += (lo_rej ? 1 : 0) + (up_rej ? 1 : 0);

    const bool lo_after = lower.has_edge(e), up_after = upper.has_edge(e);
    if ((lo_before != up_before) != (lo_after != up_after)) {
      const int delta = (lo_after != up_after) ? 1 : -1;
      d_h += delta;
      if (e.contains(cfg.watch_vertex)) d_loc += delta;
      if (e.contains(cfg.flip_edge.u)) d_loc_u0 += delta;
      if (e.contains(cfg.flip_edge.w)) d_loc_w0 += delta;
    }
    const bool was_violating = lo_before && !up_before;
    const bool is_violating = lo_after && !up_after;
    if (was_violating != is_violating) violations += is_violating ? 1 : -1;

    if (violations > 0) {
      ++run.order_violations;
      if (run.first_violation_step < 0) run.first_violation_step = t;
    }
    if (d_h == 0 && run.coalesced_at < 0) run.coalesced_at = t;
    run.d_hamming.push_back(d_h);
    run.d_local.push_back(d_loc);
    run.d_local_all.push_back(2 * d_h - d_loc_u0 - d_loc_w0);
    run.order_ok.push_back(violations == 0 ? 1 : 0);
  }
  return run;
}

GammaReport gamma_diagnostic(const GraphState& x, const ErgmSpec& spec, double p, double eps,
                             long long edge_sample, CounterRng* rng) {
  if (!(eps > 0)) throw std::invalid_argument("gamma_diagnostic: eps must be positive");
  GammaReport report;

  std::vector<MotifGraph> graphs;
  const int max_v = spec.max_motif_vertices();
  if (max_v <= 5) {
    for (auto& g : connected_graph_catalog(max_v))
      if (g.edge_count() >= 2) graphs.push_back(std::move(g));
  } else {
    // catalog is built up to 5 vertices; larger specs check their own motifs
    report.motif_only_fallback = true;
    for (const auto& g : spec.motifs)
      if (g.edge_count() >= 2) graphs.push_back(g);
  }
  report.graphs_checked = static_cast<int>(graphs.size());

  const EdgeIndexer indexer(x.n());
  std::vector<long long> edge_ids;
  if (edge_sample <= 0 || edge_sample >= indexer.count()) {
    edge_ids.resize(static_cast<std::size_t>(indexer.count()));
    for (long long i = 0; i < indexer.count(); ++i) edge_ids[static_cast<std::size_t>(i)] = i;
  } else {
    if (!rng) throw std::invalid_argument("gamma_diagnostic: edge subsampling needs an rng");
    for (long long i = 0; i < edge_sample; ++i)
      edge_ids.push_back(static_cast<long long>(rng->below(static_cast<std::uint64_t>(indexer.count()))));
  }

  for (const auto& g : graphs) {
    for (long long ei : edge_ids) {
      const EdgeId e = indexer.edge(ei);
      const double dev = std::abs(r_statistic(x, g, e).value - p);
      if (dev > report.worst_deviation) {
        report.worst_deviation = dev;
        report.worst_edge = e;
        report.worst_graph = g.name;
      }
      ++report.edges_checked;
    }
  }
  report.member = report.worst_deviation < eps;
  return report;
}

}  // namespace ergm
