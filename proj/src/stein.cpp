#include "ergm/stein.hpp"

#include <cmath>
#include <stdexcept>

#include "ergm/hom_count.hpp"
#include "ergm/stats.hpp"

namespace ergm {

TiltedPair make_tilted_pair(const GraphState& x, double p, CounterRng& partner_rng) {
  return {x, GraphState::erdos_renyi(x.n(), p, partner_rng)};
}

double tilting_g(const GraphState& x, const ErgmSpec& spec, double p) {
  double g = 0;
  for (int j = 1; j < spec.motif_count(); ++j) {
    const auto& motif = spec.motifs[static_cast<std::size_t>(j)];
    const int e = motif.edge_count();
    g += spec.beta[static_cast<std::size_t>(j)] *
         (static_cast<double>(count_hom(x, motif)) / std::pow(x.n(), motif.vertex_count - 2) -
          2.0 * e * std::pow(p, e - 1) * static_cast<double>(x.edge_count()));
  }
  return g;
}

double tilting_g_delta(const GraphState& x, const ErgmSpec& spec, double p, EdgeId e) {
  double dg = 0;
  for (int j = 1; j < spec.motif_count(); ++j) {
    const auto& motif = spec.motifs[static_cast<std::size_t>(j)];
    const int me = motif.edge_count();
    dg += spec.beta[static_cast<std::size_t>(j)] *
          (static_cast<double>(count_hom_delta(x, motif, e)) /
               std::pow(x.n(), motif.vertex_count - 2) -
           2.0 * me * std::pow(p, me - 1));
  }
  return dg;
}

double delta1_edge_closed(const GraphState& x, EdgeId e, double p, double sigma_sq) {
  const double xe = x.has_edge(e) ? 1.0 : 0.0;
  return ((1 - 2 * p) * xe + p) / (2 * sigma_sq);
}

double delta1_edge_generic(const GraphState& x, EdgeId e, double p, double sigma_sq) {
  // (1/2) E[(f(x) - f(x^{(e)})) (f(x^{[e]}) - f(x^{[e-1]}))], expectation over
  // the one Bernoulli coordinate Y(e). Both factors reduce to differences of
  // edge counts between real graphs, evaluated here by surgery.
  const double sigma = std::sqrt(sigma_sq);
  double acc = 0;
  for (int ye = 0; ye <= 1; ++ye) {
    const double prob = ye ? p : 1 - p;
    GraphState swapped = x;
    swapped.set_edge(e, ye != 0);
    const double df = static_cast<double>(x.edge_count() - swapped.edge_count()) / sigma;
    acc += prob * df * df;
  }
  return acc / 2;
}

double delta2_edge_closed(const GraphState& x, EdgeId e, const ErgmSpec& spec, double p,
                          double sigma_sq) {
  const double sigma = std::sqrt(sigma_sq);
  const double xe = x.has_edge(e) ? 1.0 : 0.0;
  const double w = (1 - 2 * p) * xe + p;
  double acc = 0;
  for (int j = 1; j < spec.motif_count(); ++j) {
    const auto& motif = spec.motifs[static_cast<std::size_t>(j)];
    const int me = motif.edge_count();
    const double scale = std::pow(x.n(), motif.vertex_count - 2);
    acc += spec.beta[static_cast<std::size_t>(j)] / (2 * scale * sigma) * w *
           (static_cast<double>(count_hom_delta(x, motif, e)) - 2.0 * me * std::pow(p, me - 1) * scale);
  }
  return acc;
}

MonteCarloEstimate delta2_edge_generic_mc(const GraphState& x, EdgeId e, const ErgmSpec& spec,
                                          double p, double sigma_sq, int draws, CounterRng& rng) {
  if (draws < 2) throw std::invalid_argument("delta2_edge_generic_mc: need at least 2 draws");
  const double sigma = std::sqrt(sigma_sq);
  const double gx = tilting_g(x, spec, p);
  // g(x^{(e)}) takes only two values; evaluate both once on surgered graphs.
  double g_swapped[2];
  for (int ye = 0; ye <= 1; ++ye) {
    GraphState swapped = x;
    swapped.set_edge(e, ye != 0);
    g_swapped[ye] = tilting_g(swapped, spec, p);
  }
  const double xe = x.has_edge(e) ? 1.0 : 0.0;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < draws; ++i) {
    const int ye = rng.bernoulli(p) ? 1 : 0;
    const double dg = gx - g_swapped[ye];
    const double df = (xe - ye) / sigma;  // f(x^{[e]}) - f(x^{[e-1]})
    const double v = dg * df / 2;
    sum += v;
    sum_sq += v * v;
  }
  MonteCarloEstimate est;
  est.draws = draws;
  est.value = sum / draws;
  const double var = (sum_sq - sum * sum / draws) / (draws - 1);
  est.se = std::sqrt(std::max(var, 0.0) / draws);
  return est;
}

SteinAccumulator::SteinAccumulator(SteinParams params) : params_(std::move(params)) {
  if (!(params_.p > 0 && params_.p < 1))
    throw std::invalid_argument("stein: p must lie in (0,1)");
  if (!(params_.sigma_sq > 0)) throw std::invalid_argument("stein: variance proxy must be positive");
}

void SteinAccumulator::add(const GraphState& x) {
  if (n_ == 0) {
    n_ = x.n();
    if (params_.mode == SteinMode::Degree && (params_.vertex < 0 || params_.vertex >= n_))
      throw std::invalid_argument("stein: degree vertex out of range");
    for (const auto& g : params_.spec.motifs) {
      inv_scale_.push_back(std::pow(static_cast<double>(n_), -(g.vertex_count - 2)));
      hajek_per_edge_.push_back(2.0 * g.edge_count() * std::pow(params_.p, g.edge_count() - 1) *
                                std::pow(static_cast<double>(n_), g.vertex_count - 2));
    }
  } else if (x.n() != n_) {
    throw std::invalid_argument("stein: mixed sample sizes");
  }

  const double p = params_.p;
  const double sigma = std::sqrt(params_.sigma_sq);
  const bool degree_mode = params_.mode == SteinMode::Degree;
  const int v = params_.vertex;
  const auto& spec = params_.spec;

  const double stat = degree_mode ? static_cast<double>(x.degree(v))
                                  : static_cast<double>(x.edge_count());
  const double edges_in_scope = degree_mode ? static_cast<double>(n_ - 1)
                                            : static_cast<double>(pair_count(n_));
  // sum over in-scope edges of w_e = p + (1-2p) x(e)
  const double sum_w = edges_in_scope * p + (1 - 2 * p) * stat;

  double sum_d2 = 0, d0 = 0, d1p_first = 0;
  auto per_edge = [&](EdgeId e) {
    const double xe = x.has_edge(e) ? 1.0 : 0.0;
    const double we = p + (1 - 2 * p) * xe;  // P[Y(e) != x(e)]
    double dg = 0, d2_term = 0;
    for (int j = 1; j < spec.motif_count(); ++j) {
      const auto& motif = spec.motifs[static_cast<std::size_t>(j)];
      const double delta = static_cast<double>(count_hom_delta(x, motif, e));
      const double centered = delta - hajek_per_edge_[static_cast<std::size_t>(j)];
      dg += spec.beta[static_cast<std::size_t>(j)] * inv_scale_[static_cast<std::size_t>(j)] * centered;
      d2_term += spec.beta[static_cast<std::size_t>(j)] * inv_scale_[static_cast<std::size_t>(j)] /
                 (2 * sigma) * centered;
    }
    sum_d2 += ((1 - 2 * p) * xe + p) * d2_term;
    const double a = std::abs(dg);
    d0 += we * std::exp(a) * dg * dg * (a + 1 / sigma) / sigma;
    d1p_first += we * std::exp(a) * a / (sigma * sigma);
  };
  if (degree_mode) {
    for (int u = 0; u < n_; ++u)
      if (u != v) per_edge(u < v ? EdgeId{u, v} : EdgeId{v, u});
  } else {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) per_edge(EdgeId{a, b});
  }

  stat_.push_back(stat);
  sum_d1_.push_back(sum_w / (2 * params_.sigma_sq));
  sum_d2_.push_back(sum_d2);
  d0_.push_back(d0);
  d1_.push_back(sum_w / (sigma * sigma * sigma));
  d1p_first_.push_back(d1p_first);
  d1p_second_.push_back(std::abs(stat - edges_in_scope * p) / params_.sigma_sq);
}

std::vector<double> SteinAccumulator::f_samples() const {
  const double m = sample_mean(stat_);
  const double sigma = std::sqrt(params_.sigma_sq);
  std::vector<double> f;
  f.reserve(stat_.size());
  for (double s : stat_) f.push_back((s - m) / sigma);
  return f;
}

namespace {

// standard error of a standard-deviation estimate: batch means over per-batch
// standard deviations
double sd_se(std::span<const double> xs) {
  const int batches = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(xs.size()) / 4)));
  const std::size_t len = xs.size() / static_cast<std::size_t>(batches);
  std::vector<double> sds;
  for (int b = 0; b < batches; ++b) {
    std::vector<double> chunk(xs.begin() + static_cast<long>(static_cast<std::size_t>(b) * len),
                              xs.begin() + static_cast<long>(static_cast<std::size_t>(b + 1) * len));
    sds.push_back(sample_sd(chunk));
  }
  return sample_sd(sds) / std::sqrt(static_cast<double>(batches));
}

}  // namespace

SteinReport SteinAccumulator::report() const {
  if (stat_.size() < 100) throw std::runtime_error("stein: insufficient samples (need >= 100)");
  SteinReport r;
  r.samples = static_cast<long long>(stat_.size());
  r.b_hat = sample_mean(sum_d1_);
  r.b_se = batch_means_se(sum_d1_);
  r.delta0 = sample_mean(d0_);
  r.delta0_se = batch_means_se(d0_);
  r.delta1 = sample_mean(d1_);
  r.delta1_se = batch_means_se(d1_);
  r.delta1_prime = sample_mean(d1p_first_) + sample_mean(d1p_second_);
  r.delta1_prime_se = batch_means_se(d1p_first_) + batch_means_se(d1p_second_);
  r.delta2 = sample_sd(sum_d1_);
  r.delta2_se = sd_se(sum_d1_);
  const auto f = f_samples();
  std::vector<double> d3_terms;
  d3_terms.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    d3_terms.push_back(sum_d2_[i] - (1 - r.b_hat) * f[i]);
  r.delta3 = sample_sd(d3_terms);
  r.delta3_se = sd_se(d3_terms);
  return r;
}

BEstimate estimate_b(std::span<const GraphState> xs, const SteinParams& params) {
  SteinAccumulator acc(params);
  for (const auto& x : xs) acc.add(x);
  const auto rep = acc.report();
  return {rep.b_hat, rep.b_se};
}

SteinReport estimate_deltas(std::span<const GraphState> xs, const SteinParams& params) {
  SteinAccumulator acc(params);
  for (const auto& x : xs) acc.add(x);
  return acc.report();
}

}  // namespace ergm
