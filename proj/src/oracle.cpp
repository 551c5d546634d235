#include "ergm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "ergm/parallel.hpp"

namespace ergm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(std::span<const double> xs) {
  double mx = kNegInf;
  for (double x : xs) mx = std::max(mx, x);
  if (mx == kNegInf) return kNegInf;
  double s = 0;
  for (double x : xs)
    if (x != kNegInf) s += std::exp(x - mx);
  return mx + std::log(s);
}

}  // namespace

namespace {

bool hom_ok(const GraphState& x, const MotifGraph& g, const std::vector<int>& map) {
  for (const auto& [a, b] : g.edges) {
    int p = map[static_cast<std::size_t>(a)], q = map[static_cast<std::size_t>(b)];
    if (p == q) return false;
    if (p > q) std::swap(p, q);
    if (!x.has_edge(p, q)) return false;
  }
  return true;
}

template <typename Pred>
std::int64_t naive_filtered(const GraphState& x, const MotifGraph& g, Pred pred) {
  const int n = x.n(), v = g.vertex_count;
  std::vector<int> map(static_cast<std::size_t>(v), 0);
  std::int64_t count = 0;
  for (;;) {
    if (pred(map) && hom_ok(x, g, map)) ++count;
    int k = v - 1;
    while (k >= 0 && ++map[static_cast<std::size_t>(k)] == n) map[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return count;
}

bool injective(const std::vector<int>& map) {
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = i + 1; j < map.size(); ++j)
      if (map[i] == map[j]) return false;
  return true;
}

}  // namespace

std::int64_t count_hom_naive(const GraphState& x, const MotifGraph& g) {
  return naive_filtered(x, g, [](const std::vector<int>&) { return true; });
}

std::int64_t count_hom_rooted_naive(const GraphState& x, const MotifGraph& g, int rho, int v) {
  return naive_filtered(x, g, [&](const std::vector<int>& m) {
    return m[static_cast<std::size_t>(rho)] == v;
  });
}

std::int64_t count_hom_at_vertex_naive(const GraphState& x, const MotifGraph& g, int v) {
  return naive_filtered(x, g, [&](const std::vector<int>& m) {
    return std::find(m.begin(), m.end(), v) != m.end();
  });
}

std::int64_t count_hom_injective_naive(const GraphState& x, const MotifGraph& g) {
  return naive_filtered(x, g, [&](const std::vector<int>& m) { return injective(m); });
}

std::int64_t count_hom_rooted_injective_naive(const GraphState& x, const MotifGraph& g, int rho,
                                              int v) {
  return naive_filtered(x, g, [&](const std::vector<int>& m) {
    return injective(m) && m[static_cast<std::size_t>(rho)] == v;
  });
}

bool ExactDistribution::in_support(std::uint64_t mask) const {
  return log_weight[mask] != kNegInf;
}

double ExactDistribution::probability(std::uint64_t mask) const {
  const double lw = log_weight[mask];
  return lw == kNegInf ? 0.0 : std::exp(lw - log_z);
}

ExactDistribution build_exact(const ErgmSpec& spec, int n, std::optional<WellSpec> well,
                              int workers) {
  if (n < 2) throw std::invalid_argument("build_exact: n must be at least 2");
  const long long pairs = pair_count(n);
  if (pairs > 28) throw std::invalid_argument("build_exact: n too large for full enumeration");
  const std::uint64_t states = std::uint64_t{1} << pairs;
  if (n >= 7)
    std::cerr << "build_exact: enumerating " << states << " graphs (~"
              << (states * sizeof(double)) / (1024 * 1024) << " MiB of log-weights)\n";

  ExactDistribution dist;
  dist.n = n;
  dist.spec = spec;
  dist.well = well;
  dist.log_weight.assign(states, 0.0);

  const double n2 = static_cast<double>(n) * n;
  std::vector<double> motif_scale;
  for (const auto& g : spec.motifs) motif_scale.push_back(std::pow(n, g.vertex_count));

  const int chunks = workers > 1 ? workers * 8 : 1;
  const std::uint64_t chunk_len = (states + static_cast<std::uint64_t>(chunks) - 1) /
                                  static_cast<std::uint64_t>(chunks);
  parallel_for(0, chunks, workers, [&](int c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk_len;
    const std::uint64_t hi = std::min(states, lo + chunk_len);
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      const GraphState x = GraphState::from_bitmask(n, mask);
      if (well) {
        const double d = x.edge_density();
        if (d < well->p_star - well->eta || d > well->p_star + well->eta) {
          dist.log_weight[mask] = kNegInf;
          continue;
        }
      }
      double h = 0;
      for (int j = 0; j < spec.motif_count(); ++j)
        h += spec.beta[static_cast<std::size_t>(j)] *
             static_cast<double>(count_hom_naive(x, spec.motifs[static_cast<std::size_t>(j)])) /
             motif_scale[static_cast<std::size_t>(j)];
      dist.log_weight[mask] = n2 * h;
    }
  });

  dist.log_z = log_sum_exp(dist.log_weight);
  if (dist.log_z == kNegInf) throw std::runtime_error("build_exact: empty support (well too tight)");
  return dist;
}

std::pair<double, double> exact_moments(const ExactDistribution& dist,
                                        const std::function<double(const GraphState&)>& f) {
  double mean = 0, second = 0;
  for (std::uint64_t mask = 0; mask < dist.state_count(); ++mask) {
    const double pr = dist.probability(mask);
    if (pr == 0) continue;
    const double v = f(GraphState::from_bitmask(dist.n, mask));
    mean += pr * v;
    second += pr * v * v;
  }
  return {mean, second - mean * mean};
}

double exact_marginal(const ExactDistribution& dist, EdgeId e) {
  const long long bit = edge_index(dist.n, e);
  if (bit < 0 || bit >= pair_count(dist.n)) throw std::out_of_range("exact_marginal: bad edge");
  double p = 0;
  for (std::uint64_t mask = 0; mask < dist.state_count(); ++mask)
    if (mask >> bit & 1) p += dist.probability(mask);
  return p;
}

double exact_transition_violation(const ExactDistribution& dist) {
  const int n = dist.n;
  const EdgeIndexer indexer(n);
  const GlauberKernel kernel(dist.spec, n);
  const double edge_choice = 1.0 / static_cast<double>(indexer.count());
  double worst = 0;
  for (std::uint64_t mask = 0; mask < dist.state_count(); ++mask) {
    if (!dist.in_support(mask)) continue;
    const GraphState x = GraphState::from_bitmask(n, mask);
    const double pi_x = dist.probability(mask);
    for (long long k = 0; k < indexer.count(); ++k) {
      const std::uint64_t other = mask ^ (std::uint64_t{1} << k);
      if (other < mask) continue;  // check each unordered pair once
      if (!dist.in_support(other)) continue;  // band-rejected move: both rates are zero
      const EdgeId e = indexer.edge(k);
      const double phi = kernel.flip_probability(x, e);  // depends on x off e only
      const bool x_has = (mask >> k) & 1;
      const double fwd = pi_x * edge_choice * (x_has ? 1 - phi : phi);
      const double bwd = dist.probability(other) * edge_choice * (x_has ? phi : 1 - phi);
      worst = std::max(worst, std::abs(fwd - bwd));
    }
  }
  return worst;
}

double tv_to_exact(const ExactDistribution& dist, std::span<const std::uint64_t> bitmasks) {
  if (bitmasks.empty()) throw std::invalid_argument("tv_to_exact: empty sample");
  std::vector<double> freq(dist.state_count(), 0.0);
  const double w = 1.0 / static_cast<double>(bitmasks.size());
  for (std::uint64_t m : bitmasks) freq[m] += w;
  double tv = 0;
  for (std::uint64_t mask = 0; mask < dist.state_count(); ++mask)
    tv += std::abs(freq[mask] - dist.probability(mask));
  return tv / 2;
}

}  // namespace ergm
