#include "ergm/motif.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ergm {

namespace {

bool acyclic(int v, const std::vector<std::pair<int, int>>& edges) {
  // union-find cycle check
  std::vector<int> parent(static_cast<std::size_t>(v));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (const auto& [a, b] : edges) {
    const int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  return true;
}

}  // namespace

MotifGraph MotifGraph::from_edges(int vertex_count, std::vector<std::pair<int, int>> edges,
                                  std::string name) {
  if (vertex_count < 2 || vertex_count > 8)
    throw std::invalid_argument("motif: vertex count must be in [2, 8]");
  if (edges.empty()) throw std::invalid_argument("motif: at least one edge required");
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.first == e.second) throw std::invalid_argument("motif: loop edge");
    if (e.first < 0 || e.second >= vertex_count) throw std::invalid_argument("motif: vertex index out of range");
    if (!seen.insert(e).second) throw std::invalid_argument("motif: duplicate edge");
  }
  std::sort(edges.begin(), edges.end());
  MotifGraph g;
  g.vertex_count = vertex_count;
  g.edges = std::move(edges);
  g.degree.assign(static_cast<std::size_t>(vertex_count), 0);
  for (const auto& [a, b] : g.edges) {
    ++g.degree[static_cast<std::size_t>(a)];
    ++g.degree[static_cast<std::size_t>(b)];
  }
  g.is_forest = acyclic(vertex_count, g.edges);
  g.name = std::move(name);
  return g;
}

MotifGraph single_edge() { return MotifGraph::from_edges(2, {{0, 1}}, "edge"); }

MotifGraph wedge() { return MotifGraph::from_edges(3, {{0, 1}, {1, 2}}, "wedge"); }

MotifGraph triangle() { return MotifGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, "triangle"); }

MotifGraph path_graph(int vertices) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < vertices; ++i) edges.emplace_back(i, i + 1);
  return MotifGraph::from_edges(vertices, std::move(edges), "path" + std::to_string(vertices));
}

MotifGraph star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return MotifGraph::from_edges(leaves + 1, std::move(edges), "star" + std::to_string(leaves));
}

MotifGraph cycle_graph(int vertices) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < vertices; ++i) edges.emplace_back(i, (i + 1) % vertices);
  return MotifGraph::from_edges(vertices, std::move(edges), "cycle" + std::to_string(vertices));
}

MotifGraph complete_graph(int vertices) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < vertices; ++i)
    for (int j = i + 1; j < vertices; ++j) edges.emplace_back(i, j);
  return MotifGraph::from_edges(vertices, std::move(edges), "k" + std::to_string(vertices));
}

namespace {

// Canonical form: minimum adjacency bitmask over all vertex permutations.
std::uint64_t canonical_mask(int v, std::uint64_t mask,
                             const std::vector<std::pair<int, int>>& all_pairs) {
  std::vector<int> perm(static_cast<std::size_t>(v));
  std::iota(perm.begin(), perm.end(), 0);
  auto pair_index = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    for (std::size_t k = 0; k < all_pairs.size(); ++k)
      if (all_pairs[k].first == a && all_pairs[k].second == b) return k;
    return all_pairs.size();
  };
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < all_pairs.size(); ++k) {
      if (mask >> k & 1) {
        const auto [a, b] = all_pairs[k];
        m |= std::uint64_t{1} << pair_index(perm[static_cast<std::size_t>(a)],
                                            perm[static_cast<std::size_t>(b)]);
      }
    }
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool mask_connected(int v, std::uint64_t mask, const std::vector<std::pair<int, int>>& all_pairs) {
  std::vector<int> comp(static_cast<std::size_t>(v), -1);
  std::vector<int> stack{0};
  comp[0] = 0;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (std::size_t k = 0; k < all_pairs.size(); ++k) {
      if (!(mask >> k & 1)) continue;
      const auto [p, q] = all_pairs[k];
      int other = -1;
      if (p == a) other = q;
      if (q == a) other = p;
      if (other >= 0 && comp[static_cast<std::size_t>(other)] < 0) {
        comp[static_cast<std::size_t>(other)] = 0;
        stack.push_back(other);
      }
    }
  }
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

}  // namespace

std::vector<MotifGraph> connected_graph_catalog(int max_vertices) {
  if (max_vertices < 2 || max_vertices > 6)
    throw std::invalid_argument("connected_graph_catalog: max_vertices must be in [2, 6]");
  std::vector<MotifGraph> out;
  for (int v = 2; v <= max_vertices; ++v) {
    std::vector<std::pair<int, int>> all_pairs;
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j) all_pairs.emplace_back(i, j);
    std::set<std::uint64_t> seen;
    int serial = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << all_pairs.size()); ++mask) {
      if (!mask_connected(v, mask, all_pairs)) continue;
      const std::uint64_t canon = canonical_mask(v, mask, all_pairs);
      if (!seen.insert(canon).second) continue;
      std::vector<std::pair<int, int>> edges;
      for (std::size_t k = 0; k < all_pairs.size(); ++k)
        if (canon >> k & 1) edges.push_back(all_pairs[k]);
      out.push_back(MotifGraph::from_edges(
          v, std::move(edges),
          "v" + std::to_string(v) + "e" + std::to_string(__builtin_popcountll(canon)) + "#" +
              std::to_string(serial++)));
    }
  }
  return out;
}

ErgmSpec ErgmSpec::make(std::vector<MotifGraph> motifs, std::vector<double> beta) {
  if (motifs.empty()) throw std::invalid_argument("spec: at least one motif required");
  if (motifs.size() != beta.size()) throw std::invalid_argument("spec: motif/beta length mismatch");
  if (motifs[0].vertex_count != 2 || motifs[0].edge_count() != 1)
    throw std::invalid_argument("spec: motifs[0] must be a single edge");
  for (std::size_t j = 1; j < beta.size(); ++j)
    if (beta[j] < 0)
      throw std::invalid_argument("spec: ferromagnetic condition requires beta_j >= 0 for j >= 1");
  ErgmSpec s;
  s.motifs = std::move(motifs);
  s.beta = std::move(beta);
  return s;
}

bool ErgmSpec::all_forests() const {
  for (const auto& g : motifs)
    if (!g.is_forest) return false;
  return true;
}

int ErgmSpec::max_motif_vertices() const {
  int m = 0;
  for (const auto& g : motifs) m = std::max(m, g.vertex_count);
  return m;
}

}  // namespace ergm
