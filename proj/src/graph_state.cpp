#include "ergm/graph_state.hpp"

#include <bit>
#include <cassert>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace ergm {

long long edge_index(int n, EdgeId e) {
  const long long u = e.u, w = e.w;
  return u * n - u * (u + 1) / 2 + (w - u - 1);
}

EdgeIndexer::EdgeIndexer(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("EdgeIndexer: n must be at least 2");
  edges_.reserve(static_cast<std::size_t>(pair_count(n)));
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) edges_.push_back(EdgeId{u, w});
}

EdgeId EdgeIndexer::edge(long long index) const {
  if (index < 0 || index >= count()) throw std::out_of_range("EdgeIndexer: index out of range");
  return edges_[static_cast<std::size_t>(index)];
}

GraphState::GraphState(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 2 || n > 4096) throw std::invalid_argument("GraphState: n must be in [2, 4096]");
  degree_.assign(static_cast<std::size_t>(n), 0);
  adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(words_), 0);
}

GraphState GraphState::complete(int n) {
  GraphState x(n);
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) x.set_edge(EdgeId{u, w}, true);
  return x;
}

GraphState GraphState::erdos_renyi(int n, double p, CounterRng& rng) {
  GraphState x(n);
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w)
      if (rng.bernoulli(p)) x.set_edge(EdgeId{u, w}, true);
  return x;
}

GraphState GraphState::from_bitmask(int n, std::uint64_t mask) {
  if (pair_count(n) > 64) throw std::invalid_argument("from_bitmask: C(n,2) exceeds 64");
  GraphState x(n);
  long long k = 0;
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w, ++k)
      if (mask >> k & 1) x.set_edge(EdgeId{u, w}, true);
  return x;
}

void GraphState::validate_edge(EdgeId e) const {
  if (e.u < 0 || e.w >= n_ || e.u >= e.w)
    throw std::out_of_range("GraphState: invalid edge id");
}

void GraphState::flip(EdgeId e) {
  validate_edge(e);
  const std::size_t ru = static_cast<std::size_t>(e.u) * static_cast<std::size_t>(words_);
  const std::size_t rw = static_cast<std::size_t>(e.w) * static_cast<std::size_t>(words_);
  const std::uint64_t bu = std::uint64_t{1} << (e.w & 63);
  const std::uint64_t bw = std::uint64_t{1} << (e.u & 63);
  adj_[ru + static_cast<std::size_t>(e.w >> 6)] ^= bu;
  adj_[rw + static_cast<std::size_t>(e.u >> 6)] ^= bw;
  const int d = (adj_[ru + static_cast<std::size_t>(e.w >> 6)] & bu) ? 1 : -1;
  degree_[static_cast<std::size_t>(e.u)] += d;
  degree_[static_cast<std::size_t>(e.w)] += d;
  edge_count_ += d;
  assert(degree_[static_cast<std::size_t>(e.u)] >= 0 &&
         degree_[static_cast<std::size_t>(e.u)] <= n_ - 1);
  assert(edge_count_ >= 0 && edge_count_ <= pair_count(n_));
}

void GraphState::set_edge(EdgeId e, bool present) {
  validate_edge(e);
  if (has_edge(e) != present) flip(e);
}

double GraphState::edge_density() const {
  return static_cast<double>(edge_count_) / static_cast<double>(pair_count(n_));
}

std::uint64_t GraphState::to_bitmask() const {
  if (pair_count(n_) > 64) throw std::logic_error("to_bitmask: C(n,2) exceeds 64");
  std::uint64_t mask = 0;
  long long k = 0;
  for (int u = 0; u < n_; ++u)
    for (int w = u + 1; w < n_; ++w, ++k)
      if (has_edge(u, w)) mask |= std::uint64_t{1} << k;
  return mask;
}

GraphState GraphState::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permuted: bad permutation size");
  GraphState y(n_);
  for (int u = 0; u < n_; ++u)
    for (int w = u + 1; w < n_; ++w)
      if (has_edge(u, w)) {
        int a = perm[static_cast<std::size_t>(u)], b = perm[static_cast<std::size_t>(w)];
        if (a > b) std::swap(a, b);
        y.set_edge(EdgeId{a, b}, true);
      }
  return y;
}

bool GraphState::check_invariants() const {
  long long popcount = 0;
  for (int u = 0; u < n_; ++u) {
    // diagonal empty
    if (has_edge(u, u) != false) {
      if ((adj_[static_cast<std::size_t>(u) * static_cast<std::size_t>(words_) +
                static_cast<std::size_t>(u >> 6)] >>
           (u & 63)) &
          1)
        return false;
    }
    int deg = 0;
    for (int k = 0; k < words_; ++k) deg += std::popcount(row(u)[k]);
    if (deg != degree_[static_cast<std::size_t>(u)]) return false;
    if (deg < 0 || deg > n_ - 1) return false;
    popcount += deg;
    for (int w = 0; w < n_; ++w)
      if (w != u && has_edge(u, w) != has_edge(w, u)) return false;
  }
  return popcount == 2 * edge_count_;
}

std::string GraphState::to_edge_list() const {
  std::ostringstream out;
  out << "n=" << n_ << '\n';
  for (int u = 0; u < n_; ++u)
    for (int w = u + 1; w < n_; ++w)
      if (has_edge(u, w)) out << u << ' ' << w << '\n';
  return out.str();
}

GraphState GraphState::from_edge_list(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("n=", 0) != 0)
    throw std::runtime_error("edge list: missing n=<n> header");
  const int n = std::stoi(header.substr(2));
  GraphState x(n);
  int u, w;
  while (in >> u >> w) x.set_edge(u < w ? EdgeId{u, w} : EdgeId{w, u}, true);
  return x;
}

}  // namespace ergm
