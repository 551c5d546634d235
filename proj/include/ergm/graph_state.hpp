#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ergm/rng.hpp"

namespace ergm {

// Unordered vertex pair with u < w.
struct EdgeId {
  int u = 0;
  int w = 1;
  friend bool operator==(EdgeId a, EdgeId b) { return a.u == b.u && a.w == b.w; }
  bool contains(int v) const { return u == v || w == v; }
};

inline long long pair_count(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

// Linear index of {u, w}, row-major over u < w; stable across a run.
long long edge_index(int n, EdgeId e);

// Precomputed index <-> pair translation for one fixed n.
class EdgeIndexer {
 public:
  explicit EdgeIndexer(int n);
  int n() const { return n_; }
  long long count() const { return static_cast<long long>(edges_.size()); }
  EdgeId edge(long long index) const;
  long long index(EdgeId e) const { return edge_index(n_, e); }
  std::span<const EdgeId> edges() const { return edges_; }

 private:
  int n_;
  std::vector<EdgeId> edges_;
};

// Simple graph on n labeled vertices. Adjacency is kept as n rows of n-bit
// sets along with a degree table and a cached edge count; flips maintain all
// three in O(1).
class GraphState {
 public:
  explicit GraphState(int n);

  static GraphState complete(int n);
  static GraphState erdos_renyi(int n, double p, CounterRng& rng);
  // Bit i of `mask` is the presence of the edge with linear index i
  // (requires C(n,2) <= 64).
  static GraphState from_bitmask(int n, std::uint64_t mask);

  int n() const { return n_; }
  int words() const { return words_; }

  bool has_edge(int u, int w) const {
    return (adj_[static_cast<std::size_t>(u) * static_cast<std::size_t>(words_) +
                 static_cast<std::size_t>(w >> 6)] >>
            (w & 63)) &
           1;
  }
  bool has_edge(EdgeId e) const { return has_edge(e.u, e.w); }

  void flip(EdgeId e);
  void set_edge(EdgeId e, bool present);

  long long edge_count() const { return edge_count_; }
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
  double edge_density() const;

  const std::uint64_t* row(int u) const {
    return adj_.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(words_);
  }

  std::uint64_t to_bitmask() const;
  GraphState permuted(std::span<const int> perm) const;

  friend bool operator==(const GraphState& a, const GraphState& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

  // Recounts everything from the adjacency bits; used by tests after flips.
  bool check_invariants() const;

  // Edge-list text: header "n=<n>" then one "u w" pair per line.
  std::string to_edge_list() const;
  static GraphState from_edge_list(std::istream& in);

 private:
  void validate_edge(EdgeId e) const;

  int n_;
  int words_;
  long long edge_count_ = 0;
  std::vector<int> degree_;
  std::vector<std::uint64_t> adj_;
};

}  // namespace ergm
