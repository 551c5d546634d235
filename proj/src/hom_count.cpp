#include "ergm/hom_count.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ergm {

namespace {

constexpr int kMaxMotif = 8;
constexpr int kMaxWords = 64;  // n <= 4096

// Backtracking counter over motif vertices. Candidate sets are computed by
// intersecting adjacency bitsets of already-placed motif neighbors; the last
// level is resolved by popcount. Supports a virtual edge treated as present,
// an excluded graph vertex, pinned assignments, and conditional forbidden
// pairs of the form NOT(phi(ma) = va AND phi(mb) = vb).
class HomSearch {
 public:
  HomSearch(const GraphState& x, const MotifGraph& g)
      : x_(x), g_(g), n_(x.n()), words_(x.words()) {
    assignment_.fill(-1);
  }

  void set_virtual_edge(EdgeId e) {
    virtual_u_ = e.u;
    virtual_w_ = e.w;
    for (int k = 0; k < words_; ++k) {
      patched_u_[static_cast<std::size_t>(k)] = x_.row(e.u)[k];
      patched_w_[static_cast<std::size_t>(k)] = x_.row(e.w)[k];
    }
    patched_u_[static_cast<std::size_t>(e.w >> 6)] |= std::uint64_t{1} << (e.w & 63);
    patched_w_[static_cast<std::size_t>(e.u >> 6)] |= std::uint64_t{1} << (e.u & 63);
  }

  void set_excluded(int v) { excluded_ = v; }

  // Returns false when the pin is inconsistent with earlier pins.
  bool pin(int motif_vertex, int graph_vertex) {
    for (const auto& [a, b] : g_.edges) {
      int other = -1;
      if (a == motif_vertex) other = b;
      if (b == motif_vertex) other = a;
      if (other < 0) continue;
      const int img = assignment_[static_cast<std::size_t>(other)];
      if (img >= 0 && !adjacent(graph_vertex, img)) return false;
    }
    assignment_[static_cast<std::size_t>(motif_vertex)] = graph_vertex;
    return true;
  }

  void forbid(int ma, int va, int mb, int vb) {
    forbidden_[static_cast<std::size_t>(forbidden_count_++)] = {ma, va, mb, vb};
  }

  std::int64_t count() {
    for (int k = 0; k < forbidden_count_; ++k) {
      const auto& f = forbidden_[static_cast<std::size_t>(k)];
      if (assignment_[static_cast<std::size_t>(f.ma)] == f.va &&
          assignment_[static_cast<std::size_t>(f.mb)] == f.vb)
        return 0;
    }
    build_order();
    if (levels_ == 0) return 1;
    return descend(0);
  }

 private:
  struct Forbidden {
    int ma, va, mb, vb;
  };

  bool adjacent(int a, int b) const {
    const std::uint64_t* r = row(a);
    return (r[static_cast<std::size_t>(b >> 6)] >> (b & 63)) & 1;
  }

  const std::uint64_t* row(int u) const {
    if (u == virtual_u_) return patched_u_.data();
    if (u == virtual_w_) return patched_w_.data();
    return x_.row(u);
  }

  // Connectivity-first ordering: each next motif vertex is adjacent to an
  // already-placed one whenever possible.
  void build_order() {
    levels_ = 0;
    std::array<bool, kMaxMotif> placed{};
    for (int m = 0; m < g_.vertex_count; ++m)
      placed[static_cast<std::size_t>(m)] = assignment_[static_cast<std::size_t>(m)] >= 0;
    for (;;) {
      int best = -1, best_links = -1;
      for (int m = 0; m < g_.vertex_count; ++m) {
        if (placed[static_cast<std::size_t>(m)]) continue;
        int links = 0;
        for (const auto& [a, b] : g_.edges) {
          if (a == m && placed[static_cast<std::size_t>(b)]) ++links;
          if (b == m && placed[static_cast<std::size_t>(a)]) ++links;
        }
        if (links > best_links) {
          best = m;
          best_links = links;
        }
      }
      if (best < 0) break;
      order_[static_cast<std::size_t>(levels_++)] = best;
      placed[static_cast<std::size_t>(best)] = true;
    }
  }

  void candidates(int level, std::uint64_t* cand) const {
    const int m = order_[static_cast<std::size_t>(level)];
    bool have = false;
    for (const auto& [a, b] : g_.edges) {
      int other = -1;
      if (a == m) other = b;
      if (b == m) other = a;
      if (other < 0) continue;
      const int img = assignment_[static_cast<std::size_t>(other)];
      if (img < 0) continue;
      const std::uint64_t* r = row(img);
      if (!have) {
        for (int k = 0; k < words_; ++k) cand[k] = r[k];
        have = true;
      } else {
        for (int k = 0; k < words_; ++k) cand[k] &= r[k];
      }
    }
    if (!have) {
      for (int k = 0; k < words_; ++k) cand[k] = ~std::uint64_t{0};
      if (n_ & 63) cand[words_ - 1] = (std::uint64_t{1} << (n_ & 63)) - 1;
    }
    if (excluded_ >= 0) cand[excluded_ >> 6] &= ~(std::uint64_t{1} << (excluded_ & 63));
    for (int k = 0; k < forbidden_count_; ++k) {
      const auto& f = forbidden_[static_cast<std::size_t>(k)];
      if (f.ma == m && assignment_[static_cast<std::size_t>(f.mb)] == f.vb)
        cand[f.va >> 6] &= ~(std::uint64_t{1} << (f.va & 63));
      if (f.mb == m && assignment_[static_cast<std::size_t>(f.ma)] == f.va)
        cand[f.vb >> 6] &= ~(std::uint64_t{1} << (f.vb & 63));
    }
  }

  std::int64_t descend(int level) {
    std::uint64_t* cand = scratch_.data() + static_cast<std::size_t>(level) * kMaxWords;
    candidates(level, cand);
    if (level == levels_ - 1) {
      std::int64_t c = 0;
      for (int k = 0; k < words_; ++k) c += std::popcount(cand[k]);
      return c;
    }
    const int m = order_[static_cast<std::size_t>(level)];
    std::int64_t total = 0;
    for (int k = 0; k < words_; ++k) {
      std::uint64_t bits = cand[k];
      while (bits) {
        const int v = (k << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        assignment_[static_cast<std::size_t>(m)] = v;
        total += descend(level + 1);
      }
    }
    assignment_[static_cast<std::size_t>(m)] = -1;
    return total;
  }

  const GraphState& x_;
  const MotifGraph& g_;
  int n_;
  int words_;
  int levels_ = 0;
  int excluded_ = -1;
  int virtual_u_ = -1, virtual_w_ = -1;
  int forbidden_count_ = 0;
  // scratch buffers are written before every read, so they stay uninitialized
  std::array<int, kMaxMotif> assignment_;
  std::array<int, kMaxMotif> order_;
  std::array<Forbidden, 2 * kMaxMotif * kMaxMotif> forbidden_;
  std::array<std::uint64_t, kMaxWords> patched_u_;
  std::array<std::uint64_t, kMaxWords> patched_w_;
  std::array<std::uint64_t, static_cast<std::size_t>(kMaxMotif) * kMaxWords> scratch_;
};

void validate_edge_for(const GraphState& x, EdgeId e) {
  if (e.u < 0 || e.w >= x.n() || e.u >= e.w) throw std::out_of_range("invalid edge id");
}

}  // namespace

std::int64_t count_hom(const GraphState& x, const MotifGraph& g) {
  HomSearch s(x, g);
  return s.count();
}

std::int64_t count_hom_delta(const GraphState& x, const MotifGraph& g, EdgeId e) {
  validate_edge_for(x, e);
  // Classify each homomorphism using e by the first ordered motif pair that
  // lands on (u, w): pair k is pinned there while all earlier pairs are
  // forbidden from it, so every map is counted exactly once.
  const int pairs = 2 * g.edge_count();
  std::int64_t total = 0;
  for (int k = 0; k < pairs; ++k) {
    const auto& me = g.edges[static_cast<std::size_t>(k / 2)];
    const int a = (k % 2 == 0) ? me.first : me.second;
    const int b = (k % 2 == 0) ? me.second : me.first;
    HomSearch s(x, g);
    s.set_virtual_edge(e);
    if (!s.pin(a, e.u) || !s.pin(b, e.w)) continue;
    for (int kp = 0; kp < k; ++kp) {
      const auto& pe = g.edges[static_cast<std::size_t>(kp / 2)];
      const int pa = (kp % 2 == 0) ? pe.first : pe.second;
      const int pb = (kp % 2 == 0) ? pe.second : pe.first;
      s.forbid(pa, e.u, pb, e.w);
    }
    total += s.count();
  }
  return total;
}

std::int64_t count_hom_rooted(const GraphState& x, const MotifGraph& g, int rho, int v) {
  if (rho < 0 || rho >= g.vertex_count) throw std::out_of_range("count_hom_rooted: bad motif vertex");
  if (v < 0 || v >= x.n()) throw std::out_of_range("count_hom_rooted: bad graph vertex");
  HomSearch s(x, g);
  if (!s.pin(rho, v)) return 0;
  return s.count();
}

std::int64_t count_hom_at_vertex(const GraphState& x, const MotifGraph& g, int v) {
  if (v < 0 || v >= x.n()) throw std::out_of_range("count_hom_at_vertex: bad graph vertex");
  HomSearch avoid(x, g);
  avoid.set_excluded(v);
  return count_hom(x, g) - avoid.count();
}

RStatistic r_statistic(const GraphState& x, const MotifGraph& g, EdgeId e) {
  validate_edge_for(x, e);
  if (g.edge_count() < 2) return {1.0, true};
  const double delta = static_cast<double>(count_hom_delta(x, g, e));
  const double scale = 2.0 * g.edge_count() * std::pow(x.n(), g.vertex_count - 2);
  return {std::pow(delta / scale, 1.0 / (g.edge_count() - 1)), false};
}

double hamiltonian_full(const ErgmSpec& spec, const GraphState& x) {
  double h = 0;
  for (int j = 0; j < spec.motif_count(); ++j) {
    const auto& g = spec.motifs[static_cast<std::size_t>(j)];
    h += spec.beta[static_cast<std::size_t>(j)] * static_cast<double>(count_hom(x, g)) /
         std::pow(x.n(), g.vertex_count);
  }
  return h;
}

}  // namespace ergm
