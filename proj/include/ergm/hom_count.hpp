#pragma once

#include <cstdint>

#include "ergm/graph_state.hpp"
#include "ergm/motif.hpp"

namespace ergm {

// Number of maps V(G) -> [n] sending every motif edge to an edge of x.
// Maps need not be injective and non-edges are unconstrained.
std::int64_t count_hom(const GraphState& x, const MotifGraph& g);

// Number of homomorphisms of G into x^{+e} whose edge image contains e.
// Equals count_hom(x^{+e}) - count_hom(x^{-e}) and is defined regardless of
// whether e is present in x.
std::int64_t count_hom_delta(const GraphState& x, const MotifGraph& g, EdgeId e);

// Homomorphisms mapping motif vertex rho to graph vertex v.
std::int64_t count_hom_rooted(const GraphState& x, const MotifGraph& g, int rho, int v);

// Homomorphisms whose image contains v.
std::int64_t count_hom_at_vertex(const GraphState& x, const MotifGraph& g, int v);

struct RStatistic {
  double value = 0;
  bool degenerate = false;  // set for single-edge motifs, where the exponent is undefined
};

// (N_G(x,e) / (2 e n^{v-2}))^{1/(e-1)}; converges to the density p on G(n,p).
RStatistic r_statistic(const GraphState& x, const MotifGraph& g, EdgeId e);

// H(x) = sum_j beta_j N_{G_j}(x) / n^{v_j}.
double hamiltonian_full(const ErgmSpec& spec, const GraphState& x);

}  // namespace ergm
