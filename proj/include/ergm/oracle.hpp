#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ergm/dynamics.hpp"
#include "ergm/graph_state.hpp"
#include "ergm/motif.hpp"

namespace ergm {

// Exact law over every graph on n vertices (indexed by edge bitmask over the
// linear edge order). Weights are kept as logs; normalization is log-sum-exp.
struct ExactDistribution {
  int n = 0;
  ErgmSpec spec;
  std::optional<WellSpec> well;
  std::vector<double> log_weight;  // n^2 H(x), or -inf outside the well mask
  double log_z = 0;

  std::uint64_t state_count() const { return std::uint64_t{1} << pair_count(n); }
  bool in_support(std::uint64_t mask) const;
  double probability(std::uint64_t mask) const;
};

// Enumerates every bitmask graph and computes its Hamiltonian with the naive
// n^v homomorphism loop (independent of the fast counting path). Prints a
// memory estimate to stderr before enumerating when n >= 7.
ExactDistribution build_exact(const ErgmSpec& spec, int n,
                              std::optional<WellSpec> well = std::nullopt, int workers = 1);

// Exact mean and variance of a per-graph observable.
std::pair<double, double> exact_moments(const ExactDistribution& dist,
                                        const std::function<double(const GraphState&)>& f);

double exact_marginal(const ExactDistribution& dist, EdgeId e);

// Max over adjacent state pairs of |pi(x) P(x,x') - pi(x') P(x',x)| with P
// from the Glauber flip probabilities (band rejections included when the
// distribution is well-masked).
double exact_transition_violation(const ExactDistribution& dist);

// Total variation distance between an empirical bitmask histogram and pi.
double tv_to_exact(const ExactDistribution& dist, std::span<const std::uint64_t> bitmasks);

// Naive reference counters: direct enumeration over all n^v maps.
std::int64_t count_hom_naive(const GraphState& x, const MotifGraph& g);
std::int64_t count_hom_rooted_naive(const GraphState& x, const MotifGraph& g, int rho, int v);
std::int64_t count_hom_at_vertex_naive(const GraphState& x, const MotifGraph& g, int v);
std::int64_t count_hom_injective_naive(const GraphState& x, const MotifGraph& g);
std::int64_t count_hom_rooted_injective_naive(const GraphState& x, const MotifGraph& g, int rho,
                                              int v);

}  // namespace ergm
