#include <cmath>
#include <sstream>

#include <doctest.h>

#include "ergm/hom_count.hpp"
#include "ergm/oracle.hpp"
#include "ergm/stats.hpp"
#include "test_helpers.hpp"

using namespace ergm;
using namespace ergm::test;

TEST_CASE("edge index bijectivity") {
  for (int n : {2, 3, 7, 40}) {
    const EdgeIndexer idx(n);
    CHECK(idx.count() == pair_count(n));
    for (long long i = 0; i < idx.count(); ++i) CHECK(idx.index(idx.edge(i)) == i);
  }
}

TEST_CASE("flip maintains counters") {
  GraphState x(4);
  x.flip({0, 1});
  CHECK(x.edge_count() == 1);
  CHECK(x.degree(0) == 1);
  CHECK(x.degree(1) == 1);
  CHECK(x.degree(2) == 0);

  SUBCASE("double flip is an involution") {
    const GraphState before = x;
    x.flip({1, 3});
    x.flip({1, 3});
    CHECK(x == before);
  }
  SUBCASE("invalid edges throw") {
    CHECK_THROWS_AS(x.flip({2, 2}), std::out_of_range);
    CHECK_THROWS_AS(x.flip({0, 7}), std::out_of_range);
  }
}

TEST_CASE("random flips keep the cached counts exact") {
  GraphState x(32);
  CounterRng rng(3);
  for (int i = 0; i < 1000; ++i) x.flip(random_edge(32, rng));
  CHECK(x.check_invariants());
}

TEST_CASE("edge-list round trip") {
  CounterRng rng(5);
  const auto x = GraphState::erdos_renyi(9, 0.4, rng);
  std::istringstream in(x.to_edge_list());
  CHECK(GraphState::from_edge_list(in) == x);
}

TEST_CASE("single edge homomorphisms count twice the edges") {
  CounterRng rng(17);
  const auto e = single_edge();
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = GraphState::erdos_renyi(10, 0.5, rng);
    CHECK(count_hom(x, e) == 2 * x.edge_count());
  }
}

TEST_CASE("triangle homomorphisms in a complete graph") {
  for (int n : {3, 5, 8}) {
    const auto x = GraphState::complete(n);
    CHECK(count_hom(x, triangle()) == static_cast<std::int64_t>(n) * (n - 1) * (n - 2));
  }
}

TEST_CASE("fast counts match naive enumeration on random graphs") {
  CounterRng rng(23);
  const auto catalog = connected_graph_catalog(4);
  for (int trial = 0; trial < 4; ++trial) {
    const auto x = GraphState::erdos_renyi(7, 0.45, rng);
    for (const auto& g : catalog) {
      CHECK(count_hom(x, g) == count_hom_naive(x, g));
      for (int rho = 0; rho < g.vertex_count; ++rho)
        for (int v = 0; v < 7; ++v)
          CHECK(count_hom_rooted(x, g, rho, v) == count_hom_rooted_naive(x, g, rho, v));
      for (int v = 0; v < 7; ++v)
        CHECK(count_hom_at_vertex(x, g, v) == count_hom_at_vertex_naive(x, g, v));
    }
  }
}

TEST_CASE("delta identity exhaustively at n = 5") {
  const int n = 5;
  const EdgeIndexer idx(n);
  const auto motifs = {single_edge(), wedge(), triangle(), path_graph(4), cycle_graph(4)};
  for (std::uint64_t mask = 0; mask < (1u << 10); mask += 7) {  // stride keeps it quick
    const auto x = GraphState::from_bitmask(n, mask);
    for (const auto& g : motifs) {
      for (long long k = 0; k < idx.count(); ++k) {
        const EdgeId e = idx.edge(k);
        GraphState plus = x, minus = x;
        plus.set_edge(e, true);
        minus.set_edge(e, false);
        CHECK(count_hom_delta(x, g, e) == count_hom(plus, g) - count_hom(minus, g));
      }
    }
  }
}

TEST_CASE("single-edge delta is always two") {
  CounterRng rng(29);
  const auto x = GraphState::erdos_renyi(12, 0.3, rng);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(count_hom_delta(x, single_edge(), random_edge(12, rng)) == 2);
}

TEST_CASE("triangle delta counts common neighbors six ways") {
  CounterRng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = GraphState::erdos_renyi(16, 0.4, rng);
    const EdgeId e = random_edge(16, rng);
    std::int64_t common = 0;
    for (int v = 0; v < 16; ++v)
      if (v != e.u && v != e.w && x.has_edge(std::min(v, e.u), std::max(v, e.u)) &&
          x.has_edge(std::min(v, e.w), std::max(v, e.w)))
        ++common;
    CHECK(count_hom_delta(x, triangle(), e) == 6 * common);
  }
}

TEST_CASE("delta scale on sparse-ish random graphs") {
  // mean of N_G(x, e) over G(n,p) draws should be near 2 e p^{e-1} n^{v-2}
  const int n = 64;
  const double p = 0.4;
  const int draws = 200;
  CounterRng rng(37);
  for (const auto& g : {wedge(), triangle()}) {
    std::vector<double> values;
    for (int i = 0; i < draws; ++i) {
      const auto x = GraphState::erdos_renyi(n, p, rng);
      values.push_back(static_cast<double>(count_hom_delta(x, g, random_edge(n, rng))));
    }
    const double expected =
        2.0 * g.edge_count() * std::pow(p, g.edge_count() - 1) * std::pow(n, g.vertex_count - 2);
    const double se = sample_sd(values) / std::sqrt(static_cast<double>(draws));
    CHECK(std::abs(sample_mean(values) - expected) < 3 * se + 0.02 * expected);
  }
}

TEST_CASE("rooted sums partition the total count") {
  CounterRng rng(41);
  const auto x = GraphState::erdos_renyi(9, 0.5, rng);
  for (const auto& g : {wedge(), triangle(), path_graph(4)}) {
    for (int rho = 0; rho < g.vertex_count; ++rho) {
      std::int64_t total = 0;
      for (int v = 0; v < 9; ++v) total += count_hom_rooted(x, g, rho, v);
      CHECK(total == count_hom(x, g));
    }
  }
}

TEST_CASE("vertex-hom counts") {
  SUBCASE("empty graph") {
    GraphState x(6);
    CHECK(count_hom_at_vertex(x, triangle(), 2) == 0);
  }
  SUBCASE("single edge counts orientations of incident edges") {
    CounterRng rng(43);
    const auto x = GraphState::erdos_renyi(8, 0.5, rng);
    for (int v = 0; v < 8; ++v) CHECK(count_hom_at_vertex(x, single_edge(), v) == 2 * x.degree(v));
  }
  SUBCASE("rooted sum dominates; injective versions agree exactly") {
    CounterRng rng(47);
    const auto x = GraphState::erdos_renyi(7, 0.5, rng);
    for (const auto& g : {wedge(), triangle(), star_graph(3)}) {
      for (int v = 0; v < 7; ++v) {
        std::int64_t rooted_sum = 0, rooted_inj_sum = 0;
        for (int rho = 0; rho < g.vertex_count; ++rho) {
          rooted_sum += count_hom_rooted(x, g, rho, v);
          rooted_inj_sum += count_hom_rooted_injective_naive(x, g, rho, v);
        }
        const std::int64_t at_v = count_hom_at_vertex(x, g, v);
        CHECK(rooted_sum >= at_v);  // non-injective maps may hit v at several motif vertices

        // an injective hom whose image contains v hits it at exactly one motif
        // vertex; isolating v removes exactly the image-containing homs
        GraphState isolated = x;
        for (int u = 0; u < 7; ++u)
          if (u != v) isolated.set_edge(u < v ? EdgeId{u, v} : EdgeId{v, u}, false);
        const std::int64_t inj_at_v =
            count_hom_injective_naive(x, g) - count_hom_injective_naive(isolated, g);
        CHECK(rooted_inj_sum == inj_at_v);
      }
    }
  }
}

TEST_CASE("monotonicity: adding an edge never decreases counts") {
  CounterRng rng(53);
  auto x = GraphState::erdos_renyi(8, 0.3, rng);
  const auto motifs = {single_edge(), wedge(), triangle(), cycle_graph(4)};
  for (int step = 0; step < 15; ++step) {
    const EdgeId e = random_edge(8, rng);
    if (x.has_edge(e)) continue;
    std::vector<std::int64_t> before;
    for (const auto& g : motifs) before.push_back(count_hom(x, g));
    x.flip(e);
    std::size_t i = 0;
    for (const auto& g : motifs) CHECK(count_hom(x, g) >= before[i++]);
  }
}

TEST_CASE("relabeling invariance of counts") {
  CounterRng rng(59);
  const auto x = GraphState::erdos_renyi(9, 0.5, rng);
  for (const auto& g : {triangle(), path_graph(4), star_graph(3)}) {
    const auto reference = count_hom(x, g);
    for (int trial = 0; trial < 4; ++trial)
      CHECK(count_hom(x.permuted(random_permutation(9, rng)), g) == reference);
  }
}

TEST_CASE("r statistic") {
  SUBCASE("complete graph, triangle") {
    for (int n : {6, 12}) {
      const auto r = r_statistic(GraphState::complete(n), triangle(), {0, 1});
      CHECK(!r.degenerate);
      CHECK(r.value == doctest::Approx(std::sqrt((n - 2.0) / n)).epsilon(1e-12));
    }
  }
  SUBCASE("empty graph") {
    GraphState x(10);
    CHECK(r_statistic(x, triangle(), {0, 1}).value == 0.0);
  }
  SUBCASE("single-edge motif is degenerate") {
    GraphState x(5);
    const auto r = r_statistic(x, single_edge(), {0, 1});
    CHECK(r.degenerate);
    CHECK(r.value == 1.0);
  }
  SUBCASE("concentrates near p on dense random graphs") {
    const int n = 128;
    CounterRng rng(61);
    std::vector<double> values;
    for (int i = 0; i < 30; ++i) {
      const auto x = GraphState::erdos_renyi(n, 0.5, rng);
      values.push_back(r_statistic(x, triangle(), random_edge(n, rng)).value);
    }
    const double se = sample_sd(values) / std::sqrt(30.0);
    CHECK(std::abs(sample_mean(values) - 0.5) < 3 * se + 0.01);
  }
}

TEST_CASE("edge-count identity under churn") {
  CounterRng rng(67);
  GraphState x(16);
  const auto e0 = single_edge();
  for (int i = 0; i < 10000; ++i) {
    x.flip(random_edge(16, rng));
    if (i % 500 == 0) CHECK(count_hom(x, e0) == 2 * x.edge_count());
  }
  CHECK(count_hom(x, e0) == 2 * x.edge_count());
}
