#include <cmath>

#include <doctest.h>

#include "ergm/hom_count.hpp"
#include "ergm/oracle.hpp"
#include "ergm/phase.hpp"
#include "ergm/scalar_model.hpp"
#include "test_helpers.hpp"

using namespace ergm;
using namespace ergm::test;

TEST_CASE("entropy values and conventions") {
  CHECK(entropy_I(0.5) == doctest::Approx(-std::log(2.0) / 2).epsilon(1e-15));
  CHECK(entropy_I(0.0) == 0.0);
  CHECK(entropy_I(1.0) == 0.0);
  // high-precision reference: -0.25020121176909393977
  CHECK(entropy_I(0.2) == doctest::Approx(-0.25020121176909394).epsilon(1e-14));
  CHECK_THROWS_AS(entropy_I(-0.1), std::domain_error);
  CHECK_THROWS_AS(entropy_I(1.1), std::domain_error);
}

TEST_CASE("entropy symmetry") {
  for (int i = 0; i <= 100; ++i) {
    const double q = i / 100.0;
    CHECK(entropy_I(q) == doctest::Approx(entropy_I(1 - q)).epsilon(1e-13));
  }
}

TEST_CASE("scalar Hamiltonian") {
  CHECK(hamiltonian_scalar(erdos_renyi_spec(1.0), 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(hamiltonian_scalar(edge_triangle_spec(0.1, 0.2), 0.5) ==
        doctest::Approx(0.075).epsilon(1e-15));
  CHECK(hamiltonian_scalar(supercritical_spec(), 0.7) == doctest::Approx(-0.2688).epsilon(1e-14));
  CHECK_THROWS_AS(hamiltonian_scalar(erdos_renyi_spec(1.0), 1.5), std::domain_error);
}

TEST_CASE("scalar Hamiltonian derivatives") {
  const auto er = erdos_renyi_spec(0.5);
  for (double q : {0.0, 0.25, 0.9, 1.0}) {
    CHECK(hamiltonian_scalar_deriv(er, q, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(hamiltonian_scalar_deriv(er, q, 2) == 0.0);
  }
  // lone triangle term: H' = 3 b q^2, H'' = 6 b q
  const auto tri = ErgmSpec::make({single_edge(), triangle()}, {0.0, 1.0});
  CHECK(hamiltonian_scalar_deriv(tri, 0.5, 1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(hamiltonian_scalar_deriv(tri, 0.5, 2) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(hamiltonian_scalar_deriv(tri, 0.5, 3), std::invalid_argument);

  // central finite differences at q = 0.37
  const auto spec = edge_wedge_triangle_spec(-0.4, 0.3, 0.2);
  const double h = 1e-6, q = 0.37;
  const double fd1 = (hamiltonian_scalar(spec, q + h) - hamiltonian_scalar(spec, q - h)) / (2 * h);
  CHECK(hamiltonian_scalar_deriv(spec, q, 1) == doctest::Approx(fd1).epsilon(1e-6));
  const double fd2 = (hamiltonian_scalar(spec, q + h) - 2 * hamiltonian_scalar(spec, q) +
                      hamiltonian_scalar(spec, q - h)) /
                     (h * h);
  CHECK(hamiltonian_scalar_deriv(spec, q, 2) == doctest::Approx(fd2).epsilon(1e-3));
}

TEST_CASE("l_beta values against high-precision references") {
  const auto spec = supercritical_spec();
  CHECK(l_beta(spec, 0.1) == doctest::Approx(0.06834148669572411975).epsilon(1e-12));
  CHECK(l_beta(spec, 0.25) == doctest::Approx(0.07210507230940417514).epsilon(1e-12));
  CHECK(l_beta(spec, 0.5) == doctest::Approx(0.04157359027997265471).epsilon(1e-12));
  CHECK(l_beta(spec, 0.75) == doctest::Approx(0.04023007230940417514).epsilon(1e-12));
  CHECK(l_beta(spec, 0.9) == doctest::Approx(0.05634148669572411975).epsilon(1e-12));

  // pure entropy: maximum at one half
  const auto flat = erdos_renyi_spec(0.0);
  CHECK(l_beta(flat, 0.5) > l_beta(flat, 0.4));
  CHECK(l_beta(flat, 0.5) > l_beta(flat, 0.6));
}

TEST_CASE("l_beta has multiple local maxima for the two-well spec") {
  const auto spec = supercritical_spec();
  int maxima = 0;
  double prev = l_beta(spec, 1e-4), cur = l_beta(spec, 2e-4);
  for (int i = 3; i * 1e-4 < 1.0; ++i) {
    const double next = l_beta(spec, i * 1e-4);
    if (cur > prev && cur >= next) ++maxima;
    prev = cur;
    cur = next;
  }
  CHECK(maxima >= 2);
}

TEST_CASE("phi_beta basics") {
  CHECK(phi_beta(erdos_renyi_spec(0.0), 0.3) == doctest::Approx(0.5).epsilon(1e-15));
  // constant in q for the single-edge model, equal to the base density
  const auto er = erdos_renyi_spec(0.4);
  const double q_base = std::exp(0.8) / (1 + std::exp(0.8));
  for (double q : {0.0, 0.2, 0.7, 1.0})
    CHECK(phi_beta(er, q) == doctest::Approx(q_base).epsilon(1e-15));
  CHECK(q_base == doctest::Approx(0.68997448112761244).epsilon(1e-15));
}

TEST_CASE("logistic is overflow-safe and monotone") {
  CHECK(logistic(800.0) == 1.0);
  CHECK(logistic(-800.0) == 0.0);
  CHECK(logistic(0.0) == 0.5);
  CHECK(logistic(3.0) > logistic(2.9));
}

TEST_CASE("phi fixed points coincide with L_beta critical points") {
  const auto spec = supercritical_spec();
  const auto report = find_stationary_points(spec);
  for (const auto& sp : report.stationary_points) {
    CHECK(std::abs(phi_beta(spec, sp.q) - sp.q) < 1e-8);
    // attracting iff strictly concave
    CHECK(sp.attracting == (phi_beta_deriv(spec, sp.q) < 1));
  }
}

TEST_CASE("L_beta derivative identity against finite differences") {
  const auto spec = edge_wedge_triangle_spec(-0.7, 0.4, 0.25);
  for (double q : {0.1, 0.37, 0.62, 0.9}) {
    const double h = 1e-6;
    const double fd = (l_beta(spec, q + h) - l_beta(spec, q - h)) / (2 * h);
    CHECK(l_beta_deriv(spec, q) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("full Hamiltonian") {
  const auto spec = edge_triangle_spec(0.3, 0.2);
  SUBCASE("empty graph gives zero") {
    GraphState x(6);
    CHECK(hamiltonian_full(spec, x) == 0.0);
  }
  SUBCASE("complete graph triangle density") {
    const int n = 7;
    const auto x = GraphState::complete(n);
    const auto tri_only = ErgmSpec::make({single_edge(), triangle()}, {0.0, 1.0});
    const double t = static_cast<double>(n) * (n - 1) * (n - 2) / std::pow(n, 3);
    CHECK(hamiltonian_full(tri_only, x) == doctest::Approx(t).epsilon(1e-14));
  }
  SUBCASE("random graph matches naive enumeration") {
    CounterRng rng(7);
    const auto x = GraphState::erdos_renyi(6, 0.5, rng);
    double expected = 0;
    for (int j = 0; j < spec.motif_count(); ++j)
      expected += spec.beta[static_cast<std::size_t>(j)] *
                  static_cast<double>(count_hom_naive(x, spec.motifs[static_cast<std::size_t>(j)])) /
                  std::pow(6.0, spec.motifs[static_cast<std::size_t>(j)].vertex_count);
    CHECK(hamiltonian_full(spec, x) == doctest::Approx(expected).epsilon(1e-13));
  }
  SUBCASE("invariant under vertex relabeling") {
    CounterRng rng(11);
    const auto x = GraphState::erdos_renyi(8, 0.4, rng);
    for (int trial = 0; trial < 5; ++trial) {
      const auto perm = random_permutation(8, rng);
      CHECK(hamiltonian_full(spec, x.permuted(perm)) ==
            doctest::Approx(hamiltonian_full(spec, x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(ErgmSpec::make({triangle()}, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(ErgmSpec::make({single_edge(), triangle()}, {0.1, -0.2}), std::invalid_argument);
  CHECK_NOTHROW(ErgmSpec::make({single_edge(), triangle()}, {-5.0, 0.0}));
  CHECK(edge_wedge_triangle_spec(0, 0.1, 0).all_forests() == false);
  CHECK(ErgmSpec::make({single_edge(), wedge()}, {0.0, 0.1}).all_forests() == true);
}

TEST_CASE("motif validation") {
  CHECK_THROWS_AS(MotifGraph::from_edges(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(MotifGraph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(MotifGraph::from_edges(2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(MotifGraph::from_edges(2, {}), std::invalid_argument);
  const auto w = wedge();
  CHECK(w.is_forest);
  CHECK(!triangle().is_forest);
  int degree_sum = 0;
  for (int d : w.degree) degree_sum += d;
  CHECK(degree_sum == 2 * w.edge_count());
}
