#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "ergm/observables.hpp"
#include "ergm/oracle.hpp"
#include "ergm/stats.hpp"
#include "test_helpers.hpp"

using namespace ergm;
using namespace ergm::test;

TEST_CASE("global Hajek residual") {
  SUBCASE("single-edge motif projects exactly") {
    CounterRng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = GraphState::erdos_renyi(10, 0.5, rng);
      CHECK(hajek_residual_global(x, single_edge(), 0.37) == 0.0);
    }
  }
  SUBCASE("empty graph, triangle") {
    GraphState x(8);
    CHECK(hajek_residual_global(x, triangle(), 0.5) == 0.0);
  }
  SUBCASE("random instance matches the naive-count formula") {
    CounterRng rng(5);
    const auto x = GraphState::erdos_renyi(6, 0.5, rng);
    const double p = 0.5;
    const double expected = static_cast<double>(count_hom_naive(x, triangle())) -
                            2.0 * 3 * p * p * 6 * static_cast<double>(x.edge_count());
    CHECK(hajek_residual_global(x, triangle(), p) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("rooted Hajek residual") {
  SUBCASE("single-edge motif projects exactly") {
    CounterRng rng(7);
    const auto x = GraphState::erdos_renyi(9, 0.4, rng);
    for (int v = 0; v < 9; ++v)
      for (int rho = 0; rho < 2; ++rho)
        CHECK(hajek_residual_rooted(x, single_edge(), rho, v, 0.29) == 0.0);
  }
  SUBCASE("empty graph") {
    GraphState x(7);
    CHECK(hajek_residual_rooted(x, triangle(), 0, 3, 0.5) == 0.0);
  }
  SUBCASE("random instance against naive counts") {
    CounterRng rng(11);
    const auto x = GraphState::erdos_renyi(6, 0.5, rng);
    const double p = 0.45;
    const auto g = wedge();
    for (int v = 0; v < 6; ++v) {
      const double expected = static_cast<double>(count_hom_rooted_naive(x, g, 1, v)) -
                              g.degree[1] * std::pow(p, g.edge_count() - 1) * 6.0 *
                                  static_cast<double>(x.degree(v));
      CHECK(hajek_residual_rooted(x, g, 1, v, p) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("standardize") {
  SUBCASE("constant column flags degeneracy and maps to zeros") {
    std::vector<double> xs(50, 3.25);
    bool degenerate = false;
    const auto z = standardize(xs, 2.0, &degenerate);
    CHECK(degenerate);
    for (double v : z) CHECK(v == 0.0);
  }
  SUBCASE("iid draws standardized by the true variance have unit variance") {
    CounterRng rng(13);
    std::vector<double> xs;
    for (int i = 0; i < 20000; ++i) {
      int s = 0;  // Binomial(45, 1/2)
      for (int k = 0; k < 45; ++k) s += rng.bernoulli(0.5);
      xs.push_back(s);
    }
    const auto z = standardize(xs, 45.0 * 0.25);
    CHECK(sample_mean(z) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sample_variance(z) == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("rejects bad inputs") {
    std::vector<double> xs{1.0, 2.0};
    CHECK_THROWS_AS(standardize(xs, 0.0), std::domain_error);
    CHECK_THROWS_AS(standardize({}, 1.0), std::invalid_argument);
  }
}

TEST_CASE("normal quantile round trip") {
  for (double u : {1e-9, 1e-4, 0.025, 0.31, 0.5, 0.77, 0.975, 1 - 1e-6}) {
    CHECK(normal_cdf(normal_quantile(u)) == doctest::Approx(u).epsilon(1e-11));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
}

TEST_CASE("Kolmogorov distance") {
  SUBCASE("single point at zero") {
    std::vector<double> z{0.0};
    CHECK(kolmogorov_distance_to_normal(z) == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("all mass far in the tail") {
    std::vector<double> z(10, 10.0);
    CHECK(kolmogorov_distance_to_normal(z) > 1 - 1e-12);
  }
  SUBCASE("large normal sample lands at the DKW scale") {
    CounterRng rng(17);
    std::vector<double> z;
    for (int i = 0; i < 1000000; ++i) {
      // Box-Muller from counter streams
      const double u1 = rng.uniform01(), u2 = rng.uniform01();
      z.push_back(std::sqrt(-2 * std::log(u1 + 1e-300)) * std::cos(2 * M_PI * u2));
    }
    CHECK(kolmogorov_distance_to_normal(z) < 2e-3);
  }
  SUBCASE("permutation invariance") {
    CounterRng rng(19);
    std::vector<double> z;
    for (int i = 0; i < 500; ++i) z.push_back(normal_quantile(rng.uniform01()));
    const double before = kolmogorov_distance_to_normal(z);
    std::reverse(z.begin(), z.end());
    CHECK(kolmogorov_distance_to_normal(z) == before);
  }
}

TEST_CASE("Wasserstein distance") {
  SUBCASE("point mass at zero costs the mean absolute normal") {
    std::vector<double> z{0.0};
    CHECK(wasserstein_distance_to_normal(z) ==
          doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-12));
  }
  SUBCASE("exact quantile construction, frozen reference at m = 100") {
    std::vector<double> z;
    for (int i = 0; i < 100; ++i) z.push_back(normal_quantile((i + 0.5) / 100));
    // high-precision reference: 0.0161357577592
    CHECK(wasserstein_distance_to_normal(z) == doctest::Approx(0.0161357577592).epsilon(1e-8));
  }
  SUBCASE("quantile construction converges") {
    std::vector<double> z;
    const int m = 10000;
    for (int i = 0; i < m; ++i) z.push_back(normal_quantile((i + 0.5) / m));
    CHECK(wasserstein_distance_to_normal(z) < 0.01);
    CHECK(wasserstein_distance_to_normal(z) < 5e-4);
  }
  SUBCASE("translation recovers the shift") {
    std::vector<double> z;
    const int m = 10000;
    const double shift = 0.35;
    for (int i = 0; i < m; ++i) z.push_back(normal_quantile((i + 0.5) / m) + shift);
    CHECK(wasserstein_distance_to_normal(z) == doctest::Approx(shift).epsilon(0.01));
  }
  SUBCASE("nonnegative and permutation invariant") {
    CounterRng rng(23);
    std::vector<double> z;
    for (int i = 0; i < 400; ++i) z.push_back(normal_quantile(rng.uniform01()) * 1.2);
    const double before = wasserstein_distance_to_normal(z);
    CHECK(before >= 0);
    std::reverse(z.begin(), z.end());
    CHECK(wasserstein_distance_to_normal(z) == before);
  }
}

TEST_CASE("observable evaluation and validation") {
  CounterRng rng(29);
  const auto x = GraphState::erdos_renyi(8, 0.5, rng);
  CHECK(Observable::edge_count().evaluate(x) == static_cast<double>(x.edge_count()));
  CHECK(Observable::degree(3).evaluate(x) == static_cast<double>(x.degree(3)));
  CHECK(Observable::hom_count(triangle()).evaluate(x) ==
        static_cast<double>(count_hom(x, triangle())));
  CHECK_THROWS_AS(Observable::degree(9).validate(8), std::invalid_argument);
  CHECK_THROWS_AS(Observable::rooted_hom_count(triangle(), 5, 0).validate(8),
                  std::invalid_argument);
  CHECK_NOTHROW(Observable::hajek_global(triangle(), 0.4).validate(8));
  CHECK_THROWS_AS(Observable::hajek_global(triangle(), 1.0).validate(8), std::invalid_argument);
}
