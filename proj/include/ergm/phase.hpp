#pragma once

#include <string>
#include <vector>

#include "ergm/motif.hpp"

namespace ergm {

enum class Regime { Dobrushin, Subcritical, Supercritical, Critical };

std::string regime_name(Regime r);

struct StationaryPoint {
  double q = 0;
  double l_value = 0;
  double l_second = 0;
  bool attracting = false;  // L'' < 0, equivalently phi_beta'(q) < 1
};

struct PhaseReport {
  std::vector<StationaryPoint> stationary_points;  // all critical points of L_beta in (0,1)
  std::vector<StationaryPoint> local_maxima;
  std::vector<double> m_beta;  // global maximizer set (ties within value tolerance)
  std::vector<double> u_beta;  // strictly concave subset of m_beta
  Regime regime = Regime::Critical;
  double p_star = 0;             // chosen density: best maximizer, smallest q on ties
  double h_second_at_one = 0;    // H''(1), Dobrushin condition H''(1) < 2
  double solver_tol = 0;
};

// Scans L_beta' for sign changes on a uniform grid over (delta, 1-delta) and
// refines each root by bisection to |L_beta'| < tol; classifies the regime.
PhaseReport find_stationary_points(const ErgmSpec& spec, int grid = 4096, double tol = 1e-11);

// sigma_n^2 of the edge-count CLT; throws if p is not attracting.
double variance_proxy_edge(const ErgmSpec& spec, double p, int n);

// varsigma_n^2 of the degree CLT; same precondition.
double variance_proxy_degree(const ErgmSpec& spec, double p, int n);

// The denominators (prefactor reciprocals) are recorded separately from the
// binomial factors for diagnostics.
double variance_proxy_edge_denominator(const ErgmSpec& spec, double p);
double variance_proxy_degree_denominator(const ErgmSpec& spec, double p);

}  // namespace ergm
