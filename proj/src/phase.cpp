#include "ergm/phase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ergm/graph_state.hpp"
#include "ergm/scalar_model.hpp"

namespace ergm {

namespace {

constexpr double kBoundary = 1e-6;       // scan interval is (kBoundary, 1 - kBoundary)
constexpr double kTieTol = 1e-9;         // co-global maxima tolerance
constexpr double kCriticalTol = 1e-8;    // |L''| below this flags a critical maximizer

double refine_root(const ErgmSpec& spec, double lo, double hi, double tol) {
  double flo = l_beta_deriv(spec, lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = l_beta_deriv(spec, mid);
    if (std::abs(fmid) < tol && hi - lo < 1e-13) return mid;
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Dobrushin: return "Dobrushin";
    case Regime::Subcritical: return "Subcritical";
    case Regime::Supercritical: return "Supercritical";
    case Regime::Critical: return "Critical";
  }
  return "Unknown";
}

PhaseReport find_stationary_points(const ErgmSpec& spec, int grid, double tol) {
  if (grid < 100) throw std::invalid_argument("find_stationary_points: grid must be at least 100");
  if (!(tol > 0)) throw std::invalid_argument("find_stationary_points: tol must be positive");

  PhaseReport report;
  report.solver_tol = tol;
  report.h_second_at_one = hamiltonian_scalar_deriv(spec, 1.0, 2);

  std::vector<double> roots;
  double prev_q = kBoundary;
  double prev_f = l_beta_deriv(spec, prev_q);
  for (int i = 1; i <= grid; ++i) {
    const double q = kBoundary + (1 - 2 * kBoundary) * static_cast<double>(i) / grid;
    const double f = l_beta_deriv(spec, q);
    if ((f < 0) != (prev_f < 0) || f == 0) {
      double r = refine_root(spec, prev_q, q, tol);
      if (std::abs(l_beta_deriv(spec, r)) >= tol)
        throw std::runtime_error("find_stationary_points: root refinement did not converge");
      bool dup = false;
      for (double r0 : roots)
        if (std::abs(r0 - r) < 1e-9) dup = true;
      if (!dup) roots.push_back(r);
    }
    prev_q = q;
    prev_f = f;
  }
  if (roots.empty()) throw std::runtime_error("find_stationary_points: no stationary point found");
  std::sort(roots.begin(), roots.end());

  for (double q : roots) {
    StationaryPoint sp;
    sp.q = q;
    sp.l_value = l_beta(spec, q);
    sp.l_second = l_beta_second(spec, q);
    sp.attracting = sp.l_second < 0;
    report.stationary_points.push_back(sp);
    if (sp.l_second < 0) report.local_maxima.push_back(sp);
  }
  if (report.local_maxima.empty())
    throw std::runtime_error("find_stationary_points: no local maximum located");

  double best = report.local_maxima.front().l_value;
  for (const auto& sp : report.local_maxima) best = std::max(best, sp.l_value);
  bool critical_maximizer = false;
  for (const auto& sp : report.local_maxima) {
    if (sp.l_value >= best - kTieTol) {
      report.m_beta.push_back(sp.q);
      if (std::abs(sp.l_second) < kCriticalTol) critical_maximizer = true;
      if (sp.l_second < -kCriticalTol) report.u_beta.push_back(sp.q);
    }
  }
  report.p_star = report.m_beta.front();

  if (critical_maximizer || report.u_beta.empty()) {
    report.regime = Regime::Critical;
  } else if (report.stationary_points.size() == 1) {
    report.regime = report.h_second_at_one < 2 ? Regime::Dobrushin : Regime::Subcritical;
  } else {
    // Multiple fixed points: supercritical when every global maximizer is
    // attracting, which the critical checks above have already established.
    report.regime = report.m_beta.size() == report.u_beta.size() ? Regime::Supercritical
                                                                 : Regime::Critical;
  }
  return report;
}

double variance_proxy_edge_denominator(const ErgmSpec& spec, double p) {
  double s = 0;
  for (int j = 1; j < spec.motif_count(); ++j) {
    const int e = spec.motifs[static_cast<std::size_t>(j)].edge_count();
    if (e >= 2) s += spec.beta[static_cast<std::size_t>(j)] * e * (e - 1) * std::pow(p, e - 2);
  }
  return 1 - 2 * p * (1 - p) * s;
}

double variance_proxy_degree_denominator(const ErgmSpec& spec, double p) {
  double s = 0;
  for (int j = 1; j < spec.motif_count(); ++j) {
    const auto& g = spec.motifs[static_cast<std::size_t>(j)];
    int dd = 0;
    for (int d : g.degree) dd += d * (d - 1);
    if (dd > 0) s += spec.beta[static_cast<std::size_t>(j)] * std::pow(p, g.edge_count() - 2) * dd;
  }
  return 1 - p * (1 - p) * s;
}

double variance_proxy_edge(const ErgmSpec& spec, double p, int n) {
  const double denom = variance_proxy_edge_denominator(spec, p);
  if (!(denom > 0))
    throw std::domain_error(
        "variance_proxy_edge: denominator <= 0; "
        "2 p (1-p) sum_j beta_j e_j (e_j - 1) p^(e_j - 2) >= 1, i.e. the "
        "attractivity condition phi_beta'(p) < 1 fails at this p");
  return p * (1 - p) * static_cast<double>(pair_count(n)) / denom;
}

double variance_proxy_degree(const ErgmSpec& spec, double p, int n) {
  const double denom = variance_proxy_degree_denominator(spec, p);
  if (!(denom > 0))
    throw std::domain_error(
        "variance_proxy_degree: denominator <= 0; "
        "p (1-p) sum_j beta_j p^(e_j - 2) sum_rho d_rho (d_rho - 1) >= 1, "
        "which the handshake bound rules out for attracting p");
  return p * (1 - p) * static_cast<double>(n - 1) / denom;
}

}  // namespace ergm
