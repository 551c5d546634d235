#include "ergm/scalar_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ergm {

namespace {

constexpr double kBoundaryClamp = 1e-12;

void require_unit_interval(double q, const char* what) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error(std::string(what) + ": q must lie in [0, 1]");
}

}  // namespace

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double entropy_I(double q) {
  require_unit_interval(q, "entropy_I");
  double t = 0;
  if (q > 0) t += q * std::log(q);
  if (q < 1) t += (1 - q) * std::log(1 - q);
  return t / 2;
}

double hamiltonian_scalar(const ErgmSpec& spec, double q) {
  require_unit_interval(q, "hamiltonian_scalar");
  double h = 0;
  for (int j = 0; j < spec.motif_count(); ++j)
    h += spec.beta[static_cast<std::size_t>(j)] *
         std::pow(q, spec.motifs[static_cast<std::size_t>(j)].edge_count());
  return h;
}

double hamiltonian_scalar_deriv(const ErgmSpec& spec, double q, int order) {
  require_unit_interval(q, "hamiltonian_scalar_deriv");
  if (order != 1 && order != 2) throw std::invalid_argument("hamiltonian_scalar_deriv: order must be 1 or 2");
  double h = 0;
  for (int j = 0; j < spec.motif_count(); ++j) {
    const double b = spec.beta[static_cast<std::size_t>(j)];
    const int e = spec.motifs[static_cast<std::size_t>(j)].edge_count();
    if (order == 1) {
      h += b * e * std::pow(q, e - 1);  // 0^0 = 1 at q = 0, e = 1
    } else if (e >= 2) {
      h += b * e * (e - 1) * std::pow(q, e - 2);
    }
  }
  return h;
}

double l_beta(const ErgmSpec& spec, double q) { return hamiltonian_scalar(spec, q) - entropy_I(q); }

double l_beta_deriv(const ErgmSpec& spec, double q) {
  require_unit_interval(q, "l_beta_deriv");
  const double qc = std::clamp(q, kBoundaryClamp, 1 - kBoundaryClamp);
  return hamiltonian_scalar_deriv(spec, qc, 1) - 0.5 * std::log(qc / (1 - qc));
}

double l_beta_second(const ErgmSpec& spec, double q) {
  require_unit_interval(q, "l_beta_second");
  const double qc = std::clamp(q, kBoundaryClamp, 1 - kBoundaryClamp);
  return hamiltonian_scalar_deriv(spec, qc, 2) - 1.0 / (2 * qc * (1 - qc));
}

double phi_beta(const ErgmSpec& spec, double q) {
  return logistic(2 * hamiltonian_scalar_deriv(spec, q, 1));
}

double phi_beta_deriv(const ErgmSpec& spec, double q) {
  const double phi = phi_beta(spec, q);
  return phi * (1 - phi) * 2 * hamiltonian_scalar_deriv(spec, q, 2);
}

}  // namespace ergm
