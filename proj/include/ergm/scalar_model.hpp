#pragma once

#include "ergm/motif.hpp"

namespace ergm {

// Overflow-safe e^z / (1 + e^z).
double logistic(double z);

// I(q) = (1/2)[q ln q + (1-q) ln(1-q)] with the 0 ln 0 = 0 convention.
double entropy_I(double q);

// H(q) = sum_j beta_j q^{e_j}.
double hamiltonian_scalar(const ErgmSpec& spec, double q);

// H'(q) or H''(q); order must be 1 or 2.
double hamiltonian_scalar_deriv(const ErgmSpec& spec, double q, int order);

// L_beta(q) = H(q) - I(q).
double l_beta(const ErgmSpec& spec, double q);

// L_beta'(q) = H'(q) - (1/2) ln(q / (1-q)). The entropy derivative diverges at
// the boundary, so q is clamped to [1e-12, 1 - 1e-12].
double l_beta_deriv(const ErgmSpec& spec, double q);

// L_beta''(q) = H''(q) - 1 / (2 q (1-q)), with the same clamping.
double l_beta_second(const ErgmSpec& spec, double q);

// phi_beta(q) = logistic(2 H'(q)).
double phi_beta(const ErgmSpec& spec, double q);

// phi_beta'(q) = phi (1 - phi) 2 H''(q).
double phi_beta_deriv(const ErgmSpec& spec, double q);

}  // namespace ergm
