#pragma once

#include <cstddef>

#include "savings/matrix.hpp"
#include "savings/model.hpp"

namespace savings {

// Discounted gross-return moment matrix:
//   entries(z, zhat) = P(z, zhat) * sum_k weight_k * beta(z,zhat,k) * R(z,zhat,k)^theta.
// A zero gross return contributes nothing for any theta: the beta*R discount
// factor in front of the integrand is already zero, so 0 * inf resolves to 0.
// Entries can still be +inf through genuine overflow (theta < 0 with tiny R).
struct MomentMatrix {
  double theta = 1.0;
  Matrix entries;
  bool conventions_applied = false;  // an R = 0 term with mass was short-circuited
  bool finite() const { return entries.all_finite(); }
};

MomentMatrix discount_return_moments(const StochasticPrimitives& prims, double theta);

// Spectral radius of a nonnegative matrix with finite entries.
// Power iteration on A + 1e-12*I from the all-ones vector is used as a fast
// route and cross-check; the returned value comes from the Gelfand limit
// ||A^(2^k)||^(1/2^k) evaluated by repeated squaring in log space, which is
// accurate to ~1e-13 relative even for defective or periodic patterns where
// plain power iteration stalls.
double spectral_radius(const Matrix& a);

// Strong connectivity of the positivity digraph. A 1x1 matrix is irreducible
// by convention. Infinite entries are allowed; only the pattern matters.
bool is_irreducible(const Matrix& a);

// (max_z (A^n 1)(z))^(1/n), evaluated in log space so large n cannot overflow.
double growth_rate(const Matrix& a, std::size_t n);

}  // namespace savings
