#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "savings/model.hpp"
#include "savings/policy.hpp"

namespace savings {

// Large-wealth consumption regimes. Serialized names match regime_name().
enum class Regime {
  ZeroMpcDeltaLtGamma,   // wealth utility flattens slower than consumption utility
  ZeroMpcSpectral,       // growth condition r(K(1-gamma)) >= 1 on an irreducible pattern
  KnifeEdgeDeltaEqGamma, // equal curvatures: positive MPC that depends on psi
  PositiveDeltaGtGamma,  // delta > gamma: positive MPC independent of psi
  Unclassified,
};
std::string regime_name(Regime r);

struct AsymptoticReport {
  Regime regime = Regime::Unclassified;
  double r_K1mg = 0.0;   // radius of the moment matrix at theta = 1 - gamma (may be +inf)
  bool irreducible = false;
  std::vector<double> x_star;         // coefficient fixed point; +inf in zero-MPC regimes
  std::vector<double> predicted_mpc;  // x_star^(-1/gamma); 0 in zero-MPC regimes
  std::optional<std::vector<double>> g_fixed_point;  // power-bound fixed point (delta < gamma)
  std::optional<std::vector<double>> power_bound;    // g_fixed_point^(-1/gamma)
  std::optional<std::vector<double>> measured_mpc;   // filled by callers that also solved
  std::string message;
};

// One step of the asymptotic-coefficient recursion:
//   delta < gamma:  +inf everywhere (the wealth term dominates in the limit)
//   delta = gamma:  (1 + [K(1-gamma)(x + psi 1)](z)^(1/gamma))^gamma
//   delta > gamma:  (1 + [K(1-gamma) x](z)^(1/gamma))^gamma
// x has entries in [1, +inf]; 0 * inf resolves to 0 inside the matrix action.
std::vector<double> apply_coefficient_map(const std::vector<double>& x,
                                          const StochasticPrimitives& prims,
                                          const Preferences& prefs);

// Iterates the coefficient map from the all-ones vector. Iterates rise
// monotonically; any entry exceeding 1e12 is declared divergent and raises
// an error ("no finite fixed point"). Requires delta >= gamma.
std::vector<double> coefficient_fixed_point(const StochasticPrimitives& prims,
                                            const Preferences& prefs,
                                            double tol = 1e-12);

// One step of the sublinear power bound: y(z) -> E_z[beta R^(1-delta) (y(zhat) + psi)].
std::vector<double> apply_power_bound_map(const std::vector<double>& y,
                                          const StochasticPrimitives& prims,
                                          const Preferences& prefs);

// Iterates the power-bound map from zero. Entries exceeding 1e12 are reported
// as +inf (the bound then carries no information) rather than as an error.
std::vector<double> power_bound_fixed_point(const StochasticPrimitives& prims,
                                            const Preferences& prefs,
                                            double tol = 1e-12);

// Decides the asymptotic MPC regime from the primitives alone. Requires the
// core assumptions to hold; regime-specific side conditions (income floor,
// reachable beta*R mass) are checked here and failures land in Unclassified
// with an explanatory message. Infinite moment-matrix entries short-circuit
// to r = +inf and never enter the eigensolver.
AsymptoticReport classify_asymptotics(const StochasticPrimitives& prims,
                                      const Preferences& prefs);

// Slope of the solved policy over the top decade of the grid: `slope` is the
// median of c/w there, `exponent` the least-squares slope of log c on log w.
// Requires at least `decades` decades of grid above the empirical binding
// threshold of state z; otherwise throws ("grid too small").
struct SlopeEstimate {
  double slope = 0.0;
  double exponent = 0.0;
};
SlopeEstimate measured_slope(const ConsumptionPolicy& pol, std::size_t z, double decades);

}  // namespace savings
