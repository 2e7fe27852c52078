#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "savings/model.hpp"
#include "savings/policy.hpp"

namespace savings {

// Distance in marginal-utility space: per_state[z] = max_i |c1^-gamma - c2^-gamma|,
// scalar = max over states. Policies must share the grid and state count.
struct PolicyDistance {
  double scalar = 0.0;
  std::vector<double> per_state;
};
PolicyDistance marginal_utility_distance(const ConsumptionPolicy& a,
                                         const ConsumptionPolicy& b, double gamma);

// One step of time iteration: at each node solve
//   u'(xi) = max{ E_z[beta R (u'(c(R (w - xi) + Y)) + v'(R (w - xi) + Y))], u'(w) }
// for xi in (0, w] by bisection. u' is strictly decreasing in xi and the
// expectation is nondecreasing in xi, so the root is unique. Terms with
// beta*R = 0 drop out of the expectation regardless of the other draws.
ConsumptionPolicy time_iteration_step(const ConsumptionPolicy& pol,
                                      const StochasticPrimitives& prims,
                                      const Preferences& prefs);

// Wealth level below which the borrowing constraint binds, per state:
// analytic[z] solves u'(w) = E_z[beta R (u'(c(Y)) + v'(Y))]; +inf when the
// expectation vanishes (then c = w everywhere). empirical[z] is the largest
// grid node still consuming all wealth (0 when none does). `consistent` says
// the two agree within one grid cell in every state; solve() enforces it on
// converged policies.
struct ThresholdReport {
  std::vector<double> analytic;
  std::vector<double> empirical;
  bool consistent = true;
};
ThresholdReport binding_thresholds(const ConsumptionPolicy& pol,
                                   const StochasticPrimitives& prims,
                                   const Preferences& prefs);

// Max over unconstrained grid nodes of |u'(c) - max{E[...], u'(w)}| / u'(c),
// evaluated with the policy itself on the right-hand side. Zero when every
// node is constrained.
double euler_residual(const ConsumptionPolicy& pol, const StochasticPrimitives& prims,
                      const Preferences& prefs);

struct SolveDiagnostics {
  std::size_t iterations = 0;
  std::vector<double> rho_history;     // successive marginal-utility distances
  double contraction_estimate = 0.0;   // geometric mean of the last <= 10 distance ratios
  double euler_residual_max = 0.0;
  std::vector<double> threshold;       // analytic binding threshold per state
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, SolveDiagnostics diag)
      : std::runtime_error(what), diagnostics(std::move(diag)) {}
  SolveDiagnostics diagnostics;
};

struct SolveResult {
  ConsumptionPolicy policy;
  SolveDiagnostics diagnostics;
};

// Time iteration from c(w, z) = w. Iterates fall pointwise (asserted, with
// slack for root-solver rounding) and stop when the marginal-utility distance
// drops below tol; iterations and rho_history describe that phase. The solver
// then keeps applying the operator, within the same max_iter budget, until
// the relative Euler residual reaches 100*tol, so the returned policy is
// self-consistent even where marginal utility is small. Throws SolveError
// carrying diagnostics when max_iter is exhausted. Callers are expected to
// have run validate_assumptions.
SolveResult solve_policy(const StochasticPrimitives& prims, const Preferences& prefs,
                         const WealthGrid& grid, double tol = 1e-10,
                         std::size_t max_iter = 2000);

}  // namespace savings
