#pragma once

#include <cstddef>
#include <vector>

#include "savings/grid.hpp"

namespace savings {

// Consumption policy on a wealth grid, one column per exogenous state.
// Class invariants (checked by validate(), preserved by the solver):
//   0 < value(i, z) <= grid.points[i],
//   value(., z) nondecreasing in i,
//   grid.points[i] - value(i, z) nondecreasing in i.
struct ConsumptionPolicy {
  WealthGrid grid;
  std::size_t num_states = 1;
  std::vector<double> values;               // node-major: values[i * num_states + z]
  std::vector<double> extrapolation_slope;  // per state, slope of the last grid segment

  double value(std::size_t i, std::size_t z) const { return values[i * num_states + z]; }
  double& value(std::size_t i, std::size_t z) { return values[i * num_states + z]; }

  void set_extrapolation_from_tail();
  void validate() const;

  // The time-iteration starting point c(w, z) = w.
  static ConsumptionPolicy consume_all(const WealthGrid& grid, std::size_t num_states);
};

// Piecewise-linear evaluation. Below the grid consumption equals wealth (the
// constrained region extends to zero); above the grid the last segment's slope
// extends the policy, clamped into (0, w].
double eval_policy(const ConsumptionPolicy& pol, double w, std::size_t z);

}  // namespace savings
