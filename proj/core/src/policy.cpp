#include "savings/policy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace savings {

void ConsumptionPolicy::set_extrapolation_from_tail() {
  const std::size_t n = grid.size();
  extrapolation_slope.assign(num_states, 1.0);
  if (n < 2) return;
  for (std::size_t z = 0; z < num_states; ++z)
    extrapolation_slope[z] =
        (value(n - 1, z) - value(n - 2, z)) / (grid.points[n - 1] - grid.points[n - 2]);
}

void ConsumptionPolicy::validate() const {
  grid.validate();
  if (num_states == 0)
    throw std::invalid_argument("policy needs at least one exogenous state");
  if (values.size() != grid.size() * num_states)
    throw std::invalid_argument("policy table shape disagrees with grid and state count");
  if (extrapolation_slope.size() != num_states)
    throw std::invalid_argument("policy is missing per-state extrapolation slopes");
  for (std::size_t z = 0; z < num_states; ++z)
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = grid.points[i];
      const double c = value(i, z);
      if (!(c > 0.0))
        throw std::invalid_argument("consumption must be strictly positive");
      if (!(c <= w))
        throw std::invalid_argument("consumption cannot exceed wealth");
      if (i > 0) {
        if (!(c >= value(i - 1, z)))
          throw std::invalid_argument("consumption must be nondecreasing in wealth");
        if (!(w - c >= grid.points[i - 1] - value(i - 1, z)))
          throw std::invalid_argument("savings must be nondecreasing in wealth");
      }
    }
}

ConsumptionPolicy ConsumptionPolicy::consume_all(const WealthGrid& grid,
                                                 std::size_t num_states) {
  ConsumptionPolicy pol;
  pol.grid = grid;
  pol.num_states = num_states;
  pol.values.resize(grid.size() * num_states);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t z = 0; z < num_states; ++z) pol.value(i, z) = grid.points[i];
  pol.set_extrapolation_from_tail();
  return pol;
}

double eval_policy(const ConsumptionPolicy& pol, double w, std::size_t z) {
  const std::vector<double>& x = pol.grid.points;
  const std::size_t n = x.size();
  if (w < x.front()) return w;
  if (w >= x.back()) {
    const double c = pol.value(n - 1, z) + pol.extrapolation_slope[z] * (w - x.back());
    return std::min(std::max(c, std::numeric_limits<double>::min()), w);
  }
  // upper_bound gives the first point strictly above w, so cell [i, i+1]
  // brackets w with x[i] <= w < x[i+1].
  const std::size_t hi =
      static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), w) - x.begin());
  const std::size_t i = hi - 1;
  const double slope = (pol.value(i + 1, z) - pol.value(i, z)) / (x[i + 1] - x[i]);
  return pol.value(i, z) + slope * (w - x[i]);
}

}  // namespace savings
