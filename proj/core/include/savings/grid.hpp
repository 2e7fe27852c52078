#pragma once

#include <cstddef>
#include <vector>

#include "savings/model.hpp"

namespace savings {

struct WealthGrid {
  std::vector<double> points;  // strictly increasing, points[0] > 0, at least 50 nodes

  std::size_t size() const { return points.size(); }
  void validate() const;

  static WealthGrid log_spaced(double w_min, double w_max, std::size_t n);
};

// Log-spaced default spanning 1e-3 .. 1e4 times the median income entry,
// 1000 nodes. The lower end sits deep inside the borrowing-constrained region.
WealthGrid default_grid(const StochasticPrimitives& prims);

}  // namespace savings
