#include "savings/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace savings {

void WealthGrid::validate() const {
  if (points.size() < 50)
    throw std::invalid_argument("wealth grid needs at least 50 nodes");
  if (!(points.front() > 0.0) || !std::isfinite(points.front()))
    throw std::invalid_argument("wealth grid must start at a positive level");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1]) || !std::isfinite(points[i]))
      throw std::invalid_argument("wealth grid must be strictly increasing");
}

WealthGrid WealthGrid::log_spaced(double w_min, double w_max, std::size_t n) {
  if (n < 50)
    throw std::invalid_argument("wealth grid needs at least 50 nodes");
  if (!(w_min > 0.0) || !(w_max > w_min))
    throw std::invalid_argument("log-spaced grid needs 0 < w_min < w_max");
  WealthGrid g;
  g.points.resize(n);
  const double lo = std::log(w_min);
  const double step = (std::log(w_max) - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    g.points[i] = std::exp(lo + static_cast<double>(i) * step);
  g.points.front() = w_min;  // exact endpoints; exp(log(.)) can be off a ulp
  g.points.back() = w_max;
  g.validate();
  return g;
}

WealthGrid default_grid(const StochasticPrimitives& prims) {
  std::vector<double> incomes = prims.Y_tab.data();
  if (incomes.empty())
    throw std::invalid_argument("default grid needs income entries");
  std::sort(incomes.begin(), incomes.end());
  const double median = incomes[(incomes.size() - 1) / 2];
  if (!(median > 0.0))
    throw std::invalid_argument("default grid needs a positive median income");
  return WealthGrid::log_spaced(1e-3 * median, 1e4 * median, 1000);
}

}  // namespace savings
