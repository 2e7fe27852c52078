#include "savings/simulation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace savings {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform draw on [0, 1) with 53 random bits; strictly below 1.
double uniform53(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// First index whose cumulative probability exceeds u; falls back to the last
// index carrying mass when rounding leaves the total a hair under one.
template <typename Prob>
std::size_t draw_index(double u, std::size_t n, Prob prob) {
  double cum = 0.0;
  std::size_t last_mass = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = prob(i);
    if (p > 0.0) last_mass = i;
    cum += p;
    if (u < cum) return i;
  }
  return last_mass;
}

}  // namespace

SimulationPanel simulate_paths(const ConsumptionPolicy& pol,
                               const StochasticPrimitives& prims, double w0,
                               std::size_t z0, std::size_t horizon,
                               std::size_t n_paths, std::uint64_t seed) {
  if (z0 >= prims.num_states)
    throw std::invalid_argument("initial state index out of range");
  if (!(w0 > 0.0))
    throw std::runtime_error("simulated wealth must start positive");

  SimulationPanel panel;
  panel.n_paths = n_paths;
  panel.horizon = horizon;
  const std::size_t total = n_paths * (horizon + 1);
  panel.wealth.assign(total, 0.0);
  panel.consumption.assign(total, 0.0);
  panel.discount_product.assign(total, 0.0);
  panel.state.assign(total, 0);

  const std::size_t nk = prims.shocks.size();
  for (std::size_t p = 0; p < n_paths; ++p) {
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(p)));
    double w = w0;
    std::size_t z = z0;
    double bp = 1.0;
    for (std::size_t t = 0; t <= horizon; ++t) {
      const std::size_t at = panel.idx(p, t);
      const double c = eval_policy(pol, w, z);
      panel.wealth[at] = w;
      panel.consumption[at] = c;
      panel.discount_product[at] = bp;
      panel.state[at] = z;
      if (t == horizon) break;
      const std::size_t zh =
          draw_index(uniform53(gen), prims.num_states, [&](std::size_t j) { return prims.P(z, j); });
      const std::size_t k =
          draw_index(uniform53(gen), nk, [&](std::size_t j) { return prims.shocks.weights[j]; });
      const double wn = prims.R_tab(z, zh, k) * (w - c) + prims.Y_tab(z, zh, k);
      if (!(wn > 0.0))
        throw std::runtime_error("simulated wealth left the positive domain");
      bp *= prims.beta_tab(z, zh, k);
      w = wn;
      z = zh;
    }
  }
  return panel;
}

std::vector<double> transversality_estimate(const SimulationPanel& panel,
                                            const Preferences& prefs) {
  std::vector<double> out(panel.horizon, 0.0);
  if (panel.n_paths == 0) return out;
  for (std::size_t t = 1; t <= panel.horizon; ++t) {
    double sum = 0.0;
    for (std::size_t p = 0; p < panel.n_paths; ++p) {
      const std::size_t at = panel.idx(p, t);
      const double c = panel.consumption[at];
      sum += panel.discount_product[at] * crra_marginal(c, prefs.gamma) *
             (panel.wealth[at] - c);
    }
    out[t - 1] = sum / static_cast<double>(panel.n_paths);
  }
  return out;
}

}  // namespace savings
