#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "savings/model.hpp"
#include "savings/policy.hpp"

namespace savings {

// Simulated panel, path-major: row (p, t) holds the state at the start of
// period t together with consumption chosen there. discount_product(p, t) is
// the product of realized discount factors over periods 1..t (1 at t = 0).
struct SimulationPanel {
  std::size_t n_paths = 0;
  std::size_t horizon = 0;

  std::vector<double> wealth;
  std::vector<double> consumption;
  std::vector<double> discount_product;
  std::vector<std::size_t> state;

  std::size_t idx(std::size_t p, std::size_t t) const { return p * (horizon + 1) + t; }
};

// Forward-simulates wealth under the policy: w' = R (w - c) + Y with (zhat, k)
// drawn from P(z, .) and the shock weights. Each path uses its own generator
// derived deterministically from (seed, path index), so results do not depend
// on scheduling and repeat bit-for-bit. Wealth must stay positive throughout.
SimulationPanel simulate_paths(const ConsumptionPolicy& pol,
                               const StochasticPrimitives& prims, double w0,
                               std::size_t z0, std::size_t horizon,
                               std::size_t n_paths, std::uint64_t seed);

// Cross-path average of discount_product * u'(c) * (w - c) for t = 1..horizon
// (index t-1). Under the assumptions this sequence tends to zero; with
// beta = 0 or a consume-everything policy it is identically zero.
std::vector<double> transversality_estimate(const SimulationPanel& panel,
                                            const Preferences& prefs);

}  // namespace savings
