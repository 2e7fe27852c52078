// Shared model instances for the test suite.
#pragma once

#include <vector>

#include "savings/model.hpp"

namespace fixtures {

// One exogenous state, one shock realization: deterministic dynamics.
inline savings::StochasticPrimitives single_state(double beta, double gross_return,
                                                  double income) {
  savings::StochasticPrimitives prims;
  prims.num_states = 1;
  prims.P = savings::Matrix(1, 1.0);
  prims.shocks.weights = {1.0};
  prims.beta_tab = savings::Tensor3(1, 1, 1, beta);
  prims.R_tab = savings::Tensor3(1, 1, 1, gross_return);
  prims.Y_tab = savings::Tensor3(1, 1, 1, income);
  return prims;
}

// Two exogenous states with state-dependent income and a mixing chain.
inline savings::StochasticPrimitives two_state() {
  savings::StochasticPrimitives prims;
  prims.num_states = 2;
  prims.P = savings::Matrix(2);
  prims.P(0, 0) = 0.9;
  prims.P(0, 1) = 0.1;
  prims.P(1, 0) = 0.4;
  prims.P(1, 1) = 0.6;
  prims.shocks.weights = {0.5, 0.5};
  prims.beta_tab = savings::Tensor3(2, 2, 2, 0.9);
  prims.R_tab = savings::Tensor3(2, 2, 2, 0.0);
  prims.Y_tab = savings::Tensor3(2, 2, 2, 0.0);
  for (std::size_t z = 0; z < 2; ++z)
    for (std::size_t zh = 0; zh < 2; ++zh)
      for (std::size_t k = 0; k < 2; ++k) {
        prims.R_tab(z, zh, k) = (k == 0) ? 1.00 : 1.04;
        prims.Y_tab(z, zh, k) = (zh == 0) ? 1.0 : 1.5;
      }
  return prims;
}

inline savings::Preferences prefs(double gamma, double delta, double psi) {
  savings::Preferences p;
  p.gamma = gamma;
  p.delta = delta;
  p.psi = psi;
  return p;
}

}  // namespace fixtures
