#pragma once

#include <string>
#include <vector>

#include "savings/model.hpp"

namespace savings::two_period {

// Two-period problem: consume c today, hold R (w - c) tomorrow and value it
// through both felicity terms. Deterministic scalar discount and return.
struct Model {
  Preferences prefs;
  double beta = 1.0;
  double gross_return = 1.0;
  void validate() const;  // beta > 0, gross_return > 0, preferences valid
};

// Unique root in (0, w) of
//   c^-gamma = beta R [ (R (w - c))^-gamma + psi (R (w - c))^-delta ]
// by bisection on [1e-14 w, (1 - 1e-14) w].
double optimal_consumption(const Model& m, double w);

// With delta = gamma the policy is exactly linear, c = m w; returns m as the
// root of m^-gamma = beta R^(1-gamma) (1 + psi) (1 - m)^-gamma on (0, 1).
double knife_edge_ratio(const Model& m);

// Large-wealth consumption ratio when the wealth term drops out of the limit:
// 1 / (1 + (beta R^(1-gamma))^(1/gamma)).
double wealth_neutral_ratio(double gamma, double beta, double gross_return);

// Evaluates c(w)/w along an increasing wealth list spanning at least six
// decades and checks the large-wealth behavior implied by the curvatures:
//   delta < gamma: ratio bounded by (psi beta R^(1-delta))^(-1/gamma) w^(delta/gamma - 1)
//                  over the top decade (1% slack) and decreasing overall;
//   delta = gamma: ratio within 1% of knife_edge_ratio over the top decade;
//   delta > gamma: ratio within 1% of wealth_neutral_ratio over the top decade.
// With psi = 0 the policy is exactly linear at wealth_neutral_ratio for any
// delta and is checked against that instead.
struct LimitCheck {
  bool passed = false;
  std::string regime;       // which branch was checked
  double reference = 0.0;   // limit value, or the bound constant for delta < gamma
  std::vector<double> wealth;
  std::vector<double> ratio;
  std::string message;      // offending entries when failed
};
LimitCheck check_asymptotic_ratio(const Model& m, const std::vector<double>& w_list);

}  // namespace savings::two_period
