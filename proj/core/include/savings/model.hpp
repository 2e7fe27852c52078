#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "savings/matrix.hpp"

namespace savings {

// Felicity with constant relative curvature; log at curvature 1.
// Evaluated as expm1((1-gamma) log c)/(1-gamma), which is the same function
// but stays accurate arbitrarily close to the log branch.
double crra_utility(double c, double gamma);

// Marginal felicity c^(-gamma).
double crra_marginal(double c, double gamma);

struct Preferences {
  double gamma = 2.0;  // curvature on consumption
  double delta = 2.0;  // curvature on held wealth
  double psi = 1.0;    // weight of the wealth term; equals its marginal utility at 1
  void validate() const;
};

struct ShockGrid {
  std::vector<double> weights;  // nonnegative, sum to 1 within 1e-12
  std::size_t size() const { return weights.size(); }
  void validate() const;
};

// Dense (num_states, num_states, num_shocks) table.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t d0, std::size_t d1, std::size_t d2, double fill = 0.0)
      : d0_(d0), d1_(d1), d2_(d2), a_(d0 * d1 * d2, fill) {}

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[(i * d1_ + j) * d2_ + k];
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return a_[(i * d1_ + j) * d2_ + k];
  }

  std::size_t dim0() const { return d0_; }
  std::size_t dim1() const { return d1_; }
  std::size_t dim2() const { return d2_; }
  const std::vector<double>& data() const { return a_; }

 private:
  std::size_t d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<double> a_;
};

// Markov environment: beta_tab(z, zhat, k) is the discount factor realized on
// a transition z -> zhat under shock k; R_tab and Y_tab are the gross return
// and income on the same event. All tables are nonnegative.
struct StochasticPrimitives {
  std::size_t num_states = 1;
  Matrix P;  // row-stochastic transition matrix, num_states x num_states
  ShockGrid shocks;
  Tensor3 beta_tab, R_tab, Y_tab;
  void validate() const;  // throws std::invalid_argument naming the failing invariant
};

struct AssumptionReport {
  bool a1_ok = false;              // preference shape: positive curvatures, nonnegative wealth weight
  bool a2i_ok = false;             // E_z[beta R], E_z[beta R u'(Y)], E_z[beta R v'(Y)] all finite
  bool a2ii_ok = false;            // spectral radius of the discounted-return matrix below 1
  bool a4_ok = false;              // income bounded away from zero
  bool positive_betaR_ok = false;  // each state reaches beta*R > 0 with positive probability
  double r_K1 = 0.0;               // radius of the moment matrix at theta = 1
  double r_K1mg = 0.0;             // radius at theta = 1 - gamma; +inf when entries overflow
  std::optional<double> m1;        // smallest positive gross-return entry
  std::optional<double> m2;        // income floor, present when positive
  std::vector<std::string> messages;

  bool solvable() const { return a1_ok && a2i_ok && a2ii_ok; }
  bool operator==(const AssumptionReport&) const = default;
};

AssumptionReport validate_assumptions(const StochasticPrimitives& prims,
                                      const Preferences& prefs);

}  // namespace savings
