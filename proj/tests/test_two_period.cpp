#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "savings/two_period.hpp"

namespace tp = savings::two_period;

namespace {

tp::Model model(double gamma, double delta, double psi, double beta, double r) {
  tp::Model m;
  m.prefs = fixtures::prefs(gamma, delta, psi);
  m.beta = beta;
  m.gross_return = r;
  return m;
}

std::vector<double> decade_list(double lo, double hi, int per_decade) {
  std::vector<double> out;
  const double decades = std::log10(hi / lo);
  const int n = static_cast<int>(decades * per_decade);
  for (int i = 0; i <= n; ++i) out.push_back(lo * std::pow(10.0, decades * i / n));
  return out;
}

}  // namespace

TEST_CASE("first-period consumption in the symmetric log case is one third") {
  auto m = model(1.0, 1.0, 1.0, 1.0, 1.0);
  for (double w : {0.5, 1.0, 10.0, 1e6})
    CHECK(tp::optimal_consumption(m, w) == doctest::Approx(w / 3.0).epsilon(1e-12));
}

TEST_CASE("without wealth taste the log case splits wealth in half") {
  auto m = model(1.0, 1.0, 0.0, 1.0, 1.0);
  CHECK(tp::optimal_consumption(m, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("first-order condition residual vanishes at the returned point") {
  std::mt19937_64 gen(60606u);
  for (int trial = 0; trial < 50; ++trial) {
    const double gamma = 0.4 + 3.0 * oracles::uniform01(gen);
    const double delta = 0.4 + 3.0 * oracles::uniform01(gen);
    const double psi = 2.0 * oracles::uniform01(gen);
    const double beta = 0.1 + 1.2 * oracles::uniform01(gen);
    const double r = 0.5 + 1.0 * oracles::uniform01(gen);
    const double w = std::pow(10.0, -2.0 + 6.0 * oracles::uniform01(gen));
    auto m = model(gamma, delta, psi, beta, r);
    const double c = tp::optimal_consumption(m, w);
    REQUIRE(c > 0.0);
    REQUIRE(c < w);
    const double save = r * (w - c);
    const double residual = std::pow(c, -gamma) -
                            beta * r * (std::pow(save, -gamma) +
                                        psi * std::pow(save, -delta));
    // Scale-free comparison against the marginal utility at the solution.
    CHECK(std::abs(residual) / std::pow(c, -gamma) < 1e-10);
  }
}

TEST_CASE("consumption is strictly increasing in wealth in all three regimes") {
  for (auto& m : {model(2.0, 1.0, 1.0, 1.0, 1.0),    // wealth taste below risk aversion
                  model(1.0, 1.0, 1.0, 1.0, 1.0),    // knife edge
                  model(1.0, 2.0, 5.0, 0.25, 1.0)})  // wealth taste above
  {
    double prev = 0.0;
    for (double w : decade_list(1e-2, 1e4, 4)) {
      const double c = tp::optimal_consumption(m, w);
      CHECK(c > prev);
      prev = c;
    }
  }
}

TEST_CASE("knife-edge share pinned values") {
  CHECK(tp::knife_edge_ratio(model(1.0, 1.0, 1.0, 1.0, 1.0)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(tp::knife_edge_ratio(model(1.0, 1.0, 0.0, 1.0, 1.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(tp::knife_edge_ratio(model(1.0, 2.0, 1.0, 1.0, 1.0)),
                  std::domain_error);
}

TEST_CASE("knife-edge share sits strictly below the wealth-neutral share") {
  std::mt19937_64 gen(5u);
  for (int trial = 0; trial < 30; ++trial) {
    const double gamma = 0.4 + 3.0 * oracles::uniform01(gen);
    const double psi = 0.1 + 3.0 * oracles::uniform01(gen);
    const double beta = 0.2 + 1.0 * oracles::uniform01(gen);
    const double r = 0.6 + 0.8 * oracles::uniform01(gen);
    auto m = model(gamma, gamma, psi, beta, r);
    CHECK(tp::knife_edge_ratio(m) < tp::wealth_neutral_ratio(gamma, beta, r));
  }
}

TEST_CASE("wealth-neutral share pinned values and bisection cross-check") {
  CHECK(tp::wealth_neutral_ratio(0.7, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tp::wealth_neutral_ratio(3.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tp::wealth_neutral_ratio(1.0, 0.25, 1.0) == doctest::Approx(0.8).epsilon(1e-14));

  // gamma=2, beta=0.9, R=1.1: bisect the defining marginal condition directly.
  const double gamma = 2.0, beta = 0.9, r = 1.1;
  auto foc = [&](double c) {
    return std::pow(c, -gamma) - beta * r * std::pow(r * (1.0 - c), -gamma);
  };
  double lo = 1e-12, hi = 1.0 - 1e-12;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (foc(mid) > 0.0 ? lo : hi) = mid;
  }
  CHECK(tp::wealth_neutral_ratio(gamma, beta, r) ==
        doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
}

TEST_CASE("asymptotic consumption shares by regime") {
  auto w_list = decade_list(1.0, 1e6, 4);

  SUBCASE("wealth taste below risk aversion: share decays under the power bound") {
    auto check = tp::check_asymptotic_ratio(model(2.0, 1.0, 1.0, 1.0, 1.0), w_list);
    CHECK(check.passed);
    CHECK(check.message.empty());
    // The documented bound pins the final share: c/w <= w^{delta/gamma - 1}.
    CHECK(check.ratio.back() <= 1e-3 * 1.01);
    // Shares fall monotonically toward zero.
    for (std::size_t i = 1; i < check.ratio.size(); ++i)
      CHECK(check.ratio[i] < check.ratio[i - 1]);
  }
  SUBCASE("knife edge: the share is constant at the pinned value") {
    auto check = tp::check_asymptotic_ratio(model(1.0, 1.0, 1.0, 1.0, 1.0), w_list);
    CHECK(check.passed);
    CHECK(check.reference == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    for (double ratio : check.ratio)
      CHECK(ratio == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
  SUBCASE("wealth taste above risk aversion: share approaches the neutral value") {
    auto check = tp::check_asymptotic_ratio(model(1.0, 2.0, 5.0, 0.25, 1.0), w_list);
    CHECK(check.passed);
    CHECK(check.reference == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(check.ratio.back() - 0.8) < 0.01 * 0.8);
  }
  SUBCASE("the limiting share forgets the wealth-taste weight") {
    for (double psi : {0.1, 1.0, 10.0}) {
      auto check = tp::check_asymptotic_ratio(model(1.0, 2.0, psi, 0.25, 1.0), w_list);
      CHECK(check.passed);
      CHECK(std::abs(check.ratio.back() - 0.8) < 0.01 * 0.8);
    }
  }
  SUBCASE("a short wealth list violates the precondition") {
    CHECK_THROWS_AS(tp::check_asymptotic_ratio(model(1.0, 1.0, 1.0, 1.0, 1.0),
                                               decade_list(1.0, 1e4, 4)),
                    std::invalid_argument);
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(model(1.0, 1.0, 1.0, 0.0, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(model(1.0, 1.0, 1.0, 1.0, 0.0).validate(), std::invalid_argument);
  CHECK_NOTHROW(model(1.0, 1.0, 1.0, 1.0, 1.0).validate());
}
