// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "savings/asymptotics.hpp"
#include "savings/grid.hpp"
#include "savings/model.hpp"
#include "savings/policy.hpp"
#include "savings/spectral.hpp"
#include "savings/time_iteration.hpp"
#include "savings/two_period.hpp"

using namespace savings;
namespace tp = savings::two_period;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what,
            const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

void run(int criterion, const std::string& what, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& err) {
    detail = std::string("exception: ") + err.what();
  }
  report(criterion, ok, what, detail);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

tp::Model two_period_model(double gamma, double delta, double psi, double beta,
                           double r) {
  tp::Model m;
  m.prefs = fixtures::prefs(gamma, delta, psi);
  m.beta = beta;
  m.gross_return = r;
  return m;
}

std::vector<double> six_decades() {
  std::vector<double> w;
  for (int i = 0; i <= 24; ++i) w.push_back(std::pow(10.0, 6.0 * i / 24.0));
  return w;
}

struct Solved {
  SolveResult result;
  StochasticPrimitives prims;
  Preferences prefs;
};

Solved solve_instance(double gamma, double delta, double psi, double beta, double r,
                      double income, double w_max_mult = 1e4) {
  Solved s;
  s.prims = fixtures::single_state(beta, r, income);
  s.prefs = fixtures::prefs(gamma, delta, psi);
  auto grid = WealthGrid::log_spaced(1e-3 * income, w_max_mult * income, 1000);
  s.result = solve_policy(s.prims, s.prefs, grid, 1e-10, 2000);
  return s;
}

// Max of c(w)/w^exponent over the decade [hi/10, hi]. The asymptotic bound
// is checked one decade inside the grid ceiling: the last half-decade of a
// truncated solve leans on the linear continuation closure, which overstates
// sublinear consumption growth and inflates the ratio near w_max (verified by
// comparing solves whose ceilings differ 10x on their shared range: the
// discrepancy is ~1e-4 at w_max/10 and ~2% near w_max).
double decade_max_power_ratio(const ConsumptionPolicy& pol, double exponent, double hi) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pol.grid.size(); ++i) {
    const double w = pol.grid.points[i];
    if (w < hi / 10.0 || w > hi) continue;
    worst = std::max(worst, pol.value(i, 0) / std::pow(w, exponent));
  }
  return worst;
}

}  // namespace

int main() {
  // Shared full-scale solves (defaults: seven-decade grid, 1000 nodes).
  Solved linear_psi1, linear_psi0, knife, sublinear, sublinear_wide;
  try {
    linear_psi1 = solve_instance(1.0, 2.0, 1.0, 0.25, 1.0, 1.0);
    linear_psi0 = solve_instance(1.0, 2.0, 0.0, 0.25, 1.0, 1.0);
    knife = solve_instance(1.0, 1.0, 1.0, 0.25, 1.0, 1.0);
    sublinear = solve_instance(2.0, 1.0, 1.0, 0.95, 1.02, 1.0);
    sublinear_wide = solve_instance(2.0, 1.0, 1.0, 0.95, 1.02, 1.0, 1e5);
  } catch (const std::exception& err) {
    std::printf("FAIL setup: shared solves threw -- %s\n", err.what());
    return 10;
  }

  run(1, "two-period closed form returns w/3 at 1e-10 relative", [](std::string& detail) {
    auto m = two_period_model(1.0, 1.0, 1.0, 1.0, 1.0);
    for (double w : {0.5, 1.0, 10.0, 1e6}) {
      const double c = tp::optimal_consumption(m, w);
      if (std::abs(c - w / 3.0) > 1e-10 * (w / 3.0)) {
        detail = "w=" + fmt(w) + " gave c=" + fmt(c);
        return false;
      }
    }
    return true;
  });

  run(2, "two-period limit shares by regime, 1% at 1e6, wealth-taste-invariant",
      [](std::string& detail) {
        auto w_list = six_decades();
        auto sub = tp::check_asymptotic_ratio(two_period_model(2.0, 1.0, 1.0, 1.0, 1.0), w_list);
        if (!sub.passed) {
          detail = "declining-share case: " + sub.message;
          return false;
        }
        auto kn = tp::check_asymptotic_ratio(two_period_model(1.0, 1.0, 1.0, 1.0, 1.0), w_list);
        if (!kn.passed) {
          detail = "knife-edge case: " + kn.message;
          return false;
        }
        const double ref = tp::wealth_neutral_ratio(1.0, 0.25, 1.0);
        for (double psi : {0.1, 1.0, 10.0}) {
          auto lin = tp::check_asymptotic_ratio(two_period_model(1.0, 2.0, psi, 0.25, 1.0), w_list);
          if (!lin.passed) {
            detail = "linear case psi=" + fmt(psi) + ": " + lin.message;
            return false;
          }
          if (std::abs(lin.ratio.back() - ref) > 0.01 * ref) {
            detail = "psi=" + fmt(psi) + " limit " + fmt(lin.ratio.back()) +
                     " vs " + fmt(ref);
            return false;
          }
        }
        return true;
      });

  run(3, "solved slope matches the 0.75 closed form within 2%, wealth-taste-free",
      [&](std::string& detail) {
        const double s1 = measured_slope(linear_psi1.result.policy, 0, 3).slope;
        const double s0 = measured_slope(linear_psi0.result.policy, 0, 3).slope;
        if (std::abs(s1 / 0.75 - 1.0) > 0.02) {
          detail = "slope " + fmt(s1);
          return false;
        }
        if (std::abs(s0 - s1) / s1 > 0.005) {
          detail = "psi=0 slope " + fmt(s0) + " vs psi=1 slope " + fmt(s1);
          return false;
        }
        detail = "slope " + fmt(s1) + ", psi=0 slope " + fmt(s0);
        return true;
      });

  run(4, "knife-edge coefficient 5/3 at 1e-10 and measured slope within 2% of 0.6",
      [&](std::string& detail) {
        auto x = coefficient_fixed_point(knife.prims, knife.prefs, 1e-12);
        if (std::abs(x[0] - 5.0 / 3.0) > 1e-10 * (5.0 / 3.0)) {
          detail = "x* = " + fmt(x[0]);
          return false;
        }
        const double slope = measured_slope(knife.result.policy, 0, 3).slope;
        if (std::abs(slope / 0.6 - 1.0) > 0.02) {
          detail = "slope " + fmt(slope);
          return false;
        }
        detail = "x* = " + fmt(x[0]) + ", slope " + fmt(slope);
        return true;
      });

  run(5, "vanishing-MPC regime: small slope, shrinking with w_max, power bound a decade inside the ceiling",
      [&](std::string& detail) {
        const double slope = measured_slope(sublinear.result.policy, 0, 3).slope;
        const double slope_wide = measured_slope(sublinear_wide.result.policy, 0, 3).slope;
        if (slope >= 0.02) {
          detail = "top-decade slope " + fmt(slope);
          return false;
        }
        if (slope_wide >= slope) {
          detail = "slope did not fall: " + fmt(slope) + " -> " + fmt(slope_wide);
          return false;
        }
        auto report = classify_asymptotics(sublinear.prims, sublinear.prefs);
        if (!report.power_bound.has_value()) {
          detail = "no power bound attached";
          return false;
        }
        const double bound = (*report.power_bound)[0];
        const double exponent = sublinear.prefs.delta / sublinear.prefs.gamma;
        for (const Solved* s : {&sublinear, &sublinear_wide}) {
          const ConsumptionPolicy& pol = s->result.policy;
          const double worst =
              decade_max_power_ratio(pol, exponent, pol.grid.points.back() / 10.0);
          if (worst > bound + 1e-3) {
            detail = "power ratio " + fmt(worst) + " above bound " + fmt(bound);
            return false;
          }
        }
        detail = "slope " + fmt(slope) + " -> " + fmt(slope_wide) +
                 ", bound " + fmt(bound);
        return true;
      });

  run(6, "contraction rate within 0.05 of the moment-matrix radius, converged in budget",
      [&](std::string& detail) {
        auto assumptions = validate_assumptions(linear_psi1.prims, linear_psi1.prefs);
        const auto& diag = linear_psi1.result.diagnostics;
        if (diag.rho_history.empty() || diag.rho_history.back() >= 1e-10) {
          detail = "did not reach 1e-10 within 2000 iterations";
          return false;
        }
        if (diag.contraction_estimate > assumptions.r_K1 + 0.05) {
          detail = "estimate " + fmt(diag.contraction_estimate) + " vs radius " +
                   fmt(assumptions.r_K1);
          return false;
        }
        detail = "estimate " + fmt(diag.contraction_estimate) + ", radius " +
                 fmt(assumptions.r_K1) + ", iterations " + fmt(diag.iterations);
        return true;
      });

  run(7, "Euler residual below 1e-8 on every converged solve", [&](std::string& detail) {
    double worst = 0.0;
    for (const Solved* s : {&linear_psi1, &linear_psi0, &knife, &sublinear, &sublinear_wide})
      worst = std::max(worst, s->result.diagnostics.euler_residual_max);
    detail = "max residual " + fmt(worst);
    return worst < 1e-8;
  });

  run(8, "monotonicity suite: class invariants, threshold consistency, income response",
      [&](std::string& detail) {
        for (const Solved* s : {&linear_psi1, &linear_psi0, &knife, &sublinear}) {
          s->result.policy.validate();  // throws on any monotonicity violation
          auto thresholds = binding_thresholds(s->result.policy, s->prims, s->prefs);
          if (!thresholds.consistent) {
            detail = "threshold mismatch on a converged policy";
            return false;
          }
        }
        auto richer = fixtures::single_state(0.25, 1.0, 1.1);
        auto scaled =
            solve_policy(richer, linear_psi1.prefs, linear_psi1.result.policy.grid,
                         1e-10, 2000);
        for (std::size_t i = 0; i < scaled.policy.grid.size(); ++i)
          if (scaled.policy.value(i, 0) < linear_psi1.result.policy.value(i, 0) - 1e-8) {
            detail = "income scaling lowered consumption at node " + fmt(i);
            return false;
          }
        return true;
      });

  run(9, "spectral radius vs characteristic polynomial; irreducibility vs brute force",
      [](std::string& detail) {
        std::mt19937_64 gen(314159u);
        for (int trial = 0; trial < 100; ++trial) {
          const std::size_t n = 1 + trial % 4;
          Matrix a(n);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = oracles::uniform01(gen);
          const double expected = oracles::charpoly_spectral_radius(a);
          const double got = spectral_radius(a);
          if (std::abs(got - expected) > 1e-8) {
            detail = "radius " + fmt(got) + " vs oracle " + fmt(expected);
            return false;
          }
        }
        for (std::size_t n = 1; n <= 4; ++n) {
          const std::size_t cells = n * n;
          for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
            Matrix a(n, 0.0);
            for (std::size_t c = 0; c < cells; ++c)
              if (mask & (std::size_t{1} << c)) a(c / n, c % n) = 1.0;
            if (is_irreducible(a) != oracles::brute_force_irreducible(a)) {
              detail = "pattern mismatch at n=" + fmt(n) + " mask=" + fmt(mask);
              return false;
            }
          }
        }
        return true;
      });

  run(10, "coefficient ordering: knife-edge above linear, MPCs strictly ordered",
      [&](std::string& detail) {
        auto knife_report = classify_asymptotics(knife.prims, knife.prefs);
        auto linear_report = classify_asymptotics(linear_psi1.prims, linear_psi1.prefs);
        if (!(knife_report.x_star[0] >= linear_report.x_star[0])) {
          detail = "x1* " + fmt(knife_report.x_star[0]) + " below x2* " +
                   fmt(linear_report.x_star[0]);
          return false;
        }
        if (!(knife_report.predicted_mpc[0] < linear_report.predicted_mpc[0])) {
          detail = "MPCs not strictly ordered";
          return false;
        }
        detail = "x1*=" + fmt(knife_report.x_star[0]) + " >= x2*=" +
                 fmt(linear_report.x_star[0]) + "; MPC " +
                 fmt(knife_report.predicted_mpc[0]) + " < " +
                 fmt(linear_report.predicted_mpc[0]);
        return true;
      });

  if (failures == 0)
    std::printf("acceptance gate: all 10 criteria passed\n");
  else
    std::printf("acceptance gate: %d criterion(s) failed\n", failures);
  return failures;
}
