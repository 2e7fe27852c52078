#include "savings/two_period.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace savings::two_period {

namespace {

// Bisection to bracket collapse: stops when the midpoint stops moving, which
// pins the root to adjacent doubles. f must be positive at lo, negative at hi.
template <typename F>
double bisect_to_collapse(double lo, double hi, F f) {
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return mid;
}

}  // namespace

void Model::validate() const {
  prefs.validate();
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("two-period discount factor must be positive and finite");
  if (!(gross_return > 0.0) || !std::isfinite(gross_return))
    throw std::invalid_argument("two-period gross return must be positive and finite");
}

double optimal_consumption(const Model& m, double w) {
  m.validate();
  if (!(w > 0.0) || !std::isfinite(w))
    throw std::invalid_argument("two-period wealth must be positive and finite");
  const double gamma = m.prefs.gamma;
  const double delta = m.prefs.delta;
  const double psi = m.prefs.psi;
  const double beta = m.beta;
  const double r = m.gross_return;
  const auto f = [&](double c) {
    const double save = r * (w - c);
    return std::pow(c, -gamma) -
           beta * r * (std::pow(save, -gamma) + psi * std::pow(save, -delta));
  };
  return bisect_to_collapse(1e-14 * w, (1.0 - 1e-14) * w, f);
}

double knife_edge_ratio(const Model& m) {
  m.validate();
  if (m.prefs.delta != m.prefs.gamma)
    throw std::domain_error("the knife-edge share needs equal curvatures on consumption and wealth");
  const double gamma = m.prefs.gamma;
  const double scale = m.beta * std::pow(m.gross_return, 1.0 - gamma) * (1.0 + m.prefs.psi);
  const auto f = [&](double s) {
    return std::pow(s, -gamma) - scale * std::pow(1.0 - s, -gamma);
  };
  return bisect_to_collapse(1e-14, 1.0 - 1e-14, f);
}

double wealth_neutral_ratio(double gamma, double beta, double gross_return) {
  return 1.0 / (1.0 + std::pow(beta * std::pow(gross_return, 1.0 - gamma), 1.0 / gamma));
}

LimitCheck check_asymptotic_ratio(const Model& m, const std::vector<double>& w_list) {
  m.validate();
  if (w_list.size() < 2)
    throw std::invalid_argument("wealth list needs at least two entries");
  for (std::size_t i = 1; i < w_list.size(); ++i)
    if (!(w_list[i] > w_list[i - 1]))
      throw std::invalid_argument("wealth list must be strictly increasing");
  if (!(w_list.front() > 0.0) ||
      std::log10(w_list.back() / w_list.front()) < 6.0 - 1e-9)
    throw std::invalid_argument("wealth list must span at least six decades");

  LimitCheck out;
  out.wealth = w_list;
  out.ratio.reserve(w_list.size());
  for (double w : w_list) out.ratio.push_back(optimal_consumption(m, w) / w);

  const double gamma = m.prefs.gamma;
  const double delta = m.prefs.delta;
  const double psi = m.prefs.psi;
  const double top_cut = w_list.back() / 10.0;
  std::ostringstream bad;

  if (psi == 0.0) {
    // Without the wealth term the policy is exactly linear for any delta.
    out.regime = "psi_zero_neutral";
    out.reference = wealth_neutral_ratio(gamma, m.beta, m.gross_return);
    out.passed = true;
    for (std::size_t i = 0; i < w_list.size(); ++i)
      if (std::abs(out.ratio[i] - out.reference) > 1e-9 * out.reference) {
        out.passed = false;
        bad << " (w=" << w_list[i] << ", ratio=" << out.ratio[i] << ")";
      }
    if (!out.passed)
      out.message = "ratios deviate from the wealth-neutral share at:" + bad.str();
    return out;
  }

  if (delta < gamma) {
    out.regime = "delta_lt_gamma";
    out.reference =
        std::pow(psi * m.beta * std::pow(m.gross_return, 1.0 - delta), -1.0 / gamma);
    out.passed = true;
    for (std::size_t i = 0; i < w_list.size(); ++i) {
      if (w_list[i] >= top_cut) {
        const double bound = out.reference * std::pow(w_list[i], delta / gamma - 1.0);
        if (out.ratio[i] > 1.01 * bound) {
          out.passed = false;
          bad << " (w=" << w_list[i] << ", ratio=" << out.ratio[i] << ", bound=" << bound
              << ")";
        }
      }
      if (i > 0 && out.ratio[i] > out.ratio[i - 1] * (1.0 + 1e-12)) {
        out.passed = false;
        bad << " (ratio rises at w=" << w_list[i] << ")";
      }
    }
    if (!out.passed)
      out.message = "ratio fails the sublinear power bound at:" + bad.str();
    return out;
  }

  out.regime = delta == gamma ? "delta_eq_gamma" : "delta_gt_gamma";
  out.reference =
      delta == gamma ? knife_edge_ratio(m) : wealth_neutral_ratio(gamma, m.beta, m.gross_return);
  out.passed = true;
  for (std::size_t i = 0; i < w_list.size(); ++i) {
    if (w_list[i] < top_cut) continue;
    if (std::abs(out.ratio[i] - out.reference) > 0.01 * out.reference) {
      out.passed = false;
      bad << " (w=" << w_list[i] << ", ratio=" << out.ratio[i] << ")";
    }
  }
  if (!out.passed)
    out.message = "top-decade ratios sit outside 1% of the limit share at:" + bad.str();
  return out;
}

}  // namespace savings::two_period
