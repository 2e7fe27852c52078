#include "savings/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "savings/spectral.hpp"

namespace savings {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDivergenceCeiling = 1e12;

std::vector<double> elementwise_mpc(const std::vector<double>& x, double gamma) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t z = 0; z < x.size(); ++z)
    out[z] = std::isinf(x[z]) ? 0.0 : std::pow(x[z], -1.0 / gamma);
  return out;
}

}  // namespace

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::ZeroMpcDeltaLtGamma: return "ZeroMPC_delta_lt_gamma";
    case Regime::ZeroMpcSpectral: return "ZeroMPC_spectral";
    case Regime::KnifeEdgeDeltaEqGamma: return "KnifeEdge_delta_eq_gamma";
    case Regime::PositiveDeltaGtGamma: return "Positive_delta_gt_gamma";
    case Regime::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

std::vector<double> apply_coefficient_map(const std::vector<double>& x,
                                          const StochasticPrimitives& prims,
                                          const Preferences& prefs) {
  if (x.size() != prims.num_states)
    throw std::invalid_argument("coefficient vector size disagrees with the state count");
  if (prefs.delta < prefs.gamma)
    return std::vector<double>(prims.num_states, kInf);
  const MomentMatrix km = discount_return_moments(prims, 1.0 - prefs.gamma);
  std::vector<double> arg = x;
  if (prefs.delta == prefs.gamma)
    for (double& v : arg) v += prefs.psi;
  const std::vector<double> kx = mat_vec_zero_inf(km.entries, arg);
  std::vector<double> out(prims.num_states, 0.0);
  for (std::size_t z = 0; z < prims.num_states; ++z)
    out[z] = std::isinf(kx[z])
                 ? kInf
                 : std::pow(1.0 + std::pow(kx[z], 1.0 / prefs.gamma), prefs.gamma);
  return out;
}

std::vector<double> coefficient_fixed_point(const StochasticPrimitives& prims,
                                            const Preferences& prefs, double tol) {
  if (prefs.delta < prefs.gamma)
    throw std::domain_error(
        "coefficient map has no fixed point when the wealth curvature is below the consumption curvature");
  std::vector<double> x(prims.num_states, 1.0);
  for (int it = 0; it < 100000; ++it) {
    const std::vector<double> nx = apply_coefficient_map(x, prims, prefs);
    bool done = true;
    for (std::size_t z = 0; z < x.size(); ++z) {
      if (nx[z] < x[z] - 1e-9 * std::max(1.0, std::abs(x[z])))
        throw std::logic_error("coefficient iteration lost monotonicity");
      if (nx[z] > kDivergenceCeiling)
        throw std::runtime_error("no finite fixed point of the coefficient map");
      if (std::abs(nx[z] - x[z]) > tol) done = false;
    }
    x = nx;
    if (done) return x;
  }
  throw std::runtime_error("coefficient iteration did not converge within its budget");
}

std::vector<double> apply_power_bound_map(const std::vector<double>& y,
                                          const StochasticPrimitives& prims,
                                          const Preferences& prefs) {
  if (y.size() != prims.num_states)
    throw std::invalid_argument("bound vector size disagrees with the state count");
  const MomentMatrix km = discount_return_moments(prims, 1.0 - prefs.delta);
  std::vector<double> arg = y;
  for (double& v : arg) v += prefs.psi;
  return mat_vec_zero_inf(km.entries, arg);
}

std::vector<double> power_bound_fixed_point(const StochasticPrimitives& prims,
                                            const Preferences& prefs, double tol) {
  std::vector<double> y(prims.num_states, 0.0);
  for (int it = 0; it < 200000; ++it) {
    std::vector<double> ny = apply_power_bound_map(y, prims, prefs);
    for (double& v : ny)
      if (v > kDivergenceCeiling) v = kInf;  // divergent entry, not an error
    bool done = true;
    for (std::size_t z = 0; z < y.size(); ++z) {
      const bool both_inf = std::isinf(ny[z]) && std::isinf(y[z]);
      if (!both_inf && !(std::abs(ny[z] - y[z]) <= tol)) done = false;
    }
    y = std::move(ny);
    if (done) return y;
  }
  throw std::runtime_error("power-bound iteration did not converge within its budget");
}

AsymptoticReport classify_asymptotics(const StochasticPrimitives& prims,
                                      const Preferences& prefs) {
  const AssumptionReport assumptions = validate_assumptions(prims, prefs);
  if (!assumptions.solvable())
    throw std::invalid_argument("model fails the core assumptions; the regime is undefined");

  AsymptoticReport rep;
  const MomentMatrix km = discount_return_moments(prims, 1.0 - prefs.gamma);
  rep.irreducible = is_irreducible(km.entries);
  rep.r_K1mg = km.finite() ? spectral_radius(km.entries) : kInf;

  const std::size_t n = prims.num_states;
  const std::vector<double> all_inf(n, kInf);
  const std::vector<double> all_zero(n, 0.0);

  if (prefs.delta < prefs.gamma) {
    if (!assumptions.positive_betaR_ok) {
      rep.message =
          "some state never reaches a positive discounted return, so the vanishing-MPC argument does not apply";
      return rep;
    }
    rep.regime = Regime::ZeroMpcDeltaLtGamma;
    rep.x_star = all_inf;
    rep.predicted_mpc = all_zero;
    rep.g_fixed_point = power_bound_fixed_point(prims, prefs);
    std::vector<double> bound(n, 0.0);
    for (std::size_t z = 0; z < n; ++z) {
      const double g = (*rep.g_fixed_point)[z];
      bound[z] = std::isinf(g) ? 0.0 : std::pow(g, -1.0 / prefs.gamma);
    }
    rep.power_bound = std::move(bound);
    return rep;
  }

  if (rep.r_K1mg >= 1.0) {
    if (!rep.irreducible) {
      rep.message =
          "the moment matrix at 1 - gamma has radius at or above one on a reducible pattern; no regime applies";
      return rep;
    }
    rep.regime = Regime::ZeroMpcSpectral;
    rep.x_star = all_inf;
    rep.predicted_mpc = all_zero;
    return rep;
  }

  if (prefs.delta == prefs.gamma) {
    rep.regime = Regime::KnifeEdgeDeltaEqGamma;
    rep.x_star = coefficient_fixed_point(prims, prefs);
    rep.predicted_mpc = elementwise_mpc(rep.x_star, prefs.gamma);
    return rep;
  }

  if (!assumptions.a4_ok) {
    rep.message =
        "income is not bounded away from zero, so the positive-MPC characterization does not apply";
    return rep;
  }
  rep.regime = Regime::PositiveDeltaGtGamma;
  rep.x_star = coefficient_fixed_point(prims, prefs);
  rep.predicted_mpc = elementwise_mpc(rep.x_star, prefs.gamma);
  return rep;
}

SlopeEstimate measured_slope(const ConsumptionPolicy& pol, std::size_t z, double decades) {
  const std::vector<double>& x = pol.grid.points;
  double threshold = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] - pol.value(i, z) <= 1e-9 * std::max(1.0, x[i])) threshold = x[i];
  const double start = std::max(threshold, x.front());
  const double headroom = std::log10(x.back() / start);
  if (headroom < decades - 1e-9)
    throw std::runtime_error("grid too small: the unconstrained region spans fewer decades than requested");

  const double cut = x.back() / 10.0;  // top decade of the grid
  std::vector<double> ratios;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < cut) continue;
    const double c = pol.value(i, z);
    ratios.push_back(c / x[i]);
    const double lx = std::log(x[i]);
    const double lc = std::log(c);
    sx += lx;
    sy += lc;
    sxx += lx * lx;
    sxy += lx * lc;
    ++m;
  }
  if (m < 2)
    throw std::runtime_error("grid too small: the top decade holds fewer than two nodes");

  std::sort(ratios.begin(), ratios.end());
  SlopeEstimate est;
  est.slope = ratios.size() % 2 == 1
                  ? ratios[ratios.size() / 2]
                  : 0.5 * (ratios[ratios.size() / 2 - 1] + ratios[ratios.size() / 2]);
  const double dm = static_cast<double>(m);
  est.exponent = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  return est;
}

}  // namespace savings
