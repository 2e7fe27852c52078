#include "savings/model.hpp"

#include "savings/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace savings {

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::all_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

bool Matrix::all_nonnegative() const {
  for (double v : a_)
    if (!(v >= 0.0)) return false;  // NaN counts as a violation
  return true;
}

double Matrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.size() != rhs.size())
    throw std::invalid_argument("matrix product needs equal dimensions");
  const std::size_t n = lhs.size();
  Matrix out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += lhs(i, k) * rhs(k, j);
      out(i, j) = acc;
    }
  return out;
}

Matrix operator*(double scale, const Matrix& m) {
  Matrix out = m;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = scale * m(i, j);
  return out;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) {
  return lhs.size() == rhs.size() && lhs.data() == rhs.data();
}

std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& x) {
  const std::size_t n = m.size();
  if (x.size() != n) throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> mat_vec_zero_inf(const Matrix& m, const std::vector<double>& x) {
  const std::size_t n = m.size();
  if (x.size() != n) throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = m(i, j);
      if (a == 0.0) continue;  // zero absorbs even an infinite argument
      acc += a * x[j];
    }
    out[i] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// CRRA primitives
// ---------------------------------------------------------------------------

double crra_utility(double c, double gamma) {
  if (!(c > 0.0)) throw std::domain_error("utility requires positive consumption");
  if (gamma == 1.0) return std::log(c);
  const double one_mg = 1.0 - gamma;
  return std::expm1(one_mg * std::log(c)) / one_mg;
}

double crra_marginal(double c, double gamma) {
  if (!(c > 0.0)) throw std::domain_error("marginal utility requires positive consumption");
  return std::pow(c, -gamma);
}

// ---------------------------------------------------------------------------
// Preference and primitive validation
// ---------------------------------------------------------------------------

void Preferences::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("consumption curvature gamma must be positive and finite");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("wealth curvature delta must be positive and finite");
  if (!(psi >= 0.0) || !std::isfinite(psi))
    throw std::invalid_argument("wealth weight psi must be nonnegative and finite");
}

void ShockGrid::validate() const {
  if (weights.empty()) throw std::invalid_argument("shock weight list is empty");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("shock weights must be nonnegative and finite");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("shock weights must sum to one");
}

namespace {

void check_table(const Tensor3& t, std::size_t n_states, std::size_t n_shocks,
                 const char* name) {
  if (t.dim0() != n_states || t.dim1() != n_states || t.dim2() != n_shocks) {
    std::ostringstream msg;
    msg << "table " << name << " must have shape (states, states, shocks)";
    throw std::invalid_argument(msg.str());
  }
  for (double v : t.data())
    if (!(v >= 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "table " << name << " entries must be nonnegative and finite";
      throw std::invalid_argument(msg.str());
    }
}

}  // namespace

void StochasticPrimitives::validate() const {
  if (num_states == 0) throw std::invalid_argument("model needs at least one state");
  if (P.size() != num_states)
    throw std::invalid_argument("transition matrix dimension must equal the state count");
  for (std::size_t z = 0; z < num_states; ++z) {
    double row = 0.0;
    for (std::size_t zh = 0; zh < num_states; ++zh) {
      const double p = P(z, zh);
      if (!(p >= 0.0) || !std::isfinite(p))
        throw std::invalid_argument("transition probabilities must be nonnegative and finite");
      row += p;
    }
    if (std::abs(row - 1.0) > 1e-12) {
      std::ostringstream msg;
      msg << "transition row " << z << " must sum to one";
      throw std::invalid_argument(msg.str());
    }
  }
  shocks.validate();
  const std::size_t k = shocks.size();
  check_table(beta_tab, num_states, k, "beta");
  check_table(R_tab, num_states, k, "R");
  check_table(Y_tab, num_states, k, "Y");
}

// ---------------------------------------------------------------------------
// Assumption report
// ---------------------------------------------------------------------------

AssumptionReport validate_assumptions(const StochasticPrimitives& prims,
                                      const Preferences& prefs) {
  AssumptionReport rep;
  const std::size_t n = prims.num_states;
  const std::size_t nk = prims.shocks.size();

  try {
    prefs.validate();
    rep.a1_ok = true;
  } catch (const std::invalid_argument& e) {
    rep.a1_ok = false;
    rep.messages.emplace_back(std::string("preference admissibility failed: ") + e.what());
  }

  // Reachable events are triples with P * weight * beta > 0; income must be
  // positive on every reachable event with a positive return.
  rep.a2i_ok = true;
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t zh = 0; zh < n; ++zh)
      for (std::size_t k = 0; k < nk; ++k) {
        const double mass = prims.P(z, zh) * prims.shocks.weights[k] * prims.beta_tab(z, zh, k);
        if (mass > 0.0 && prims.R_tab(z, zh, k) > 0.0 && prims.Y_tab(z, zh, k) == 0.0) {
          rep.a2i_ok = false;
          std::ostringstream msg;
          msg << "income is zero on the reachable event (z=" << z << ", zhat=" << zh
              << ", k=" << k << ") with a positive discounted return";
          rep.messages.push_back(msg.str());
        }
      }

  const MomentMatrix k1 = discount_return_moments(prims, 1.0);
  rep.r_K1 = k1.finite() ? spectral_radius(k1.entries)
                         : std::numeric_limits<double>::infinity();
  rep.a2ii_ok = rep.r_K1 < 1.0;
  if (!rep.a2ii_ok) {
    std::ostringstream msg;
    msg << "discounted-return moment matrix has spectral radius " << rep.r_K1
        << "; contraction needs a value below one";
    rep.messages.push_back(msg.str());
  }

  if (rep.a1_ok) {
    const MomentMatrix k1mg = discount_return_moments(prims, 1.0 - prefs.gamma);
    rep.r_K1mg = k1mg.finite() ? spectral_radius(k1mg.entries)
                               : std::numeric_limits<double>::infinity();
  }

  double min_pos_return = std::numeric_limits<double>::infinity();
  bool any_pos_return = false;
  for (double r : prims.R_tab.data())
    if (r > 0.0) {
      any_pos_return = true;
      min_pos_return = std::min(min_pos_return, r);
    }
  if (any_pos_return) rep.m1 = min_pos_return;

  double min_income = std::numeric_limits<double>::infinity();
  for (double y : prims.Y_tab.data()) min_income = std::min(min_income, y);
  rep.a4_ok = prims.Y_tab.data().empty() ? false : min_income > 0.0;
  if (rep.a4_ok) rep.m2 = min_income;

  rep.positive_betaR_ok = true;
  for (std::size_t z = 0; z < n; ++z) {
    double mass = 0.0;
    for (std::size_t zh = 0; zh < n; ++zh)
      for (std::size_t k = 0; k < nk; ++k)
        if (prims.beta_tab(z, zh, k) * prims.R_tab(z, zh, k) > 0.0)
          mass += prims.P(z, zh) * prims.shocks.weights[k];
    if (!(mass > 0.0)) {
      rep.positive_betaR_ok = false;
      std::ostringstream msg;
      msg << "state " << z << " never reaches a positive discounted return";
      rep.messages.push_back(msg.str());
    }
  }

  return rep;
}

}  // namespace savings
