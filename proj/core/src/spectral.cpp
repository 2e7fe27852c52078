#include "savings/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace savings {

MomentMatrix discount_return_moments(const StochasticPrimitives& prims, double theta) {
  const std::size_t n = prims.num_states;
  const std::size_t nk = prims.shocks.size();
  MomentMatrix out;
  out.theta = theta;
  out.entries = Matrix(n, 0.0);
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t zh = 0; zh < n; ++zh) {
      const double p = prims.P(z, zh);
      double sum = 0.0;
      for (std::size_t k = 0; k < nk; ++k) {
        const double wt = prims.shocks.weights[k];
        const double b = prims.beta_tab(z, zh, k);
        if (wt == 0.0 || b == 0.0) continue;
        const double r = prims.R_tab(z, zh, k);
        if (r == 0.0) {
          // A zero return contributes zero to the moment for every exponent;
          // short-circuiting avoids pow(0, theta) = inf for negative theta.
          if (p > 0.0) out.conventions_applied = true;
          continue;
        }
        sum += wt * b * std::pow(r, theta);
      }
      out.entries(z, zh) = p == 0.0 ? 0.0 : p * sum;
    }
  return out;
}

namespace {

// Power iteration on a + eps*I, used only to cross-check the squaring
// estimate. Returns true when the iteration stabilized.
bool power_iteration_estimate(const Matrix& a, double eps, double& lambda_out) {
  const std::size_t n = a.size();
  std::vector<double> v(n, 1.0);
  double lambda = 0.0;
  int stable = 0;
  for (int it = 0; it < 5000; ++it) {
    std::vector<double> av = mat_vec(a, v);
    for (std::size_t i = 0; i < n; ++i) av[i] += eps * v[i];
    double norm = 0.0;
    for (double x : av) norm = std::max(norm, std::abs(x));
    if (norm == 0.0) {
      lambda_out = 0.0;
      return true;
    }
    for (double& x : av) x /= norm;
    v = std::move(av);
    const double prev = lambda;
    lambda = norm;
    if (std::abs(lambda - prev) <= 1e-13 * std::max(1.0, lambda)) {
      if (++stable >= 4) {
        lambda_out = lambda;
        return true;
      }
    } else {
      stable = 0;
    }
  }
  return false;
}

}  // namespace

double spectral_radius(const Matrix& a) {
  if (!a.all_finite())
    throw std::domain_error("spectral radius undefined on infinite entries");
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  if (n == 1) return a(0, 0);

  // Gelfand limit via renormalized repeated squaring: after k squarings
  // A^(2^k) = exp(log_scale) * m with ||m||_inf = 1, so the radius estimate
  // is exp(log_scale / 2^k). 64 squarings raise the power to 2^64, far past
  // where the norm root has converged to the dominant eigenvalue.
  double norm = a.inf_norm();
  if (norm == 0.0) return 0.0;
  Matrix m = (1.0 / norm) * a;
  double log_scale = std::log(norm);
  const int squarings = 64;
  for (int k = 0; k < squarings; ++k) {
    const Matrix sq = m * m;
    const double s = sq.inf_norm();
    if (s == 0.0) return 0.0;  // nilpotent: some power vanished exactly
    m = (1.0 / s) * sq;
    log_scale = 2.0 * log_scale + std::log(s);
  }
  const double gelfand = std::exp(std::ldexp(log_scale, -squarings));

  // Independent cross-check; a stabilized power iteration that disagrees
  // beyond tolerance indicates a numerical defect, not a model property.
  const double eps = 1e-12;
  double lambda = 0.0;
  if (power_iteration_estimate(a, eps, lambda)) {
    const double shifted = lambda - eps;
    if (std::abs(shifted - gelfand) > 1e-6 * std::max(1.0, gelfand))
      throw std::logic_error("spectral radius estimates disagree between squaring and power iteration");
  }
  return gelfand;
}

bool is_irreducible(const Matrix& a) {
  const std::size_t n = a.size();
  if (n <= 1) return true;
  const auto reaches_all = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        const double w = transpose ? a(j, i) : a(i, j);
        if (w > 0.0 && !seen[j]) {
          seen[j] = 1;
          ++count;
          stack.push_back(j);
        }
      }
    }
    return count == n;
  };
  return reaches_all(false) && reaches_all(true);
}

double growth_rate(const Matrix& a, std::size_t n) {
  if (n == 0) throw std::invalid_argument("growth rate needs a positive horizon");
  if (a.size() == 0) return 0.0;
  if (a.size() == 1) return a(0, 0);
  std::vector<double> v(a.size(), 1.0);
  double log_acc = 0.0;  // log of the running renormalization product
  for (std::size_t t = 0; t < n; ++t) {
    v = mat_vec(a, v);
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    if (m == 0.0) return 0.0;
    for (double& x : v) x /= m;
    log_acc += std::log(m);
  }
  return std::exp(log_acc / static_cast<double>(n));
}

}  // namespace savings
