#pragma once

#include <cstddef>
#include <vector>

namespace savings {

// Dense square matrix, row-major. State spaces here are tiny, so there is no
// expression machinery, just the handful of operations the solver needs.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  const std::vector<double>& data() const { return a_; }

  bool all_finite() const;
  bool all_nonnegative() const;  // NaN counts as a violation
  double inf_norm() const;       // max absolute row sum

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(double s, const Matrix& m);
bool operator==(const Matrix& lhs, const Matrix& rhs);

// A * x.
std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& x);

// A * x where a zero entry absorbs an infinite component (0 * inf = 0).
// Needed when finite matrices act on vectors with +inf slots.
std::vector<double> mat_vec_zero_inf(const Matrix& m, const std::vector<double>& x);

}  // namespace savings
