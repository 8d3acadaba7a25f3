#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace flowshift {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double dist(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
bool all_finite(const Vec& a);

/// Dense square/rectangular matrix of doubles, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix operator*(const Matrix& rhs) const;
  Vec apply(const Vec& x) const;

  double max_abs() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

double max_abs_diff(const Matrix& a, const Matrix& b);

/// Determinant via LU with partial pivoting (small dense matrices).
double lu_det(Matrix m);

/// Solves m x = b via LU with partial pivoting. Throws NewtonFailure on a
/// numerically singular pivot.
Vec lu_solve(Matrix m, Vec b);

/// Central-difference Jacobian of a map ℝⁿ→ℝᵐ.
Matrix jacobian_fd(const std::function<Vec(const Vec&)>& f, const Vec& x,
                   double step = 1e-5);

}  // namespace flowshift
