#include "flowshift/linalg.hpp"

#include <algorithm>
#include <cstdlib>

#include "flowshift/errors.hpp"

namespace flowshift {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec scaled(const Vec& a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

bool all_finite(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  Matrix r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += aik * rhs(k, j);
    }
  }
  return r;
}

Vec Matrix::apply(const Vec& x) const {
  Vec y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

namespace {

// In-place LU with partial pivoting; returns the permutation sign, or 0 when
// a pivot is numerically zero.
int lu_decompose(Matrix& m, std::vector<std::size_t>& piv) {
  const std::size_t n = m.rows();
  piv.resize(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        p = i;
      }
    }
    if (best < 1e-300) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(piv[k], piv[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      m(i, k) /= m(k, k);
      const double lik = m(i, k);
      if (lik == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= lik * m(k, j);
    }
  }
  return sign;
}

}  // namespace

double lu_det(Matrix m) {
  std::vector<std::size_t> piv;
  const int sign = lu_decompose(m, piv);
  if (sign == 0) return 0.0;
  double d = sign;
  for (std::size_t i = 0; i < m.rows(); ++i) d *= m(i, i);
  return d;
}

Vec lu_solve(Matrix m, Vec b) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> piv;
  if (lu_decompose(m, piv) == 0)
    throw NewtonFailure("lu_solve: numerically singular matrix");
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= m(i, j) * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= m(ii, j) * x[j];
    x[ii] /= m(ii, ii);
  }
  return x;
}

Matrix jacobian_fd(const std::function<Vec(const Vec&)>& f, const Vec& x,
                   double step) {
  const std::size_t n = x.size();
  Vec xp = x, xm = x;
  Matrix j;
  for (std::size_t col = 0; col < n; ++col) {
    xp[col] = x[col] + step;
    xm[col] = x[col] - step;
    const Vec fp = f(xp);
    const Vec fm = f(xm);
    if (col == 0) j = Matrix(fp.size(), n);
    for (std::size_t row = 0; row < fp.size(); ++row)
      j(row, col) = (fp[row] - fm[row]) / (2.0 * step);
    xp[col] = x[col];
    xm[col] = x[col];
  }
  return j;
}

}  // namespace flowshift
