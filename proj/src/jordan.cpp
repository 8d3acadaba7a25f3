#include "flowshift/jordan.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace flowshift {

namespace {

constexpr std::size_t kMaxMultiplicity = 20;

std::size_t block_dim(const JordanBlock& b) {
  if (const auto* r = std::get_if<RealJordanBlock>(&b)) return r->p;
  return 2 * std::get<RotationJordanBlock>(b).p;
}

}  // namespace

std::size_t JordanSpec::dimension() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += block_dim(b);
  return n;
}

void JordanSpec::validate() const {
  if (blocks.empty())
    throw std::invalid_argument("JordanSpec: at least one block required");
  for (const auto& b : blocks) {
    if (const auto* r = std::get_if<RealJordanBlock>(&b)) {
      if (!std::isfinite(r->lambda))
        throw std::invalid_argument("JordanSpec: non-finite lambda");
      if (r->p < 1 || r->p > kMaxMultiplicity)
        throw std::invalid_argument("JordanSpec: multiplicity out of [1,20]");
    } else {
      const auto& rot = std::get<RotationJordanBlock>(b);
      if (!std::isfinite(rot.alpha) || !std::isfinite(rot.beta))
        throw std::invalid_argument("JordanSpec: non-finite rotation entries");
      if (rot.beta == 0.0)
        throw std::invalid_argument("JordanSpec: rotation block needs beta != 0");
      if (rot.p < 1 || rot.p > kMaxMultiplicity)
        throw std::invalid_argument("JordanSpec: multiplicity out of [1,20]");
    }
  }
}

Spectrum spectrum(const JordanSpec& spec) {
  Spectrum s;
  for (const auto& b : spec.blocks) {
    if (const auto* r = std::get_if<RealJordanBlock>(&b)) {
      s.push_back({r->lambda, 0.0, r->p});
    } else {
      const auto& rot = std::get<RotationJordanBlock>(b);
      s.push_back({rot.alpha, rot.beta, rot.p});
      s.push_back({rot.alpha, -rot.beta, rot.p});
    }
  }
  return s;
}

Matrix build_jordan_matrix(const JordanSpec& spec) {
  spec.validate();
  const std::size_t n = spec.dimension();
  Matrix m(n, n);
  std::size_t off = 0;
  for (const auto& b : spec.blocks) {
    if (const auto* r = std::get_if<RealJordanBlock>(&b)) {
      for (std::size_t i = 0; i < r->p; ++i) {
        m(off + i, off + i) = r->lambda;
        if (i + 1 < r->p) m(off + i + 1, off + i) = 1.0;
      }
      off += r->p;
    } else {
      const auto& rot = std::get<RotationJordanBlock>(b);
      for (std::size_t i = 0; i < rot.p; ++i) {
        const std::size_t d = off + 2 * i;
        m(d, d) = rot.alpha;
        m(d, d + 1) = -rot.beta;
        m(d + 1, d) = rot.beta;
        m(d + 1, d + 1) = rot.alpha;
        if (i + 1 < rot.p) {
          m(d + 2, d) = 1.0;
          m(d + 3, d + 1) = 1.0;
        }
      }
      off += 2 * rot.p;
    }
  }
  return m;
}

namespace {

// Coefficients t^j/j! for j = 0..p-1 as running products.
std::vector<double> nilpotent_coeffs(double t, std::size_t p) {
  std::vector<double> c(p);
  c[0] = 1.0;
  for (std::size_t j = 1; j < p; ++j) c[j] = c[j - 1] * t / static_cast<double>(j);
  return c;
}

}  // namespace

Matrix jordan_exp(const JordanSpec& spec, double t) {
  spec.validate();
  const std::size_t n = spec.dimension();
  Matrix m(n, n);
  std::size_t off = 0;
  for (const auto& b : spec.blocks) {
    if (const auto* r = std::get_if<RealJordanBlock>(&b)) {
      const double e = std::exp(r->lambda * t);
      const auto c = nilpotent_coeffs(t, r->p);
      for (std::size_t i = 0; i < r->p; ++i)
        for (std::size_t j = 0; j <= i; ++j) m(off + i, off + j) = c[i - j] * e;
      off += r->p;
    } else {
      const auto& rot = std::get<RotationJordanBlock>(b);
      const double e = std::exp(rot.alpha * t);
      const double co = e * std::cos(rot.beta * t);
      const double si = e * std::sin(rot.beta * t);
      const auto c = nilpotent_coeffs(t, rot.p);
      for (std::size_t i = 0; i < rot.p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          const std::size_t ri = off + 2 * i, cj = off + 2 * j;
          m(ri, cj) = c[i - j] * co;
          m(ri, cj + 1) = -c[i - j] * si;
          m(ri + 1, cj) = c[i - j] * si;
          m(ri + 1, cj + 1) = c[i - j] * co;
        }
      }
      off += 2 * rot.p;
    }
  }
  return m;
}

Vec jordan_exp_apply(const JordanSpec& spec, double t, const Vec& x) {
  Vec y(x.size(), 0.0);
  std::size_t off = 0;
  for (const auto& b : spec.blocks) {
    if (const auto* r = std::get_if<RealJordanBlock>(&b)) {
      const double e = std::exp(r->lambda * t);
      const auto c = nilpotent_coeffs(t, r->p);
      for (std::size_t i = 0; i < r->p; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= i; ++j) s += c[i - j] * x[off + j];
        y[off + i] = e * s;
      }
      off += r->p;
    } else {
      const auto& rot = std::get<RotationJordanBlock>(b);
      const double e = std::exp(rot.alpha * t);
      const double co = std::cos(rot.beta * t);
      const double si = std::sin(rot.beta * t);
      const auto c = nilpotent_coeffs(t, rot.p);
      for (std::size_t i = 0; i < rot.p; ++i) {
        double u = 0.0, v = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
          u += c[i - j] * x[off + 2 * j];
          v += c[i - j] * x[off + 2 * j + 1];
        }
        y[off + 2 * i] = e * (co * u - si * v);
        y[off + 2 * i + 1] = e * (si * u + co * v);
      }
      off += 2 * rot.p;
    }
  }
  return y;
}

Vec jordan_apply(const JordanSpec& spec, const Vec& x) {
  Vec y(x.size(), 0.0);
  std::size_t off = 0;
  for (const auto& b : spec.blocks) {
    if (const auto* r = std::get_if<RealJordanBlock>(&b)) {
      for (std::size_t i = 0; i < r->p; ++i) {
        y[off + i] = r->lambda * x[off + i];
        if (i > 0) y[off + i] += x[off + i - 1];
      }
      off += r->p;
    } else {
      const auto& rot = std::get<RotationJordanBlock>(b);
      for (std::size_t i = 0; i < rot.p; ++i) {
        const std::size_t d = off + 2 * i;
        y[d] = rot.alpha * x[d] - rot.beta * x[d + 1];
        y[d + 1] = rot.beta * x[d] + rot.alpha * x[d + 1];
        if (i > 0) {
          y[d] += x[d - 2];
          y[d + 1] += x[d - 1];
        }
      }
      off += 2 * rot.p;
    }
  }
  return y;
}

namespace {

using LMatrix = std::vector<long double>;

LMatrix lmul(const LMatrix& a, const LMatrix& b, std::size_t n) {
  LMatrix r(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const long double aik = a[i * n + k];
      if (aik == 0.0L) continue;
      for (std::size_t j = 0; j < n; ++j) r[i * n + j] += aik * b[k * n + j];
    }
  return r;
}

long double lmax_abs(const LMatrix& a) {
  long double m = 0.0L;
  for (long double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Matrix matrix_exp_oracle(const Matrix& m, double t) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("matrix_exp_oracle: square matrix required");
  const std::size_t n = m.rows();
  LMatrix x(n * n);
  long double row_norm = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      x[i * n + j] = static_cast<long double>(m(i, j)) * t;
      row += std::abs(x[i * n + j]);
    }
    row_norm = std::max(row_norm, row);
  }
  if (row_norm > 700.0L)
    throw std::range_error("matrix_exp_oracle: ||m t|| too large, e^{mt} overflows");

  int squarings = 0;
  while (row_norm > 0.25L) {
    row_norm /= 2.0L;
    ++squarings;
  }
  const long double scale = std::pow(0.5L, squarings);
  for (auto& v : x) v *= scale;

  // Taylor series at the scaled argument; terminates quickly for norm <= 1/4.
  LMatrix sum(n * n, 0.0L), term(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) sum[i * n + i] = term[i * n + i] = 1.0L;
  for (int k = 1; k <= 64; ++k) {
    term = lmul(term, x, n);
    for (auto& v : term) v /= k;
    for (std::size_t i = 0; i < n * n; ++i) sum[i] += term[i];
    if (lmax_abs(term) < 1e-24L * std::max(1.0L, lmax_abs(sum))) break;
  }
  for (int s = 0; s < squarings; ++s) {
    sum = lmul(sum, sum, n);
    if (lmax_abs(sum) > 1e300L)
      throw std::range_error("matrix_exp_oracle: overflow while squaring");
  }

  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = static_cast<double>(sum[i * n + j]);
  return out;
}

std::optional<double> min_closed_period(const JordanSpec& spec) {
  spec.validate();
  std::optional<double> best;
  for (const auto& b : spec.blocks) {
    if (const auto* rot = std::get_if<RotationJordanBlock>(&b)) {
      if (rot->alpha != 0.0) continue;
      const double period = 2.0 * M_PI / std::abs(rot->beta);
      if (!best || period < *best) best = period;
    }
  }
  return best;
}

}  // namespace flowshift
