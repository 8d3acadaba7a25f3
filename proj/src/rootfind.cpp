#include "flowshift/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flowshift/errors.hpp"

namespace flowshift {

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double xtol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
  while (b - a > xtol) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double brent_minimize(const std::function<double(double)>& f, double a, double b,
                      double xtol, std::size_t max_iter) {
  const double gold = 0.3819660112501051;
  double x = a + gold * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    const double m = 0.5 * (a + b);
    const double tol1 = xtol * 0.5 + 1e-15 * std::abs(x);
    if (std::abs(x - m) <= 2.0 * tol1 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1) {
      // Parabola through x, w, v.
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < 2.0 * tol1 || b - u < 2.0 * tol1)
          d = (m > x) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x < m) ? b - x : a - x;
      d = gold * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return x;
}

Vec newton_solve(const std::function<Vec(const Vec&)>& f, const Vec& target,
                 Vec seed, double tol, std::size_t max_iter, double fd_step) {
  Vec x = std::move(seed);
  for (std::size_t it = 0; it < max_iter; ++it) {
    const Vec fx = f(x);
    const Vec resid = sub(target, fx);
    if (norm(resid) <= tol) return x;
    const Matrix j = jacobian_fd(f, x, fd_step);
    Vec step = lu_solve(j, resid);
    // Backtracking line search keeps the iteration from overshooting.
    double lambda = 1.0;
    const double r0 = norm(resid);
    for (int bt = 0; bt < 8; ++bt) {
      Vec cand = add(x, scaled(step, lambda));
      if (norm(sub(target, f(cand))) < r0) {
        x = std::move(cand);
        break;
      }
      lambda *= 0.5;
      if (bt == 7) x = add(x, scaled(step, lambda));
    }
  }
  if (norm(sub(target, f(x))) <= tol) return x;
  throw NewtonFailure("newton_solve: no convergence after max iterations");
}

}  // namespace flowshift
