#pragma once

#include <functional>

#include "flowshift/linalg.hpp"

namespace flowshift {

/// Bisection on a bracketed sign change; returns the midpoint of the final
/// interval of width <= xtol. Requires f(a)·f(b) <= 0.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double xtol);

/// Brent-style bounded minimization (golden section with parabolic steps).
/// Returns the argmin of f on [a,b] to within xtol.
double brent_minimize(const std::function<double(double)>& f, double a, double b,
                      double xtol, std::size_t max_iter = 120);

/// Damped Newton for f(x) = target with a finite-difference Jacobian.
/// Throws NewtonFailure after max_iter iterations without reaching tol.
Vec newton_solve(const std::function<Vec(const Vec&)>& f, const Vec& target,
                 Vec seed, double tol = 1e-12, std::size_t max_iter = 50,
                 double fd_step = 1e-6);

}  // namespace flowshift
