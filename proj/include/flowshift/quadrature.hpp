#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace flowshift {

/// Gauss–Legendre nodes and weights on [-1,1].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of the given order (thread-safe).
const QuadRule& gauss_legendre(std::size_t order);

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::size_t order);

inline double integrate_01(const std::function<double(double)>& f,
                           std::size_t order) {
  return integrate(f, 0.0, 1.0, order);
}

}  // namespace flowshift
