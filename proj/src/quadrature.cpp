#include "flowshift/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace flowshift {

namespace {

// Newton iteration on the Legendre recurrence; nodes are the roots of P_n.
QuadRule compute_rule(std::size_t n) {
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace

const QuadRule& gauss_legendre(std::size_t order) {
  if (order < 1 || order > 256)
    throw std::invalid_argument("gauss_legendre: order in [1,256]");
  // Lock-free fast paths for the common orders used in hot sweeps.
  if (order == 16) {
    static const QuadRule r = compute_rule(16);
    return r;
  }
  if (order == 32) {
    static const QuadRule r = compute_rule(32);
    return r;
  }
  static std::mutex mu;
  static std::unordered_map<std::size_t, QuadRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::size_t order) {
  const QuadRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

}  // namespace flowshift
