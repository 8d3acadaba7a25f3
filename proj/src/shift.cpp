#include "flowshift/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "flowshift/diffeo.hpp"
#include "flowshift/errors.hpp"
#include "flowshift/rootfind.hpp"

namespace flowshift {

Vec ShiftFunction::grad(const Vec& x, double fd_step) const {
  if (gradient) return gradient(x);
  Vec g(x.size());
  Vec xp = x, xm = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + fd_step;
    xm[i] = x[i] - fd_step;
    g[i] = (value(xp) - value(xm)) / (2.0 * fd_step);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return g;
}

ShiftFunction ShiftFunction::constant(double c) {
  ShiftFunction s;
  s.value = [c](const Vec&) { return c; };
  s.gradient = [](const Vec& x) { return Vec(x.size(), 0.0); };
  return s;
}

bool validate_gradient(const ShiftFunction& alpha, const Grid& grid, double tol) {
  if (!alpha.has_gradient()) return true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec x = grid.point(i);
    const Vec ga = alpha.gradient(x);
    ShiftFunction probe;
    probe.value = alpha.value;
    const Vec gf = probe.grad(x);
    for (std::size_t a = 0; a < x.size(); ++a)
      if (std::abs(ga[a] - gf[a]) > tol) return false;
  }
  return true;
}

namespace {

// Derivative of Φ_t in x applied to v, for closed-form variants.
Vec flow_tangent_apply(const Flow& flow, const Vec& x, double t, const Vec& v) {
  return std::visit(
      [&](const auto& f) -> Vec {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFlow>) {
          return jordan_exp_apply(f.spec, t, v);
        } else if constexpr (std::is_same_v<T, TranslationFlow>) {
          return v;
        } else if constexpr (std::is_same_v<T, PowerLineFlow>) {
          const double u = 1.0 - (f.n - 1) * t * std::pow(x[0], f.n - 1);
          const double du = std::pow(u, -1.0 / (f.n - 1)) +
                            (f.n - 1) * t * std::pow(x[0], f.n - 1) *
                                std::pow(u, -static_cast<double>(f.n) / (f.n - 1));
          return Vec{du * v[0]};
        } else if constexpr (std::is_same_v<T, RegularExtensionFlow>) {
          const std::size_t m = f.factor.dimension();
          const Vec vb(v.begin(), v.begin() + m);
          Vec vf(v.begin() + m, v.end());
          const Vec vb_t = jordan_exp_apply(f.factor, t, vb);
          std::visit(
              [&](const auto& c) {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, LinearFiberCoupler>) {
                  vf = jordan_exp_apply(c.fiber, t, vf);
                } else if constexpr (std::is_same_v<C, ShearCoupler>) {
                  vf[c.fiber_axis] += c.c * (vb_t[c.base_axis] - vb[c.base_axis]);
                }
              },
              f.coupler);
          Vec out = vb_t;
          out.insert(out.end(), vf.begin(), vf.end());
          return out;
        } else {
          (void)f;
          return v;  // unreachable: callers gate on closed_form()
        }
      },
      flow.value());
}

}  // namespace

PointMap shift_map(const Flow& flow, const ShiftFunction& alpha) {
  PointMap h;
  h.value = [&flow, alpha](const Vec& x) {
    return evaluate_flow(flow, x, alpha.value(x));
  };
  if (alpha.has_gradient() && flow.closed_form()) {
    // D(Sh α)(x)·v = DΦ_t(x)·v + (∇α·v)·F(Sh α (x)),  t = α(x).
    h.dir_deriv = [&flow, alpha](const Vec& x, const Vec& v) {
      const double t = alpha.value(x);
      const Vec hx = evaluate_flow(flow, x, t);
      const Vec tangent = flow_tangent_apply(flow, x, t, v);
      const double da = dot(alpha.gradient(x), v);
      return add(tangent, scaled(vector_field(flow, hx), da));
    };
  }
  return h;
}

ShiftFunction compose_shift_functions(const ShiftFunction& alpha,
                                      const ShiftFunction& beta, const Flow& flow) {
  const PointMap g = shift_map(flow, beta);
  ShiftFunction sigma;
  sigma.value = [alpha, beta, g](const Vec& x) {
    return beta.value(x) + alpha.value(g.value(x));
  };
  if (alpha.has_gradient() && beta.has_gradient() && g.has_derivative()) {
    sigma.gradient = [alpha, beta, g](const Vec& x) {
      Vec grad = beta.gradient(x);
      const Vec gx = g.value(x);
      const Vec ga = alpha.gradient(gx);
      Vec e(x.size(), 0.0);
      for (std::size_t i = 0; i < x.size(); ++i) {
        e[i] = 1.0;
        grad[i] += dot(g.dir_deriv(x, e), ga);
        e[i] = 0.0;
      }
      return grad;
    };
  }
  return sigma;
}

ShiftFunction invert_shift_function(const ShiftFunction& gamma, const Flow& flow,
                                    const Grid& grid) {
  const DiffeoReport report = diffeo_classify(flow, gamma, grid, 1e-9);
  if (report.classification != DiffeoClass::OrientationPreserving &&
      report.classification != DiffeoClass::OrientationReversing)
    throw NotInvertible("invert_shift_function: Sh(gamma) fails the grid diffeomorphism check");

  const PointMap g = shift_map(flow, gamma);
  auto images = std::make_shared<std::vector<Vec>>(grid.size());
  for_each_index_guarded(grid.size(), [&](std::size_t i) {
    (*images)[i] = g.value(grid.point(i));
  });

  auto grid_copy = std::make_shared<Grid>(grid);
  ShiftFunction sigma;
  sigma.value = [gamma, g, images, grid_copy](const Vec& y) {
    // Seed Newton from the grid point whose image lies nearest to y.
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < images->size(); ++i) {
      const double d = dist((*images)[i], y);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    const Vec x = newton_solve(g.value, y, grid_copy->point(best), 1e-12, 50);
    return -gamma.value(x);
  };
  return sigma;
}

bool kernel_membership(const Flow& flow, const ShiftFunction& mu, const Grid& grid,
                       double tol, Exec mode) {
  const std::size_t n = grid.size();
  std::vector<double> resid(n, 0.0);
  for_each_index(
      n,
      [&](std::size_t i) {
        const Vec x = grid.point(i);
        try {
          resid[i] = dist(evaluate_flow(flow, x, mu.value(x)), x);
        } catch (const DomainEscape&) {
          resid[i] = std::numeric_limits<double>::infinity();
        }
      },
      mode);
  const double worst = *std::max_element(resid.begin(), resid.end());
  return worst <= tol;
}

namespace {

bool tangent_flow_trivial(const Flow& flow, const Vec& z, double tol = 1e-6) {
  for (double t : {0.37, 0.81, 1.33}) {
    Matrix j;
    try {
      j = jacobian_fd([&](const Vec& p) { return evaluate_flow(flow, p, t); }, z,
                      1e-5);
    } catch (const DomainEscape&) {
      return false;
    }
    const Matrix id = Matrix::identity(z.size());
    if (max_abs_diff(j, id) > tol) return false;
  }
  return true;
}

}  // namespace

KernelReport kernel_generator(const Flow& flow, const Grid& grid, double horizon,
                              double tol, Exec mode) {
  KernelReport report;
  const std::size_t n = grid.size();
  report.evidence.resize(n);
  for_each_index_guarded(
      n,
      [&](std::size_t i) {
        const Vec x = grid.point(i);
        report.evidence[i] = {x, classify_trajectory(flow, x, horizon, tol)};
      },
      mode);

  // Int Fix Φ = ∅ precondition, checked at grid resolution: a fixed point
  // whose whole neighbor stencil is fixed marks interior.
  std::vector<bool> fixed(n, false);
  for (std::size_t i = 0; i < n; ++i)
    fixed[i] = report.evidence[i].info.kind == TrajectoryInfo::Kind::Fixed;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fixed[i]) continue;
    bool interior = true;
    for (std::size_t nb : grid.neighbors(i))
      if (!fixed[nb]) {
        interior = false;
        break;
      }
    if (interior) {
      report.verdict = KernelReport::Verdict::FullPeriodicLattice;
      return report;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (fixed[i] && tangent_flow_trivial(flow, report.evidence[i].point)) {
      report.verdict = KernelReport::Verdict::Trivial;
      return report;
    }
  }
  for (const auto& s : report.evidence) {
    if (s.info.kind == TrajectoryInfo::Kind::NonClosed) {
      report.verdict = KernelReport::Verdict::Trivial;
      return report;
    }
  }

  std::vector<double> thetas;
  for (const auto& s : report.evidence)
    if (s.info.kind == TrajectoryInfo::Kind::Periodic) thetas.push_back(s.info.theta);
  if (thetas.empty()) {
    report.verdict = KernelReport::Verdict::Indeterminate;
    return report;
  }

  const double theta_min = *std::min_element(thetas.begin(), thetas.end());
  const std::size_t k_max = static_cast<std::size_t>(
      std::min(1024.0, std::floor(horizon / theta_min) + 1.0));
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double nu = static_cast<double>(k) * theta_min;
    bool consistent = true;
    for (double theta : thetas) {
      const double ratio = nu / theta;
      const double m = std::round(ratio);
      if (m < 1.0 || std::abs(ratio - m) > 1e-4 * m) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;

    std::vector<double> resid(n, 0.0);
    for_each_index(
        n,
        [&](std::size_t i) {
          const Vec x = grid.point(i);
          try {
            resid[i] = dist(evaluate_flow(flow, x, nu), x);
          } catch (const DomainEscape&) {
            resid[i] = std::numeric_limits<double>::infinity();
          }
        },
        mode);
    const double worst = *std::max_element(resid.begin(), resid.end());
    if (worst <= tol) {
      report.verdict = KernelReport::Verdict::InfiniteCyclic;
      report.nu_value = nu;
      report.max_identity_error = worst;
      report.generator = ShiftFunction::constant(nu);
      return report;
    }
  }
  report.verdict = KernelReport::Verdict::Indeterminate;
  return report;
}

double injectivity_bound(const Flow& flow, const Vec& x, double probe_radius,
                         double horizon, double tol) {
  std::vector<Vec> probes{x};
  for (std::size_t a = 0; a < x.size(); ++a) {
    Vec p = x, q = x;
    p[a] += 0.5 * probe_radius;
    q[a] -= 0.5 * probe_radius;
    probes.push_back(p);
    probes.push_back(q);
  }
  double theta_min = std::numeric_limits<double>::infinity();
  for (const auto& p : probes) {
    try {
      const TrajectoryInfo info = classify_trajectory(flow, p, horizon, tol);
      if (info.kind == TrajectoryInfo::Kind::Periodic)
        theta_min = std::min(theta_min, info.theta);
    } catch (const DomainEscape&) {
      // escaping probe: no periodic evidence from it
    }
  }
  if (std::isfinite(theta_min)) return 0.49 * theta_min;
  return 1.0;
}

}  // namespace flowshift
