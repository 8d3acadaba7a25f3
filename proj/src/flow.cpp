#include "flowshift/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flowshift/errors.hpp"
#include "flowshift/rootfind.hpp"

namespace flowshift {

Flow Flow::linear(JordanSpec spec) {
  spec.validate();
  return Flow(Variant{LinearFlow{std::move(spec)}});
}

Flow Flow::translation1d() { return Flow(Variant{TranslationFlow{}}); }

Flow Flow::powerline(int n, double a) {
  if (n < 2) throw std::invalid_argument("powerline: n >= 2 required");
  if (!(a > 0.0)) throw std::invalid_argument("powerline: a > 0 required");
  return Flow(Variant{PowerLineFlow{n, a}});
}

Flow Flow::regular_extension(JordanSpec factor, std::size_t fiber_dim,
                             Coupler coupler) {
  factor.validate();
  if (fiber_dim < 1)
    throw std::invalid_argument("regular_extension: fiber_dim >= 1 required");
  if (const auto* lf = std::get_if<LinearFiberCoupler>(&coupler)) {
    lf->fiber.validate();
    if (lf->fiber.dimension() != fiber_dim)
      throw std::invalid_argument("regular_extension: fiber spec dimension mismatch");
  }
  if (const auto* sh = std::get_if<ShearCoupler>(&coupler)) {
    if (sh->base_axis >= factor.dimension() || sh->fiber_axis >= fiber_dim)
      throw std::invalid_argument("regular_extension: shear axis out of range");
  }
  return Flow(Variant{RegularExtensionFlow{std::move(factor), fiber_dim,
                                           std::move(coupler)}});
}

Flow Flow::vectorfield(std::string name, std::function<Vec(const Vec&)> f,
                       std::size_t dim, double step) {
  if (!f) throw std::invalid_argument("vectorfield: callable required");
  if (!(step > 0.0)) throw std::invalid_argument("vectorfield: step > 0 required");
  return Flow(Variant{VectorFieldFlow{std::move(name), std::move(f), dim, step}});
}

std::size_t Flow::dim() const {
  return std::visit(
      [](const auto& f) -> std::size_t {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFlow>) return f.spec.dimension();
        else if constexpr (std::is_same_v<T, TranslationFlow>) return 1;
        else if constexpr (std::is_same_v<T, PowerLineFlow>) return 1;
        else if constexpr (std::is_same_v<T, RegularExtensionFlow>)
          return f.factor.dimension() + f.fiber_dim;
        else return f.dim;
      },
      v_);
}

bool Flow::closed_form() const {
  return !std::holds_alternative<VectorFieldFlow>(v_);
}

namespace {

double powerline_eval(const PowerLineFlow& f, double x, double t) {
  if (std::abs(x) >= f.a)
    throw DomainEscape("powerline: point outside (-a,a)");
  const double xn1 = std::pow(x, f.n - 1);
  const double base = 1.0 - (f.n - 1) * t * xn1;
  if (base <= 0.0)
    throw DomainEscape("powerline: finite-time blow-up");
  const double y = x * std::pow(base, -1.0 / (f.n - 1));
  if (std::abs(y) >= f.a)
    throw DomainEscape("powerline: trajectory left (-a,a)");
  return y;
}

Vec rk4_integrate(const VectorFieldFlow& f, Vec x, double t) {
  const double h = (t >= 0.0) ? f.step : -f.step;
  const long long full = static_cast<long long>(std::floor(std::abs(t) / f.step));
  const double rest = t - h * static_cast<double>(full);
  auto step_once = [&](const Vec& p, double dt) {
    const Vec k1 = f.field(p);
    const Vec k2 = f.field(add(p, scaled(k1, dt * 0.5)));
    const Vec k3 = f.field(add(p, scaled(k2, dt * 0.5)));
    const Vec k4 = f.field(add(p, scaled(k3, dt)));
    Vec r = p;
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return r;
  };
  for (long long s = 0; s < full; ++s) x = step_once(x, h);
  if (rest != 0.0) x = step_once(x, rest);
  if (!all_finite(x)) throw DomainEscape("vectorfield: integration diverged");
  return x;
}

Vec extension_eval(const RegularExtensionFlow& f, const Vec& x, double t) {
  const std::size_t m = f.factor.dimension();
  const Vec base(x.begin(), x.begin() + m);
  Vec fiber(x.begin() + m, x.end());
  const Vec base_t = jordan_exp_apply(f.factor, t, base);
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LinearFiberCoupler>) {
          fiber = jordan_exp_apply(c.fiber, t, fiber);
        } else if constexpr (std::is_same_v<T, ShearCoupler>) {
          fiber[c.fiber_axis] += c.c * (base_t[c.base_axis] - base[c.base_axis]);
        }
      },
      f.coupler);
  Vec out = base_t;
  out.insert(out.end(), fiber.begin(), fiber.end());
  return out;
}

}  // namespace

Vec evaluate_flow(const Flow& flow, const Vec& x, double t) {
  if (x.size() != flow.dim())
    throw std::invalid_argument("evaluate_flow: point dimension mismatch");
  return std::visit(
      [&](const auto& f) -> Vec {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFlow>) {
          return jordan_exp_apply(f.spec, t, x);
        } else if constexpr (std::is_same_v<T, TranslationFlow>) {
          return Vec{x[0] + t};
        } else if constexpr (std::is_same_v<T, PowerLineFlow>) {
          return Vec{powerline_eval(f, x[0], t)};
        } else if constexpr (std::is_same_v<T, RegularExtensionFlow>) {
          return extension_eval(f, x, t);
        } else {
          return rk4_integrate(f, x, t);
        }
      },
      flow.value());
}

Vec vector_field(const Flow& flow, const Vec& x) {
  if (x.size() != flow.dim())
    throw std::invalid_argument("vector_field: point dimension mismatch");
  return std::visit(
      [&](const auto& f) -> Vec {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearFlow>) {
          return jordan_apply(f.spec, x);
        } else if constexpr (std::is_same_v<T, TranslationFlow>) {
          return Vec{1.0};
        } else if constexpr (std::is_same_v<T, PowerLineFlow>) {
          return Vec{std::pow(x[0], f.n)};
        } else if constexpr (std::is_same_v<T, RegularExtensionFlow>) {
          const std::size_t m = f.factor.dimension();
          const Vec base(x.begin(), x.begin() + m);
          const Vec abase = jordan_apply(f.factor, base);
          Vec fib(f.fiber_dim, 0.0);
          std::visit(
              [&](const auto& c) {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, LinearFiberCoupler>) {
                  const Vec y(x.begin() + m, x.end());
                  fib = jordan_apply(c.fiber, y);
                } else if constexpr (std::is_same_v<C, ShearCoupler>) {
                  fib[c.fiber_axis] = c.c * abase[c.base_axis];
                }
              },
              f.coupler);
          Vec out = abase;
          out.insert(out.end(), fib.begin(), fib.end());
          return out;
        } else {
          return f.field(x);
        }
      },
      flow.value());
}

namespace {

// Signed coordinate of Φ(x,t) − x along the flow direction at x; changes
// sign when the orbit passes back through x transversally.
double directed_offset(const Flow& flow, const Vec& x, const Vec& fdir, double t) {
  return dot(sub(evaluate_flow(flow, x, t), x), fdir);
}

}  // namespace

TrajectoryInfo classify_trajectory(const Flow& flow, const Vec& x, double horizon,
                                   double tol, std::size_t samples) {
  if (!(horizon > 0.0)) throw std::invalid_argument("classify_trajectory: horizon > 0");
  TrajectoryInfo info;
  const Vec f = vector_field(flow, x);
  if (norm(f) <= tol) {
    info.kind = TrajectoryInfo::Kind::Fixed;
    info.witness.push_back(x);
    return info;
  }
  const Vec fdir = scaled(f, 1.0 / norm(f));
  const double dt = horizon / static_cast<double>(samples);
  const std::size_t witness_stride = std::max<std::size_t>(1, samples / 64);

  std::vector<double> d(samples + 1, 0.0);
  std::size_t reached = 0;
  for (std::size_t i = 1; i <= samples; ++i) {
    try {
      const Vec p = evaluate_flow(flow, x, dt * static_cast<double>(i));
      d[i] = dist(p, x);
      if (i % witness_stride == 0) info.witness.push_back(p);
      reached = i;
    } catch (const DomainEscape&) {
      break;  // orbit left the domain: non-closed at desk scale
    }
  }

  auto dist_at = [&](double t) { return dist(evaluate_flow(flow, x, t), x); };
  for (std::size_t i = 2; i < reached; ++i) {
    if (!(d[i] <= d[i - 1] && d[i] <= d[i + 1])) continue;
    const double a = dt * static_cast<double>(i - 1);
    const double b = dt * static_cast<double>(i + 1);
    double theta;
    const double pa = directed_offset(flow, x, fdir, a);
    const double pb = directed_offset(flow, x, fdir, b);
    if ((pa > 0.0) != (pb > 0.0)) {
      theta = bisect_root(
          [&](double t) { return directed_offset(flow, x, fdir, t); }, a, b,
          tol * 1e-2);
    } else {
      theta = brent_minimize(dist_at, a, b, tol * 1e-2);
    }
    if (theta > tol && dist_at(theta) <= tol) {
      info.kind = TrajectoryInfo::Kind::Periodic;
      info.theta = theta;
      return info;
    }
  }
  info.kind = TrajectoryInfo::Kind::NonClosed;
  return info;
}

}  // namespace flowshift
