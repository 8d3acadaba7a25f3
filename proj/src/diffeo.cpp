#include "flowshift/diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flowshift/errors.hpp"

namespace flowshift {

double lie_derivative(const Flow& flow, const ShiftFunction& alpha, const Vec& x) {
  return dot(alpha.grad(x), vector_field(flow, x));
}

const char* to_string(DiffeoClass c) {
  switch (c) {
    case DiffeoClass::OrientationPreserving: return "orientation_preserving";
    case DiffeoClass::OrientationReversing: return "orientation_reversing";
    case DiffeoClass::Degenerate: return "degenerate";
    case DiffeoClass::Mixed: return "mixed";
  }
  return "?";
}

namespace {

DiffeoClass classify_values(const std::vector<double>& lie, double tol,
                            double* min_out, double* max_out) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool degenerate = false;
  for (double v : lie) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (std::abs(v + 1.0) <= tol) degenerate = true;
  }
  *min_out = lo;
  *max_out = hi;
  if (degenerate) return DiffeoClass::Degenerate;
  if (lo > -1.0) return DiffeoClass::OrientationPreserving;
  if (hi < -1.0) return DiffeoClass::OrientationReversing;
  return DiffeoClass::Mixed;
}

}  // namespace

DiffeoReport diffeo_classify(const Flow& flow, const ShiftFunction& alpha,
                             const Grid& grid, double tol, Exec mode) {
  DiffeoReport report;
  const std::size_t n = grid.size();
  report.lie_values.resize(n);
  report.local_det.resize(n);
  const PointMap h = shift_map(flow, alpha);
  for_each_index_guarded(
      n,
      [&](std::size_t i) {
        const Vec x = grid.point(i);
        report.lie_values[i] = lie_derivative(flow, alpha, x);
        try {
          report.local_det[i] = lu_det(jacobian_fd(h.value, x, 1e-5));
        } catch (const DomainEscape&) {
          report.local_det[i] = std::numeric_limits<double>::quiet_NaN();
        }
      },
      mode);
  report.classification =
      classify_values(report.lie_values, tol, &report.min_lie, &report.max_lie);
  return report;
}

DetIdentityReport jacobian_det_identity_check(const Flow& flow,
                                              const ShiftFunction& alpha,
                                              const Vec& z, double tol) {
  DetIdentityReport report;
  // The identity is proved at zeros of α; reduce via β = α − α(z), which has
  // the same Lie derivative.
  const double az = alpha.value(z);
  ShiftFunction beta = alpha;
  if (std::abs(az) > 1e-10) {
    const auto base = alpha.value;
    beta.value = [base, az](const Vec& x) { return base(x) - az; };
  }
  const PointMap h = shift_map(flow, beta);
  const Matrix j = jacobian_fd(h.value, z, 1e-5);
  report.lhs = lu_det(j);
  report.rhs = 1.0 + lie_derivative(flow, alpha, z);
  report.pass = std::abs(report.lhs - report.rhs) <= tol;
  return report;
}

ShiftFunction interpolate_shift(const ShiftFunction& alpha0,
                                const ShiftFunction& alpha1, double s) {
  ShiftFunction out;
  const auto f0 = alpha0.value;
  const auto f1 = alpha1.value;
  out.value = [f0, f1, s](const Vec& x) { return s * f0(x) + (1.0 - s) * f1(x); };
  if (alpha0.has_gradient() && alpha1.has_gradient()) {
    const auto g0 = alpha0.gradient;
    const auto g1 = alpha1.gradient;
    out.gradient = [g0, g1, s](const Vec& x) {
      return add(scaled(g0(x), s), scaled(g1(x), 1.0 - s));
    };
  }
  return out;
}

namespace {

// Deterministic pairwise injectivity probe: parallel violation count, then a
// serial pass to report the lexicographically first collision.
void injectivity_scan(const std::vector<Vec>& starts, const std::vector<Vec>& images,
                      double resolution, double inj_tol, Exec mode,
                      ConvexityEntry* entry) {
  const std::size_t n = starts.size();
  std::vector<unsigned char> bad(n, 0);
  std::vector<double> row_min(n, std::numeric_limits<double>::infinity());
  for_each_index(
      n,
      [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (dist(starts[i], starts[j]) <= resolution) continue;
          const double d = dist(images[i], images[j]);
          row_min[i] = std::min(row_min[i], d);
          if (d < inj_tol) bad[i] = 1;
        }
      },
      mode);
  entry->min_far_gap = std::numeric_limits<double>::infinity();
  for (double v : row_min) entry->min_far_gap = std::min(entry->min_far_gap, v);
  entry->injective = std::none_of(bad.begin(), bad.end(),
                                  [](unsigned char b) { return b != 0; });
  if (!entry->injective) {
    for (std::size_t i = 0; i < n && !entry->collision; ++i) {
      if (!bad[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (dist(starts[i], starts[j]) <= resolution) continue;
        if (dist(images[i], images[j]) < inj_tol) {
          entry->collision = {i, j};
          break;
        }
      }
    }
  }
}

}  // namespace

ConvexityReport convexity_probe(const Flow& flow, const ShiftFunction& alpha0,
                                const ShiftFunction& alpha1,
                                const std::vector<double>& s_samples,
                                const Grid& grid, double tol, DiffeoClass target,
                                double inj_tol, Exec mode) {
  ConvexityReport report;
  report.target = target;

  if (target == DiffeoClass::OrientationReversing) {
    // dα(F) = 0 at fixed points, so Γ⁻ is empty for flows with fixed points.
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (norm(vector_field(flow, grid.point(i))) <= tol) {
        report.status = ConvexityReport::Status::EmptyClass;
        return report;
      }
    }
  }

  const DiffeoReport r0 = diffeo_classify(flow, alpha0, grid, tol, mode);
  const DiffeoReport r1 = diffeo_classify(flow, alpha1, grid, tol, mode);
  if (r0.classification != target || r1.classification != target) {
    report.status = ConvexityReport::Status::InputNotInClass;
    return report;
  }

  const std::size_t n = grid.size();
  std::vector<Vec> starts(n);
  for (std::size_t i = 0; i < n; ++i) starts[i] = grid.point(i);
  const double resolution = grid.cell_diagonal();

  bool all_good = true;
  for (double s : s_samples) {
    ConvexityEntry entry;
    entry.s = s;
    const ShiftFunction as = interpolate_shift(alpha0, alpha1, s);
    const DiffeoReport rs = diffeo_classify(flow, as, grid, tol, mode);
    entry.classification = rs.classification;

    const PointMap hs = shift_map(flow, as);
    std::vector<Vec> images(n);
    for_each_index_guarded(
        n, [&](std::size_t i) { images[i] = hs.value(starts[i]); }, mode);
    injectivity_scan(starts, images, resolution, inj_tol, mode, &entry);

    all_good = all_good && entry.classification == target && entry.injective;
    report.entries.push_back(std::move(entry));
  }
  report.all_good = all_good;
  return report;
}

}  // namespace flowshift
