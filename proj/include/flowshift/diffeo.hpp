#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "flowshift/flow.hpp"
#include "flowshift/grid.hpp"
#include "flowshift/parallel.hpp"
#include "flowshift/shift.hpp"

namespace flowshift {

/// dα(F(x)): directional derivative of α along the generating vector field.
/// Uses the analytic gradient when present, else central differences with
/// step 1e-5.
double lie_derivative(const Flow& flow, const ShiftFunction& alpha, const Vec& x);

enum class DiffeoClass {
  OrientationPreserving,  // dα(F) > −1 everywhere on the grid
  OrientationReversing,   // dα(F) < −1 everywhere on the grid
  Degenerate,             // some value within tol of −1
  Mixed                   // values on both sides: impossible for a shift map
                          // that is a diffeomorphism; flags a modeling error
};

const char* to_string(DiffeoClass c);

/// Per-grid-point Lie derivative values with the Γ⁺/Γ⁻ classification.
/// Properness is not checked on bounded desk-scale domains; the flag records
/// the standing assumption.
struct DiffeoReport {
  std::vector<double> lie_values;
  std::vector<double> local_det;  // det of the FD Jacobian of Sh(α) per point
  double min_lie = 0.0;
  double max_lie = 0.0;
  DiffeoClass classification = DiffeoClass::Degenerate;
  bool properness_assumed = true;
};

DiffeoReport diffeo_classify(const Flow& flow, const ShiftFunction& alpha,
                             const Grid& grid, double tol,
                             Exec mode = default_exec());

struct DetIdentityReport {
  double lhs = 0.0;  // det of FD Jacobian of Sh(α − α(z)) at z
  double rhs = 0.0;  // 1 + dα(F(z))
  bool pass = false;
};

/// Local determinant identity det Dh(z) = 1 + dα(F(z)) at zeros of α; for
/// α(z) ≠ 0 the check first replaces α by α − α(z).
DetIdentityReport jacobian_det_identity_check(const Flow& flow,
                                              const ShiftFunction& alpha,
                                              const Vec& z, double tol);

struct ConvexityEntry {
  double s = 0.0;
  DiffeoClass classification = DiffeoClass::Degenerate;
  bool injective = false;
  double min_far_gap = 0.0;  // smallest image gap among non-adjacent starts
  std::optional<std::pair<std::size_t, std::size_t>> collision;
};

struct ConvexityReport {
  enum class Status {
    Ok,
    InputNotInClass,  // α₀ or α₁ not in the target class
    EmptyClass        // Γ⁻ requested on a flow with fixed grid points
  };
  Status status = Status::Ok;
  DiffeoClass target = DiffeoClass::OrientationPreserving;
  std::vector<ConvexityEntry> entries;
  bool all_good = false;
};

/// Probes convexity of Γ⁺ (or Γ⁻): classifies each interpolant
/// α_s = s·α₀ + (1−s)·α₁ and tests grid injectivity of its shift map — no
/// two grid points may map within inj_tol of each other unless they started
/// within one cell diagonal.
ConvexityReport convexity_probe(const Flow& flow, const ShiftFunction& alpha0,
                                const ShiftFunction& alpha1,
                                const std::vector<double>& s_samples,
                                const Grid& grid, double tol = 1e-9,
                                DiffeoClass target = DiffeoClass::OrientationPreserving,
                                double inj_tol = 1e-6,
                                Exec mode = default_exec());

/// The interpolant s·α₀ + (1−s)·α₁ with gradients combined when available.
ShiftFunction interpolate_shift(const ShiftFunction& alpha0,
                                const ShiftFunction& alpha1, double s);

}  // namespace flowshift
