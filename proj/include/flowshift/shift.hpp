#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "flowshift/flow.hpp"
#include "flowshift/grid.hpp"
#include "flowshift/parallel.hpp"

namespace flowshift {

/// Scalar field α on a domain: the time each point is shifted along its
/// trajectory. Carries an optional analytic gradient; without one, central
/// finite differences are used.
struct ShiftFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;  // may be empty
  std::optional<Grid> domain_hint;

  double operator()(const Vec& x) const { return value(x); }
  bool has_gradient() const { return static_cast<bool>(gradient); }
  Vec grad(const Vec& x, double fd_step = 1e-5) const;

  static ShiftFunction constant(double c);
};

/// Checks a supplied analytic gradient against central differences on the
/// grid (tolerance 1e-4 per the ShiftFunction contract).
bool validate_gradient(const ShiftFunction& alpha, const Grid& grid,
                       double tol = 1e-4);

/// Pointwise evaluatable map ℝᵈ→ℝᵈ with an optional directional derivative
/// (x, v) ↦ D f(x)·v used to sharpen quadratures and Jacobians.
struct PointMap {
  std::function<Vec(const Vec&)> value;
  std::function<Vec(const Vec&, const Vec&)> dir_deriv;  // may be empty

  Vec operator()(const Vec& x) const { return value(x); }
  bool has_derivative() const { return static_cast<bool>(dir_deriv); }
};

/// Sh(α): x ↦ Φ(x, α(x)). The directional derivative is attached when the
/// flow is closed-form and α carries a gradient.
PointMap shift_map(const Flow& flow, const ShiftFunction& alpha);

/// σ with Sh(σ) = Sh(α)∘Sh(β): σ = β + α∘Sh(β).
ShiftFunction compose_shift_functions(const ShiftFunction& alpha,
                                      const ShiftFunction& beta, const Flow& flow);

/// σ with Sh(σ)∘Sh(γ) = id: σ = −γ∘g⁻¹ where g = Sh(γ). The inverse is
/// evaluated pointwise by Newton seeded from the nearest grid preimage.
/// Throws NotInvertible when the grid diffeomorphism check fails.
ShiftFunction invert_shift_function(const ShiftFunction& gamma, const Flow& flow,
                                    const Grid& grid);

/// True iff max over the grid of |Φ(x,μ(x)) − x| ≤ tol.
bool kernel_membership(const Flow& flow, const ShiftFunction& mu, const Grid& grid,
                       double tol, Exec mode = default_exec());

struct PeriodSample {
  Vec point;
  TrajectoryInfo info;
};

/// Structure of the kernel Z_id = Sh⁻¹(id) as sampled on a grid.
struct KernelReport {
  enum class Verdict {
    Trivial,              // Z_id = {0}
    InfiniteCyclic,       // Z_id = ν·ℤ with nowhere-zero generator ν
    FullPeriodicLattice,  // fixed-point set has interior at grid resolution;
                          // kernel is every function vanishing off it
    Indeterminate         // sampled periods admit no common generator
  };
  Verdict verdict = Verdict::Indeterminate;
  std::optional<ShiftFunction> generator;
  double nu_value = 0.0;             // generator value (constant at desk scale)
  double max_identity_error = 0.0;   // max |Φ(x,ν(x)) − x| over the grid
  std::vector<PeriodSample> evidence;
};

/// Desk-scale kernel analysis: Trivial when some sampled trajectory is
/// non-closed or some sampled fixed point has trivial tangent flow; when all
/// regular samples are periodic, searches the smallest positive ν with
/// ν/θ(x) an integer (relative tolerance 1e-4) at every sample and verifies
/// Sh(ν) = id. Ambiguity yields Indeterminate rather than a guess.
KernelReport kernel_generator(const Flow& flow, const Grid& grid, double horizon,
                              double tol = 1e-6, Exec mode = default_exec());

/// Injectivity radius in flow time: 0.49·θ_min when a periodic trajectory
/// passes through the probe neighborhood of x, otherwise 1.
double injectivity_bound(const Flow& flow, const Vec& x, double probe_radius,
                         double horizon = 100.0, double tol = 1e-6);

}  // namespace flowshift
