#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "flowshift/linalg.hpp"

namespace flowshift {

/// Real Jordan cell J_p(λ): p×p, λ on the diagonal, 1 on the first
/// subdiagonal.
struct RealJordanBlock {
  double lambda = 0.0;
  std::size_t p = 1;
};

/// Rotation cell J_p(R(α,β)): 2p×2p, R(α,β) = [[α,−β],[β,α]] on the diagonal
/// and 2×2 identities on the first block subdiagonal. Requires β ≠ 0.
struct RotationJordanBlock {
  double alpha = 0.0;
  double beta = 1.0;
  std::size_t p = 1;
};

using JordanBlock = std::variant<RealJordanBlock, RotationJordanBlock>;

/// Symbolic block-diagonal description of a matrix in real Jordan form.
/// The blocks use the subdiagonal convention (identity blocks below the
/// diagonal); most textbooks put them above.
struct JordanSpec {
  std::vector<JordanBlock> blocks;

  std::size_t dimension() const;
  /// Throws std::invalid_argument on β = 0, p < 1, p > 20, non-finite
  /// entries, or an empty block list.
  void validate() const;
};

struct EigenvaluePair {
  double re = 0.0;
  double im = 0.0;
  std::size_t multiplicity = 1;
};

using Spectrum = std::vector<EigenvaluePair>;

/// Eigenvalues read directly off the blocks: λ per real block, α ± iβ per
/// rotation block.
Spectrum spectrum(const JordanSpec& spec);

Matrix build_jordan_matrix(const JordanSpec& spec);

/// Closed-form e^{At} for A in real Jordan form: e^{R(α,β)t} is the scaled
/// rotation matrix and e^{J_p(A)t} is lower block-triangular with
/// (t^j/j!)·e^{At} on the j-th block subdiagonal.
Matrix jordan_exp(const JordanSpec& spec, double t);

/// e^{At}x without materializing the full matrix.
Vec jordan_exp_apply(const JordanSpec& spec, double t, const Vec& x);

/// A·x without materializing the full matrix.
Vec jordan_apply(const JordanSpec& spec, const Vec& x);

/// Series oracle: e^{mt} by scaling-and-squaring with a truncated Taylor
/// series, accumulated in long double. Absolute entry error ≤ 1e-12 for
/// ‖mt‖∞ ≤ 10. Throws std::range_error when intermediate entries overflow.
Matrix matrix_exp_oracle(const Matrix& m, double t);

/// Minimum period over closed trajectories of the linear flow e^{At}:
/// min 2π/|β| over blocks with a purely imaginary pair (α = 0, β ≠ 0), or
/// nullopt when no such block exists (no closed trajectory).
std::optional<double> min_closed_period(const JordanSpec& spec);

}  // namespace flowshift
