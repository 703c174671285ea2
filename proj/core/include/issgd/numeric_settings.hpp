#pragma once

#include <cstddef>
#include <string_view>

namespace issgd {

/// Every tolerance the library uses, in one place. Callers may pass a
/// modified copy to any operation; `default_settings()` picks a preset from
/// the ISSGD_NUMERIC_PROFILE environment variable.
struct NumericSettings {
  /// A matrix is Hurwitz iff its largest eigenvalue real part is <= -hurwitz_margin.
  double hurwitz_margin = 1e-9;

  /// QR sweeps allowed per eigenvalue in the Hessenberg QR iteration.
  std::size_t eig_iterations_per_value = 60;

  /// Reciprocal condition estimate below which a linear solve is refused.
  double min_reciprocal_condition = 1e-14;

  /// Relative asymmetry tolerated in inputs that must be symmetric.
  double symmetry_tolerance = 1e-10;

  /// Lyapunov residual bound: ||residual||_F <= lyapunov_residual * (1 + ||Q||_F).
  double lyapunov_residual = 1e-8;

  /// Smallest eigenvalue accepted for matrices that must be positive definite.
  double min_positive_eigenvalue = 1e-12;

  /// Default ARE residual target for Kleinman-Newton.
  double are_tolerance = 1e-10;
  std::size_t are_max_iterations = 100;

  /// Cyclic Jacobi sweeps for symmetric eigenvalue problems.
  std::size_t jacobi_max_sweeps = 100;

  /// Absolute slack of verification inequalities, scaled by (1 + |lhs| + |rhs|).
  double verification_slack = 1e-9;

  static NumericSettings preset(std::string_view name);
};

/// Preset selected by ISSGD_NUMERIC_PROFILE ("strict" or "default"), read once.
const NumericSettings& default_settings();

}  // namespace issgd
