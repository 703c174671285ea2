#pragma once

#include <cstddef>

#include "issgd/linalg.hpp"

namespace issgd {

/// LQR instance: dx/dt = A x + B u with running cost x'Qx + u'Ru.
struct Plant {
  Matrix A;  ///< n x n
  Matrix B;  ///< n x m
  Matrix Q;  ///< n x n, symmetric positive definite
  Matrix R;  ///< m x m, symmetric positive definite

  std::size_t n() const noexcept { return A.rows(); }
  std::size_t m() const noexcept { return B.cols(); }

  /// Shapes, finiteness, symmetry and Q, R > 0. Throws InputError.
  void validate(const NumericSettings& settings = default_settings()) const;

  /// A - B K.
  Matrix closed_loop(const Matrix& K) const;
};

/// A feedback gain together with its stability margin -max Re eig(A - BK).
struct Gain {
  Matrix K;
  double hurwitz_margin = 0.0;

  /// Members of the admissible set have A - BK Hurwitz within the linalg margin.
  bool admissible(const NumericSettings& settings = default_settings()) const noexcept {
    return hurwitz_margin >= settings.hurwitz_margin;
  }
};

/// Wraps K with its margin. Throws InputError on a shape mismatch.
Gain make_gain(const Plant& plant, Matrix K, const NumericSettings& settings = default_settings());

/// Throws StabilityError unless K is admissible for plant.
void require_stabilizing(const Plant& plant, const Matrix& K, const char* where,
                         const NumericSettings& settings = default_settings());

}  // namespace issgd
