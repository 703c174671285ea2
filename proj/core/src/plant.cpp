#include "issgd/plant.hpp"

#include <string>

#include "issgd/errors.hpp"

namespace issgd {

void Plant::validate(const NumericSettings& settings) const {
  const std::size_t nx = A.rows();
  if (nx == 0 || !A.is_square()) throw InputError("plant: A must be square and nonempty");
  if (B.rows() != nx || B.cols() == 0) throw InputError("plant: B must be n x m with m >= 1");
  if (Q.rows() != nx || !Q.is_square()) throw InputError("plant: Q must be n x n");
  if (R.rows() != B.cols() || !R.is_square()) throw InputError("plant: R must be m x m");
  require_finite(A, "plant.A");
  require_finite(B, "plant.B");
  require_finite(Q, "plant.Q");
  require_finite(R, "plant.R");
  if (!is_symmetric(Q, settings.symmetry_tolerance)) throw InputError("plant: Q is not symmetric");
  if (!is_symmetric(R, settings.symmetry_tolerance)) throw InputError("plant: R is not symmetric");
  if (lambda_min(Q, settings) <= settings.min_positive_eigenvalue)
    throw InputError("plant: Q is not positive definite");
  if (lambda_min(R, settings) <= settings.min_positive_eigenvalue)
    throw InputError("plant: R is not positive definite");
}

Matrix Plant::closed_loop(const Matrix& K) const { return A - B * K; }

Gain make_gain(const Plant& plant, Matrix K, const NumericSettings& settings) {
  if (K.rows() != plant.m() || K.cols() != plant.n()) {
    throw InputError("gain: expected " + std::to_string(plant.m()) + "x" +
                     std::to_string(plant.n()) + ", got " + std::to_string(K.rows()) + "x" +
                     std::to_string(K.cols()));
  }
  require_finite(K, "gain");
  const double margin = -eig_real_parts(plant.closed_loop(K), settings).max_real_part;
  return Gain{std::move(K), margin};
}

void require_stabilizing(const Plant& plant, const Matrix& K, const char* where,
                         const NumericSettings& settings) {
  const Gain g = make_gain(plant, K, settings);
  if (!g.admissible(settings)) {
    throw StabilityError(std::string(where) + ": gain is not stabilizing (A - BK not Hurwitz)",
                         -g.hurwitz_margin);
  }
}

}  // namespace issgd
