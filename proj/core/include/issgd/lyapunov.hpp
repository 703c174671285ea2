#pragma once

#include <cstddef>
#include <vector>

#include "issgd/linalg.hpp"
#include "issgd/plant.hpp"

namespace issgd {

struct LyapunovSolution {
  Matrix P;                    ///< symmetric solution
  double residual_norm = 0.0;  ///< Frobenius norm of the equation residual
};

/// Solves A^T P + P A + Q = 0 for Hurwitz A by Kronecker vectorization,
/// (I (x) A^T + A^T (x) I) vec(P) = -vec(Q). The result is symmetrized.
///
/// Throws StabilityError if A is not Hurwitz, InputError on shape mismatch or
/// asymmetric Q, ConditioningError if the residual bound cannot be met.
LyapunovSolution solve_lyapunov(const Matrix& A, const Matrix& Q,
                                const NumericSettings& settings = default_settings());

/// Solves A Y + Y A^T + N = 0 (the controllability-Gramian orientation).
LyapunovSolution solve_dual_lyapunov(const Matrix& A, const Matrix& N,
                                     const NumericSettings& settings = default_settings());

/// Frobenius norm of A^T P + P A + Q - P B R^-1 B^T P.
double are_residual(const Plant& plant, const Matrix& P,
                    const NumericSettings& settings = default_settings());

struct AreSolution {
  Matrix P_star;
  Matrix K_star;
  std::size_t iterations = 0;
  double final_residual = 0.0;

  /// Gains K(0), K(1), ..., K(iterations); the last equals K_star.
  std::vector<Matrix> gains;
  /// ARE residual of P(k), the value matrix of gains[k].
  std::vector<double> residuals;
  /// Tr(P(k)), nonincreasing.
  std::vector<double> costs;
};

/// Kleinman-Newton iteration: P(k) solves the closed-loop Lyapunov equation of
/// K(k), then K(k+1) = R^-1 B^T P(k). Stops once the ARE residual of P(k) is
/// at most tol.
///
/// Throws StabilityError if K0 is not stabilizing, ConvergenceError carrying
/// the last residual if max_iter policy updates do not reach tol.
AreSolution kleinman_newton(const Plant& plant, const Matrix& K0, double tol, std::size_t max_iter,
                            const NumericSettings& settings = default_settings());

}  // namespace issgd
