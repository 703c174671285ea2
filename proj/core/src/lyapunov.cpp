#include "issgd/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "issgd/errors.hpp"

namespace issgd {

namespace {

Matrix lyapunov_residual(const Matrix& A, const Matrix& P, const Matrix& Q) {
  const Matrix At = A.transposed();
  return At * P + P * A + Q;
}

}  // namespace

LyapunovSolution solve_lyapunov(const Matrix& A, const Matrix& Q, const NumericSettings& settings) {
  if (!A.is_square() || A.empty()) throw InputError("solve_lyapunov: A must be square");
  if (Q.rows() != A.rows() || Q.cols() != A.cols())
    throw InputError("solve_lyapunov: Q must match the dimension of A");
  require_finite(A, "solve_lyapunov");
  require_finite(Q, "solve_lyapunov");
  if (!is_symmetric(Q, settings.symmetry_tolerance))
    throw InputError("solve_lyapunov: Q must be symmetric");

  const double max_re = eig_real_parts(A, settings).max_real_part;
  if (max_re > -settings.hurwitz_margin)
    throw StabilityError("solve_lyapunov: A is not Hurwitz", max_re);

  const std::size_t n = A.rows();
  const Matrix I = Matrix::identity(n);
  const Matrix At = A.transposed();
  const Matrix op = kron(I, At) + kron(At, I);
  const Matrix rhs = -vec(Q);
  Matrix P = symmetrized(unvec(solve_linear(op, rhs, settings), n, n));

  const double qnorm = frobenius_norm(Q);
  const double bound = settings.lyapunov_residual * (1.0 + qnorm);
  double residual = frobenius_norm(lyapunov_residual(A, P, Q));
  if (residual > bound) {
    // Refine once on the symmetrized iterate before giving up.
    const Matrix r = lyapunov_residual(A, P, Q);
    P = symmetrized(P + unvec(solve_linear(op, -vec(r), settings), n, n));
    residual = frobenius_norm(lyapunov_residual(A, P, Q));
    if (residual > bound) {
      throw ConditioningError("solve_lyapunov: residual bound not met, residual " +
                                  std::to_string(residual),
                              residual / (std::numeric_limits<double>::epsilon() * (1.0 + qnorm)));
    }
  }
  return {std::move(P), residual};
}

LyapunovSolution solve_dual_lyapunov(const Matrix& A, const Matrix& N,
                                     const NumericSettings& settings) {
  return solve_lyapunov(A.transposed(), N, settings);
}

double are_residual(const Plant& plant, const Matrix& P, const NumericSettings& settings) {
  const Matrix BtP = plant.B.transposed() * P;
  const Matrix gain = solve_linear(plant.R, BtP, settings);  // R^-1 B^T P
  const Matrix res = plant.A.transposed() * P + P * plant.A + plant.Q - BtP.transposed() * gain;
  return frobenius_norm(res);
}

AreSolution kleinman_newton(const Plant& plant, const Matrix& K0, double tol, std::size_t max_iter,
                            const NumericSettings& settings) {
  plant.validate(settings);
  if (!(tol > 0.0)) throw InputError("kleinman_newton: tol must be positive");
  require_stabilizing(plant, K0, "kleinman_newton", settings);

  AreSolution out;
  out.gains.push_back(K0);
  Matrix K = K0;
  const Matrix Bt = plant.B.transposed();
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < max_iter; ++it) {
    const Matrix Acl = plant.closed_loop(K);
    const Matrix forcing = plant.Q + K.transposed() * plant.R * K;
    Matrix P = solve_lyapunov(Acl, symmetrized(forcing), settings).P;
    residual = are_residual(plant, P, settings);
    out.residuals.push_back(residual);
    out.costs.push_back(trace(P));
    Matrix next = solve_linear(plant.R, Bt * P, settings);
    out.gains.push_back(next);
    if (residual <= tol) {
      out.P_star = std::move(P);
      out.K_star = std::move(next);
      out.iterations = it + 1;
      out.final_residual = residual;
      return out;
    }
    K = std::move(next);
  }
  throw ConvergenceError("kleinman_newton: iteration limit reached", residual);
}

}  // namespace issgd
