#pragma once

#include "issgd/linalg.hpp"
#include "issgd/lyapunov.hpp"
#include "issgd/plant.hpp"

namespace issgd {

/// Value matrix and state Gramian of a stabilizing gain:
///   (A-BK)^T P + P (A-BK) + Q + K^T R K = 0
///   (A-BK) Y + Y (A-BK)^T + I = 0
struct LyapunovPair {
  Matrix P;
  Matrix Y;
};

struct OptimalSolution {
  Matrix K_star;
  Matrix P_star;
  Matrix Y_star;
  double J_star = 0.0;  ///< Tr(P_star)
};

/// Constants of the LQR landscape attached to one plant. Plant norms are
/// cached here so bounds can be evaluated without the plant.
struct LandscapeCertificate {
  // ||K|| <= a1 J + a2 sqrt(J)
  double a1 = 0.0;
  double a2 = 0.0;
  // alpha6(r) = r / (b1 r + b2)
  double b1 = 0.0;
  double b2 = 0.0;
  double disturbance_sup = 0.0;  ///< 1 / b1, the supremum of alpha6
  // Disturbance gain constants of the natural-gradient Lyapunov function.
  double c1 = 0.0;
  double c2 = 0.0;

  double J_star = 0.0;
  double norm_A = 0.0;
  double norm_B = 0.0;
  double norm_R = 0.0;
  double lambda_min_Q = 0.0;
  double lambda_min_R = 0.0;
  double lambda_min_Y_star = 0.0;
  double lambda_max_Y_star = 0.0;
  double norm_Y_star = 0.0;
  double norm_B_Rinv_Bt = 0.0;
  double closed_loop_fro_star = 0.0;  ///< ||A - B K*||_F
};

LyapunovPair lyapunov_pair(const Plant& plant, const Gain& K,
                           const NumericSettings& settings = default_settings());

/// J(K) = Tr(P_K).
double cost(const Plant& plant, const Gain& K, const NumericSettings& settings = default_settings());

/// 2 (R K - B^T P_K) Y_K.
Matrix gradient(const Plant& plant, const Gain& K, const NumericSettings& settings = default_settings());

/// Steepest descent under the Y_K metric: 2 (R K - B^T P_K).
Matrix natural_gradient(const Plant& plant, const Gain& K,
                        const NumericSettings& settings = default_settings());

/// -(K - R^-1 B^T P_K).
Matrix gauss_newton_direction(const Plant& plant, const Gain& K,
                              const NumericSettings& settings = default_settings());

/// Hessian of J applied to dK, from the increments dP_K and dY_K of the two
/// Lyapunov equations.
Matrix hessian_action(const Plant& plant, const Gain& K, const Matrix& dK,
                      const NumericSettings& settings = default_settings());

/// The optimum from Kleinman-Newton started at the stabilizing K0.
OptimalSolution solve_optimum(const Plant& plant, const Matrix& K0,
                              const NumericSettings& settings = default_settings());

/// Derives every landscape constant. Throws InputError if opt does not
/// satisfy R K* = B^T P*.
LandscapeCertificate pl_certificate(const Plant& plant, const OptimalSolution& opt,
                                    const NumericSettings& settings = default_settings());

/// alpha6(r) = r / (b1 r + b2).
double alpha6(const LandscapeCertificate& cert, double r);

/// Lipschitz constant of the gradient over the sublevel set {J <= h}. Throws
/// DomainError if h < J*.
double lipschitz_bound(const LandscapeCertificate& cert, double h);

/// a1 j + a2 sqrt(j). Throws DomainError if j <= 0.
double gain_norm_bound(const LandscapeCertificate& cert, double j);

/// c(K) = 1 + ||Y*|| ||B R^-1 B^T|| Tr(P_K).
double c_of_K(const Plant& plant, const Gain& K, const OptimalSolution& opt,
              const NumericSettings& settings = default_settings());
double c_of_K(const LandscapeCertificate& cert, double trace_P);

/// <K-K*, K-K*>_{Y*} + J(K) - J*.
double natural_lyapunov_value(const OptimalSolution& opt, const Matrix& K, double cost_K);
/// J(K) - J* + 1/2 <K-K*, R (K-K*)>_{Y*}.
double gauss_newton_lyapunov_value(const Plant& plant, const OptimalSolution& opt, const Matrix& K,
                                   double cost_K);

}  // namespace issgd
