#include "issgd/landscape.hpp"

#include <cmath>
#include <string>

#include "issgd/errors.hpp"

namespace issgd {

namespace {

void require_admissible(const Gain& K, const char* where, const NumericSettings& settings) {
  if (!K.admissible(settings)) {
    throw StabilityError(std::string(where) + ": gain is outside the admissible set",
                         -K.hurwitz_margin);
  }
}

// R K - B^T P_K
Matrix optimality_residual(const Plant& plant, const Matrix& K, const Matrix& P) {
  return plant.R * K - plant.B.transposed() * P;
}

}  // namespace

LyapunovPair lyapunov_pair(const Plant& plant, const Gain& K, const NumericSettings& settings) {
  require_admissible(K, "lyapunov_pair", settings);
  const Matrix Acl = plant.closed_loop(K.K);
  const Matrix forcing = symmetrized(plant.Q + K.K.transposed() * plant.R * K.K);
  LyapunovPair pair;
  pair.P = solve_lyapunov(Acl, forcing, settings).P;
  pair.Y = solve_dual_lyapunov(Acl, Matrix::identity(plant.n()), settings).P;
  return pair;
}

double cost(const Plant& plant, const Gain& K, const NumericSettings& settings) {
  require_admissible(K, "cost", settings);
  const Matrix Acl = plant.closed_loop(K.K);
  const Matrix forcing = symmetrized(plant.Q + K.K.transposed() * plant.R * K.K);
  return trace(solve_lyapunov(Acl, forcing, settings).P);
}

Matrix gradient(const Plant& plant, const Gain& K, const NumericSettings& settings) {
  const LyapunovPair pair = lyapunov_pair(plant, K, settings);
  return 2.0 * optimality_residual(plant, K.K, pair.P) * pair.Y;
}

Matrix natural_gradient(const Plant& plant, const Gain& K, const NumericSettings& settings) {
  const LyapunovPair pair = lyapunov_pair(plant, K, settings);
  return 2.0 * optimality_residual(plant, K.K, pair.P);
}

Matrix gauss_newton_direction(const Plant& plant, const Gain& K, const NumericSettings& settings) {
  const LyapunovPair pair = lyapunov_pair(plant, K, settings);
  const Matrix improved = solve_linear(plant.R, plant.B.transposed() * pair.P, settings);
  return -(K.K - improved);
}

Matrix hessian_action(const Plant& plant, const Gain& K, const Matrix& dK,
                      const NumericSettings& settings) {
  if (dK.rows() != K.K.rows() || dK.cols() != K.K.cols())
    throw InputError("hessian_action: dK must have the shape of K");
  require_finite(dK, "hessian_action");
  const LyapunovPair pair = lyapunov_pair(plant, K, settings);
  const Matrix Acl = plant.closed_loop(K.K);
  const Matrix E = optimality_residual(plant, K.K, pair.P);

  // (A-BK)^T dP + dP (A-BK) + dK^T E + E^T dK = 0
  const Matrix dP_forcing = dK.transposed() * E + E.transposed() * dK;
  const Matrix dP = solve_lyapunov(Acl, symmetrized(dP_forcing), settings).P;
  // (A-BK) dY + dY (A-BK)^T - B dK Y - Y dK^T B^T = 0
  const Matrix BdKY = plant.B * dK * pair.Y;
  const Matrix dY_forcing = -(BdKY + BdKY.transposed());
  const Matrix dY = solve_dual_lyapunov(Acl, symmetrized(dY_forcing), settings).P;

  return 2.0 * (plant.R * dK - plant.B.transposed() * dP) * pair.Y + 2.0 * E * dY;
}

OptimalSolution solve_optimum(const Plant& plant, const Matrix& K0, const NumericSettings& settings) {
  const AreSolution are =
      kleinman_newton(plant, K0, settings.are_tolerance, settings.are_max_iterations, settings);
  OptimalSolution opt;
  opt.K_star = are.K_star;
  opt.P_star = are.P_star;
  opt.Y_star =
      solve_dual_lyapunov(plant.closed_loop(are.K_star), Matrix::identity(plant.n()), settings).P;
  opt.J_star = trace(are.P_star);
  return opt;
}

LandscapeCertificate pl_certificate(const Plant& plant, const OptimalSolution& opt,
                                    const NumericSettings& settings) {
  plant.validate(settings);
  const Matrix stationarity = optimality_residual(plant, opt.K_star, opt.P_star);
  if (frobenius_norm(stationarity) > 1e-8 * (1.0 + frobenius_norm(opt.P_star))) {
    throw InputError("pl_certificate: optimum does not satisfy R K* = B^T P*");
  }

  LandscapeCertificate c;
  c.J_star = opt.J_star;
  c.norm_A = spectral_norm(plant.A, settings);
  c.norm_B = spectral_norm(plant.B, settings);
  c.norm_R = spectral_norm(plant.R, settings);
  c.lambda_min_Q = lambda_min(plant.Q, settings);
  c.lambda_min_R = lambda_min(plant.R, settings);
  const std::vector<double> ey = symmetric_eigenvalues(opt.Y_star, settings);
  c.lambda_min_Y_star = ey.front();
  c.lambda_max_Y_star = ey.back();
  c.norm_Y_star = ey.back();
  const Matrix BRinvBt = plant.B * solve_linear(plant.R, plant.B.transposed(), settings);
  c.norm_B_Rinv_Bt = spectral_norm(BRinvBt, settings);
  c.closed_loop_fro_star = frobenius_norm(plant.closed_loop(opt.K_star));

  c.a1 = 2.0 * c.norm_B / c.lambda_min_R;
  c.a2 = std::sqrt(2.0 * c.norm_A / c.lambda_min_R);

  const double ysum = c.lambda_min_Y_star + c.lambda_max_Y_star;
  c.b1 = c.norm_B * std::sqrt(2.0 * ysum) / (c.lambda_min_R * std::sqrt(c.lambda_min_Y_star));
  c.b2 = c.closed_loop_fro_star * c.closed_loop_fro_star * std::sqrt(c.lambda_min_Y_star) *
         std::sqrt(ysum) / (std::sqrt(2.0) * c.norm_B);
  c.disturbance_sup = 1.0 / c.b1;

  c.c1 = (3.0 * c.lambda_min_R + 2.0 * c.norm_R) / (2.0 * c.norm_R * c.lambda_min_R) *
         c.norm_Y_star;
  c.c2 = 3.0 / (2.0 * c.lambda_min_Q);
  return c;
}

double alpha6(const LandscapeCertificate& cert, double r) {
  if (r < 0.0) throw DomainError("alpha6: argument must be nonnegative");
  return r / (cert.b1 * r + cert.b2);
}

double lipschitz_bound(const LandscapeCertificate& cert, double h) {
  if (!std::isfinite(h) || h < cert.J_star - 1e-9 * (1.0 + cert.J_star)) {
    throw DomainError("lipschitz_bound: h = " + std::to_string(h) +
                      " is below the optimal cost " + std::to_string(cert.J_star));
  }
  const double lq = cert.lambda_min_Q;
  const double nb = cert.norm_B;
  const double nr = cert.norm_R;
  return 2.0 * nr / lq * h + 8.0 * cert.a2 * nb * nr / (lq * lq) * std::pow(h, 2.5) +
         8.0 * nb * (cert.a1 * nr + nb) / (lq * lq) * h * h * h;
}

double gain_norm_bound(const LandscapeCertificate& cert, double j) {
  if (!(j > 0.0)) throw DomainError("gain_norm_bound: cost level must be positive");
  return cert.a1 * j + cert.a2 * std::sqrt(j);
}

double c_of_K(const LandscapeCertificate& cert, double trace_P) {
  return 1.0 + cert.norm_Y_star * cert.norm_B_Rinv_Bt * trace_P;
}

double c_of_K(const Plant& plant, const Gain& K, const OptimalSolution& opt,
              const NumericSettings& settings) {
  const double tp = cost(plant, K, settings);
  const double norm_y = lambda_max(opt.Y_star, settings);
  const Matrix BRinvBt = plant.B * solve_linear(plant.R, plant.B.transposed(), settings);
  return 1.0 + norm_y * spectral_norm(BRinvBt, settings) * tp;
}

double natural_lyapunov_value(const OptimalSolution& opt, const Matrix& K, double cost_K) {
  const Matrix d = K - opt.K_star;
  return weighted_inner(d, d, opt.Y_star) + cost_K - opt.J_star;
}

double gauss_newton_lyapunov_value(const Plant& plant, const OptimalSolution& opt, const Matrix& K,
                                   double cost_K) {
  const Matrix d = K - opt.K_star;
  return cost_K - opt.J_star + 0.5 * weighted_inner(d, plant.R * d, opt.Y_star);
}

}  // namespace issgd
