#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "issgd/errors.hpp"
#include "issgd/landscape.hpp"
#include "issgd/linalg.hpp"
#include "issgd/plant.hpp"

namespace issgd {

/// Plant, optimum and certificate shared read-only by LQR problems.
struct LqrContext {
  Plant plant;
  OptimalSolution opt;
  LandscapeCertificate cert;
  NumericSettings settings;
};

/// An objective exposing the hooks the perturbed iteration needs. Points are
/// matrices: gains for LQR, 1 x 1 for scalar objectives.
struct Problem {
  std::string name;
  std::function<double(const Matrix&)> cost;
  std::function<Matrix(const Matrix&)> gradient;
  /// L(h): Lipschitz constant of the gradient on the sublevel set {J <= h}.
  std::function<double(double)> lipschitz_on_sublevel;
  /// alpha5: ||grad J(z)|| >= alpha5(J(z) - J*).
  std::function<double(double)> pl_function;
  double optimum_cost = 0.0;
  std::function<bool(const Matrix&)> admissibility;
  /// Present for LQR problems; enables the natural and Gauss-Newton methods.
  std::shared_ptr<const LqrContext> lqr;
};

/// Builds the LQR problem, computing the landscape certificate.
Problem make_lqr_problem(const Plant& plant, const OptimalSolution& opt,
                         const NumericSettings& settings = default_settings());

enum class MethodKind { standard, natural_lqr, gauss_newton_lqr };

struct StepRule {
  enum class Kind { paper_rule, fixed, scaled_paper_rule };
  Kind kind = Kind::paper_rule;
  double value = 1.0;  ///< eta for fixed, fraction for scaled_paper_rule

  static StepRule paper() { return {}; }
  static StepRule fixed(double eta);
  static StepRule scaled(double fraction);
};

struct Method {
  MethodKind kind = MethodKind::standard;
  StepRule step_rule;
};

std::string_view to_string(MethodKind kind);
MethodKind parse_method_kind(std::string_view name);

struct PerturbationModel {
  enum class Kind { zero, iid_ball, constant_direction, anti_descent, replay };
  Kind kind = Kind::zero;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  Matrix direction;             ///< constant_direction
  std::vector<Matrix> sequence;  ///< replay

  static PerturbationModel zero() { return {}; }
  static PerturbationModel iid_ball(double epsilon, std::uint64_t seed);
  static PerturbationModel constant_direction(Matrix direction, double epsilon);
  static PerturbationModel anti_descent(double epsilon);
  static PerturbationModel replay(std::vector<Matrix> sequence);
};

std::string_view to_string(PerturbationModel::Kind kind);

/// Stateful emitter of e(k) for one run. Every emitted e satisfies
/// ||e||_F <= epsilon except for replay, which is passed through unchanged
/// (and is zero past the end of the sequence).
class PerturbationSource {
 public:
  explicit PerturbationSource(PerturbationModel model);

  Matrix next(std::size_t k, const Matrix& gradient);

 private:
  PerturbationModel model_;
  std::mt19937_64 rng_;
};

struct IterateRecord {
  std::size_t k = 0;
  Matrix point;
  double cost = 0.0;
  double grad_norm = 0.0;          ///< Frobenius norm of the Euclidean gradient
  double step_size = 0.0;          ///< eta(k); 0 on a terminal record
  double perturbation_norm = 0.0;  ///< ||e(k)||_F; 0 on a terminal record
  std::map<std::string, double> lyapunov_values;
};

enum class TerminationReason { max_iter, converged, left_admissible_set };
std::string_view to_string(TerminationReason reason);
TerminationReason parse_termination_reason(std::string_view name);

struct DescentTrajectory {
  std::vector<IterateRecord> records;
  TerminationReason terminated_reason = TerminationReason::max_iter;

  std::string problem_name;
  Method method;
  PerturbationModel::Kind perturbation_kind = PerturbationModel::Kind::zero;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double optimum_cost = 0.0;
  /// The first iterate outside the admissible set, when the run escaped.
  std::optional<Matrix> escape_point;
};

/// Raised by step() when the update leaves the admissible set.
class EscapeError : public Error {
 public:
  EscapeError(const std::string& what, Matrix offending)
      : Error(what), offending_(std::move(offending)) {}
  const Matrix& offending_iterate() const noexcept { return offending_; }

 private:
  Matrix offending_;
};

/// Everything the update needs at one point, from a single landscape solve.
struct PointEvaluation {
  double cost = 0.0;
  Matrix gradient;
  /// d with z+ = z - eta (d + e): the gradient, 2(RK - B^T P) or K - R^-1 B^T P.
  Matrix direction;
};

PointEvaluation evaluate(const Problem& problem, MethodKind kind, const Matrix& point);

/// eta(k) under the method's step rule.
double step_size(const Problem& problem, const Method& method, const Matrix& point);
double step_size(const Problem& problem, const Method& method, const Matrix& point,
                 const PointEvaluation& eval);

/// One perturbed update z - eta (d + e). Throws EscapeError if the result is
/// not admissible.
Matrix step(const Problem& problem, const Method& method, const Matrix& point, const Matrix& e);

struct RunOptions {
  std::size_t max_iter = 100000;
  double stop_tol = 1e-10;
};

/// Iterates from start until cost - J* <= stop_tol, max_iter steps, or escape.
/// Escape is reported through terminated_reason, never thrown.
DescentTrajectory run(const Problem& problem, const Method& method,
                      const PerturbationModel& perturbation, const Matrix& start,
                      const RunOptions& options = {});

}  // namespace issgd
