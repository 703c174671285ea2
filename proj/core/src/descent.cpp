#include "issgd/descent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace issgd {

Problem make_lqr_problem(const Plant& plant, const OptimalSolution& opt,
                         const NumericSettings& settings) {
  auto ctx = std::make_shared<LqrContext>(
      LqrContext{plant, opt, pl_certificate(plant, opt, settings), settings});
  Problem p;
  p.name = "lqr";
  p.optimum_cost = opt.J_star;
  p.lqr = ctx;
  p.cost = [ctx](const Matrix& K) {
    return cost(ctx->plant, make_gain(ctx->plant, K, ctx->settings), ctx->settings);
  };
  p.gradient = [ctx](const Matrix& K) {
    return gradient(ctx->plant, make_gain(ctx->plant, K, ctx->settings), ctx->settings);
  };
  p.lipschitz_on_sublevel = [ctx](double h) { return lipschitz_bound(ctx->cert, h); };
  p.pl_function = [ctx](double r) { return alpha6(ctx->cert, r); };
  p.admissibility = [ctx](const Matrix& K) {
    return all_finite(K) && make_gain(ctx->plant, K, ctx->settings).admissible(ctx->settings);
  };
  return p;
}

StepRule StepRule::fixed(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InputError("fixed step size must be positive");
  return {Kind::fixed, eta};
}

StepRule StepRule::scaled(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw InputError("scaled_paper_rule fraction must lie in (0, 1]");
  return {Kind::scaled_paper_rule, fraction};
}

std::string_view to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::standard: return "standard";
    case MethodKind::natural_lqr: return "natural_lqr";
    case MethodKind::gauss_newton_lqr: return "gauss_newton_lqr";
  }
  return "unknown";
}

MethodKind parse_method_kind(std::string_view name) {
  if (name == "standard") return MethodKind::standard;
  if (name == "natural_lqr" || name == "natural") return MethodKind::natural_lqr;
  if (name == "gauss_newton_lqr" || name == "gauss_newton") return MethodKind::gauss_newton_lqr;
  throw InputError("unknown method kind '" + std::string(name) + "'");
}

std::string_view to_string(PerturbationModel::Kind kind) {
  using K = PerturbationModel::Kind;
  switch (kind) {
    case K::zero: return "zero";
    case K::iid_ball: return "iid_ball";
    case K::constant_direction: return "constant_direction";
    case K::anti_descent: return "anti_descent";
    case K::replay: return "replay";
  }
  return "unknown";
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::max_iter: return "max_iter";
    case TerminationReason::converged: return "converged";
    case TerminationReason::left_admissible_set: return "left_admissible_set";
  }
  return "unknown";
}

TerminationReason parse_termination_reason(std::string_view name) {
  if (name == "max_iter") return TerminationReason::max_iter;
  if (name == "converged") return TerminationReason::converged;
  if (name == "left_admissible_set") return TerminationReason::left_admissible_set;
  throw InputError("unknown termination reason '" + std::string(name) + "'");
}

namespace {

void require_budget(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw InputError("perturbation budget must be finite and nonnegative");
}

}  // namespace

PerturbationModel PerturbationModel::iid_ball(double epsilon, std::uint64_t seed) {
  require_budget(epsilon);
  PerturbationModel m;
  m.kind = Kind::iid_ball;
  m.epsilon = epsilon;
  m.seed = seed;
  return m;
}

PerturbationModel PerturbationModel::constant_direction(Matrix direction, double epsilon) {
  require_budget(epsilon);
  require_finite(direction, "constant_direction");
  if (frobenius_norm(direction) == 0.0)
    throw InputError("constant_direction: direction must be nonzero");
  PerturbationModel m;
  m.kind = Kind::constant_direction;
  m.epsilon = epsilon;
  m.direction = std::move(direction);
  return m;
}

PerturbationModel PerturbationModel::anti_descent(double epsilon) {
  require_budget(epsilon);
  PerturbationModel m;
  m.kind = Kind::anti_descent;
  m.epsilon = epsilon;
  return m;
}

PerturbationModel PerturbationModel::replay(std::vector<Matrix> sequence) {
  for (const Matrix& e : sequence) require_finite(e, "replay");
  PerturbationModel m;
  m.kind = Kind::replay;
  m.sequence = std::move(sequence);
  double worst = 0.0;
  for (const Matrix& e : m.sequence) worst = std::max(worst, frobenius_norm(e));
  m.epsilon = worst;
  return m;
}

PerturbationSource::PerturbationSource(PerturbationModel model)
    : model_(std::move(model)), rng_(model_.seed) {}

Matrix PerturbationSource::next(std::size_t k, const Matrix& gradient) {
  using K = PerturbationModel::Kind;
  const std::size_t rows = gradient.rows();
  const std::size_t cols = gradient.cols();
  switch (model_.kind) {
    case K::zero:
      return Matrix(rows, cols);
    case K::iid_ball: {
      // Uniform in the Frobenius ball: Gaussian direction, radius eps * U^(1/dim).
      Matrix e(rows, cols);
      std::normal_distribution<double> normal(0.0, 1.0);
      std::uniform_real_distribution<double> uniform(0.0, 1.0);
      double norm = 0.0;
      do {
        for (double& x : e.data()) x = normal(rng_);
        norm = frobenius_norm(e);
      } while (norm == 0.0);
      const double dim = static_cast<double>(e.size());
      const double radius = model_.epsilon * std::pow(uniform(rng_), 1.0 / dim);
      return (radius / norm) * std::move(e);
    }
    case K::constant_direction: {
      if (model_.direction.rows() != rows || model_.direction.cols() != cols)
        throw InputError("constant_direction: direction shape does not match the iterate");
      return (model_.epsilon / frobenius_norm(model_.direction)) * model_.direction;
    }
    case K::anti_descent: {
      const double g = frobenius_norm(gradient);
      if (g == 0.0) return Matrix(rows, cols);
      return (-model_.epsilon / g) * gradient;
    }
    case K::replay: {
      if (k >= model_.sequence.size()) return Matrix(rows, cols);
      const Matrix& e = model_.sequence[k];
      if (e.rows() != rows || e.cols() != cols)
        throw InputError("replay: entry " + std::to_string(k) + " has the wrong shape");
      return e;
    }
  }
  return Matrix(rows, cols);
}

PointEvaluation evaluate(const Problem& problem, MethodKind kind, const Matrix& point) {
  PointEvaluation ev;
  if (problem.lqr) {
    const LqrContext& ctx = *problem.lqr;
    const Gain g = make_gain(ctx.plant, point, ctx.settings);
    const LyapunovPair pair = lyapunov_pair(ctx.plant, g, ctx.settings);
    const Matrix E = ctx.plant.R * point - ctx.plant.B.transposed() * pair.P;
    ev.cost = trace(pair.P);
    ev.gradient = 2.0 * E * pair.Y;
    switch (kind) {
      case MethodKind::standard: ev.direction = ev.gradient; break;
      case MethodKind::natural_lqr: ev.direction = 2.0 * E; break;
      case MethodKind::gauss_newton_lqr:
        ev.direction =
            point - solve_linear(ctx.plant.R, ctx.plant.B.transposed() * pair.P, ctx.settings);
        break;
    }
    return ev;
  }
  if (kind != MethodKind::standard)
    throw InputError(std::string(to_string(kind)) + " requires an LQR problem");
  ev.cost = problem.cost(point);
  ev.gradient = problem.gradient(point);
  ev.direction = ev.gradient;
  return ev;
}

double step_size(const Problem& problem, const Method& method, const Matrix& point,
                 const PointEvaluation& eval) {
  if (method.step_rule.kind == StepRule::Kind::fixed) return method.step_rule.value;
  double eta = 0.0;
  switch (method.kind) {
    case MethodKind::standard:
      eta = 1.0 / problem.lipschitz_on_sublevel(eval.cost);
      break;
    case MethodKind::natural_lqr: {
      if (!problem.lqr) throw InputError("natural_lqr requires an LQR problem");
      const LandscapeCertificate& c = problem.lqr->cert;
      eta = std::min(1.0 / (2.0 * c.norm_R), 1.0 / (6.0 * c.norm_R * c_of_K(c, eval.cost)));
      break;
    }
    case MethodKind::gauss_newton_lqr: {
      if (!problem.lqr) throw InputError("gauss_newton_lqr requires an LQR problem");
      eta = std::min(1.0, 1.0 / (4.0 * c_of_K(problem.lqr->cert, eval.cost)));
      break;
    }
  }
  (void)point;
  if (method.step_rule.kind == StepRule::Kind::scaled_paper_rule) eta *= method.step_rule.value;
  return eta;
}

double step_size(const Problem& problem, const Method& method, const Matrix& point) {
  return step_size(problem, method, point, evaluate(problem, method.kind, point));
}

namespace {

bool point_admissible(const Problem& problem, const Matrix& z) {
  if (!all_finite(z)) return false;
  return !problem.admissibility || problem.admissibility(z);
}

}  // namespace

Matrix step(const Problem& problem, const Method& method, const Matrix& point, const Matrix& e) {
  require_finite(e, "step: perturbation");
  const PointEvaluation ev = evaluate(problem, method.kind, point);
  const double eta = step_size(problem, method, point, ev);
  Matrix next = point - eta * (ev.direction + e);
  if (!point_admissible(problem, next))
    throw EscapeError("step: update left the admissible set", next);
  return next;
}

DescentTrajectory run(const Problem& problem, const Method& method,
                      const PerturbationModel& perturbation, const Matrix& start,
                      const RunOptions& options) {
  if (!point_admissible(problem, start)) throw InputError("run: start point is not admissible");

  DescentTrajectory traj;
  traj.problem_name = problem.name;
  traj.method = method;
  traj.perturbation_kind = perturbation.kind;
  traj.epsilon = perturbation.epsilon;
  traj.seed = perturbation.seed;
  traj.optimum_cost = problem.optimum_cost;

  PerturbationSource source(perturbation);
  Matrix z = start;
  for (std::size_t k = 0;; ++k) {
    PointEvaluation ev;
    try {
      ev = evaluate(problem, method.kind, z);
    } catch (const Error&) {
      if (k == 0) throw;
      // Admissible to the Hurwitz test but numerically unusable.
      traj.escape_point = z;
      traj.terminated_reason = TerminationReason::left_admissible_set;
      return traj;
    }
    if (!std::isfinite(ev.cost)) {
      if (k == 0) throw InputError("run: cost is not finite at the start point");
      traj.escape_point = z;
      traj.terminated_reason = TerminationReason::left_admissible_set;
      return traj;
    }

    IterateRecord rec;
    rec.k = k;
    rec.point = z;
    rec.cost = ev.cost;
    rec.grad_norm = frobenius_norm(ev.gradient);
    if (problem.lqr) {
      rec.lyapunov_values["v5"] = natural_lyapunov_value(problem.lqr->opt, z, ev.cost);
      rec.lyapunov_values["v6"] =
          gauss_newton_lyapunov_value(problem.lqr->plant, problem.lqr->opt, z, ev.cost);
    }

    if (ev.cost - problem.optimum_cost <= options.stop_tol) {
      traj.records.push_back(std::move(rec));
      traj.terminated_reason = TerminationReason::converged;
      return traj;
    }
    if (k >= options.max_iter) {
      traj.records.push_back(std::move(rec));
      traj.terminated_reason = TerminationReason::max_iter;
      return traj;
    }

    const double eta = step_size(problem, method, z, ev);
    const Matrix e = source.next(k, ev.gradient);
    rec.step_size = eta;
    rec.perturbation_norm = frobenius_norm(e);
    traj.records.push_back(std::move(rec));

    Matrix next = z - eta * (ev.direction + e);
    if (!point_admissible(problem, next)) {
      traj.escape_point = std::move(next);
      traj.terminated_reason = TerminationReason::left_admissible_set;
      return traj;
    }
    z = std::move(next);
  }
}

}  // namespace issgd
