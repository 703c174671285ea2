#include "issgd/iss_verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "issgd/errors.hpp"

namespace issgd {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InputError(std::string(what) + " must be positive");
}

}  // namespace

ComparisonFunction ComparisonFunction::k_pl(double b1, double b2) {
  require_positive(b1, "k_pl: b1");
  require_positive(b2, "k_pl: b2");
  ComparisonFunction f;
  f.kind_ = Kind::k_pl;
  f.p1_ = b1;
  f.p2_ = b2;
  f.sup_ = 1.0 / b1;
  return f;
}

ComparisonFunction ComparisonFunction::power(double c, double p) {
  require_positive(c, "power: c");
  require_positive(p, "power: p");
  ComparisonFunction f;
  f.kind_ = Kind::power;
  f.p1_ = c;
  f.p2_ = p;
  return f;
}

ComparisonFunction ComparisonFunction::rational_saturating(double c) {
  require_positive(c, "rational_saturating: c");
  ComparisonFunction f;
  f.kind_ = Kind::rational_saturating;
  f.p1_ = c;
  f.sup_ = c;
  return f;
}

ComparisonFunction ComparisonFunction::table(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw InputError("table: at least two knots required");
  if (knots.front().first != 0.0 || knots.front().second != 0.0)
    throw InputError("table: first knot must be (0, 0)");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first) || !(knots[i].second > knots[i - 1].second) ||
        !std::isfinite(knots[i].first) || !std::isfinite(knots[i].second))
      throw InputError("table: knots must be finite and strictly increasing");
  }
  ComparisonFunction f;
  f.kind_ = Kind::table;
  f.domain_sup_ = knots.back().first;
  f.sup_ = knots.back().second;
  f.knots_ = std::move(knots);
  return f;
}

ComparisonFunction ComparisonFunction::positive_definite(std::function<double(double)> fn) {
  if (!fn) throw InputError("positive_definite: function required");
  ComparisonFunction f;
  f.kind_ = Kind::positive_definite;
  f.fn_ = std::move(fn);
  return f;
}

double ComparisonFunction::operator()(double r) const {
  if (!(r >= 0.0)) throw DomainError("comparison function: argument must be nonnegative");
  switch (kind_) {
    case Kind::k_pl: return r / (p1_ * r + p2_);
    case Kind::power: return p1_ * std::pow(r, p2_);
    case Kind::rational_saturating: return p1_ * r / (1.0 + r);
    case Kind::table: {
      if (r > domain_sup_) throw DomainError("table: argument beyond the last knot");
      auto hi = std::lower_bound(knots_.begin(), knots_.end(), r,
                                 [](const auto& kv, double x) { return kv.first < x; });
      if (hi == knots_.begin()) return hi->second;
      auto lo = std::prev(hi);
      const double t = (r - lo->first) / (hi->first - lo->first);
      return lo->second + t * (hi->second - lo->second);
    }
    case Kind::positive_definite: return fn_(r);
  }
  return 0.0;
}

double ComparisonFunction::inverse(double s) const {
  if (!invertible()) throw DomainError("comparison function is only positive definite; no inverse");
  if (!(s >= 0.0)) throw DomainError("inverse: argument must be nonnegative");
  if (s >= sup_) {
    throw DisturbanceTooLargeError("inverse: value " + std::to_string(s) +
                                       " is not below the supremum " + std::to_string(sup_),
                                   s, sup_);
  }
  switch (kind_) {
    case Kind::k_pl: return p2_ * s / (1.0 - p1_ * s);
    case Kind::power: return std::pow(s / p1_, 1.0 / p2_);
    case Kind::rational_saturating: return s / (p1_ - s);
    case Kind::table: {
      auto hi = std::lower_bound(knots_.begin(), knots_.end(), s,
                                 [](const auto& kv, double x) { return kv.second < x; });
      if (hi == knots_.begin()) return hi->first;
      auto lo = std::prev(hi);
      const double t = (s - lo->second) / (hi->second - lo->second);
      return lo->first + t * (hi->first - lo->first);
    }
    case Kind::positive_definite: break;
  }
  return 0.0;
}

std::string_view to_string(ComparisonFunction::Kind kind) {
  using K = ComparisonFunction::Kind;
  switch (kind) {
    case K::k_pl: return "k_pl";
    case K::power: return "power";
    case K::rational_saturating: return "rational_saturating";
    case K::table: return "table";
    case K::positive_definite: return "positive_definite";
  }
  return "unknown";
}

ComparisonFunction k_pl_function(const LandscapeCertificate& cert) {
  return ComparisonFunction::k_pl(cert.b1, cert.b2);
}

std::size_t IssReport::gated_steps() const {
  return static_cast<std::size_t>(
      std::count_if(per_step.begin(), per_step.end(), [](const StepVerdict& v) { return v.gate_active; }));
}

std::size_t IssReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(per_step.begin(), per_step.end(), [](const StepVerdict& v) { return !v.decrease_ok; }));
}

std::optional<std::size_t> IssReport::first_failure() const {
  for (const StepVerdict& v : per_step)
    if (!v.decrease_ok) return v.k;
  return std::nullopt;
}

double verification_tolerance(double lhs, double rhs) {
  return 1e-9 * (1.0 + std::abs(lhs) + std::abs(rhs));
}

namespace {

void require_record_fields(const DescentTrajectory& traj) {
  if (traj.records.empty()) throw InputError("trajectory has no records");
  if (!std::isfinite(traj.optimum_cost)) throw InputError("trajectory optimum cost is missing");
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const IterateRecord& r = traj.records[i];
    if (!std::isfinite(r.cost) || !std::isfinite(r.step_size) || !std::isfinite(r.perturbation_norm))
      throw InputError("trajectory record " + std::to_string(i) + " has a missing field");
    if (i > 0 && r.k <= traj.records[i - 1].k)
      throw InputError("trajectory step indices must be strictly increasing");
  }
}

// Verdict for step i -> i+1. An escape after record i counts as an infinite
// increase of the checked quantity.
StepVerdict judge(std::size_t k, bool gate, double lhs, double rhs) {
  StepVerdict v;
  v.k = k;
  v.gate_active = gate;
  if (std::isinf(lhs)) {
    v.slack = -std::numeric_limits<double>::infinity();
  } else {
    v.slack = rhs - lhs + verification_tolerance(lhs, rhs);
  }
  v.decrease_ok = !gate || v.slack >= 0.0;
  return v;
}

std::size_t checked_steps(const DescentTrajectory& traj) {
  const std::size_t n = traj.records.size();
  return traj.escape_point ? n : n - 1;
}

double max_perturbation(const DescentTrajectory& traj) {
  double worst = 0.0;
  for (const IterateRecord& r : traj.records) worst = std::max(worst, r.perturbation_norm);
  return worst;
}

}  // namespace

IssReport check_gated_decrease(const DescentTrajectory& traj, const ComparisonFunction& alpha5) {
  require_record_fields(traj);
  IssReport report;
  report.check = "gated_decrease";
  const double jstar = traj.optimum_cost;
  const std::size_t steps = checked_steps(traj);
  for (std::size_t i = 0; i < steps; ++i) {
    const IterateRecord& cur = traj.records[i];
    const double gap = std::max(cur.cost - jstar, 0.0);
    const double a = alpha5(gap);
    const bool gate = cur.perturbation_norm <= 0.5 * a;
    const double lhs = i + 1 < traj.records.size() ? traj.records[i + 1].cost - cur.cost
                                                   : std::numeric_limits<double>::infinity();
    const double rhs = -(3.0 * cur.step_size / 8.0) * a * a;
    report.per_step.push_back(judge(cur.k, gate, lhs, rhs));
  }

  if (alpha5.invertible()) {
    const double e_sup = max_perturbation(traj);
    if (2.0 * e_sup < alpha5.sup()) {
      const double bound = alpha5.inverse(2.0 * e_sup);
      report.ultimate_bound = bound;
      if (bound > 0.0) {
        const InvarianceResult inv = invariance_check(traj, bound);
        report.entered_bound_at = inv.entered_bound_at;
        report.invariant_after_entry = inv.invariant_after_entry;
      }
    }
  }
  return report;
}

double ultimate_bound(const ComparisonFunction& alpha, double e_sup) {
  if (!(e_sup >= 0.0) || !std::isfinite(e_sup))
    throw InputError("ultimate_bound: disturbance size must be finite and nonnegative");
  if (!alpha.invertible())
    throw DomainError("ultimate_bound: unavailable for a positive definite comparison function");
  if (e_sup == 0.0) return 0.0;
  return alpha.inverse(2.0 * e_sup);
}

double ultimate_bound(const LandscapeCertificate& cert, double e_sup) {
  return ultimate_bound(k_pl_function(cert), e_sup);
}

double lyapunov_rate(const LandscapeCertificate& cert) { return std::min(cert.lambda_min_R, 1.0); }

double lyapunov_gate_sigma1(const LandscapeCertificate& cert, double v) {
  v = std::max(v, 0.0);
  return lyapunov_rate(cert) / (2.0 * cert.c2) * v / (1.0 + v);
}

double lyapunov_gate_sigma2(const LandscapeCertificate& cert, double v) {
  v = std::max(v, 0.0);
  return lyapunov_rate(cert) * v / (4.0 * (cert.c1 + cert.c2 * cert.J_star));
}

namespace {

IssReport check_lyapunov_decrease(const Plant& plant, const OptimalSolution& opt,
                                  const DescentTrajectory& traj, const LandscapeCertificate& cert,
                                  MethodKind expected, const char* column, const char* name) {
  if (traj.method.kind != expected) {
    throw InputError(std::string(name) + ": trajectory was produced by " +
                     std::string(to_string(traj.method.kind)) + ", expected " +
                     std::string(to_string(expected)));
  }
  require_record_fields(traj);
  auto value_at = [&](const IterateRecord& r) {
    auto it = r.lyapunov_values.find(column);
    if (it != r.lyapunov_values.end()) return it->second;
    if (r.point.empty()) throw InputError(std::string(name) + ": record lacks both point and value");
    return expected == MethodKind::natural_lqr
               ? natural_lyapunov_value(opt, r.point, r.cost)
               : gauss_newton_lyapunov_value(plant, opt, r.point, r.cost);
  };

  IssReport report;
  report.check = name;
  const double rate = lyapunov_rate(cert);
  const std::size_t steps = checked_steps(traj);
  double next_v = steps > 0 ? value_at(traj.records[0]) : 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const IterateRecord& cur = traj.records[i];
    const double v = next_v;
    const double sigma = std::min(lyapunov_gate_sigma1(cert, v), lyapunov_gate_sigma2(cert, v));
    const bool gate = cur.perturbation_norm * cur.perturbation_norm <= sigma;
    double lhs = std::numeric_limits<double>::infinity();
    if (i + 1 < traj.records.size()) {
      next_v = value_at(traj.records[i + 1]);
      lhs = next_v - v;
    }
    const double rhs = -(cur.step_size * rate / 4.0) * v;
    report.per_step.push_back(judge(cur.k, gate, lhs, rhs));
  }
  return report;
}

}  // namespace

IssReport check_v5_decrease(const Plant& plant, const OptimalSolution& opt,
                            const DescentTrajectory& traj, const LandscapeCertificate& cert) {
  return check_lyapunov_decrease(plant, opt, traj, cert, MethodKind::natural_lqr, "v5",
                                 "v5_decrease");
}

IssReport check_v6_decrease(const Plant& plant, const OptimalSolution& opt,
                            const DescentTrajectory& traj, const LandscapeCertificate& cert) {
  IssReport r = check_lyapunov_decrease(plant, opt, traj, cert, MethodKind::gauss_newton_lqr, "v6",
                                        "v6_decrease");
  r.derived_gate = true;
  return r;
}

InvarianceResult invariance_check(const DescentTrajectory& traj, double bound) {
  if (!(bound > 0.0)) throw InputError("invariance_check: bound must be positive");
  InvarianceResult out;
  const double limit = bound * (1.0 + 1e-9) + 1e-14;
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const double gap = traj.records[i].cost - traj.optimum_cost;
    if (!out.entered_bound_at) {
      if (gap <= limit) out.entered_bound_at = traj.records[i].k;
    } else if (gap > limit) {
      out.invariant_after_entry = false;
      break;
    }
  }
  if (out.entered_bound_at && traj.escape_point) out.invariant_after_entry = false;
  return out;
}

GapEnvelope gap_envelope(const std::vector<DescentTrajectory>& runs) {
  GapEnvelope env;
  for (const DescentTrajectory& t : runs) {
    if (t.records.empty()) continue;
    if (env.max_gap.size() < t.records.size()) env.max_gap.resize(t.records.size(), 0.0);
    for (std::size_t i = 0; i < t.records.size(); ++i)
      env.max_gap[i] = std::max(env.max_gap[i], t.records[i].cost - t.optimum_cost);
    env.tail_max_gap = std::max(env.tail_max_gap, t.records.back().cost - t.optimum_cost);
  }
  return env;
}

namespace {

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string to_json(const IssReport& report, int indent) {
  nlohmann::json j;
  j["check"] = report.check;
  nlohmann::json steps = nlohmann::json::array();
  for (const StepVerdict& v : report.per_step) {
    steps.push_back({{"k", v.k},
                     {"gate_active", v.gate_active},
                     {"decrease_ok", v.decrease_ok},
                     {"slack", finite_or_null(v.slack)}});
  }
  j["per_step"] = std::move(steps);
  j["ultimate_bound"] =
      report.ultimate_bound ? finite_or_null(*report.ultimate_bound) : nlohmann::json(nullptr);
  j["entered_bound_at"] =
      report.entered_bound_at ? nlohmann::json(*report.entered_bound_at) : nlohmann::json(nullptr);
  j["invariant_after_entry"] = report.invariant_after_entry;
  j["derived_gate"] = report.derived_gate;
  j["gated_steps"] = report.gated_steps();
  j["violations"] = report.violations();
  const auto first = report.first_failure();
  j["first_failure"] = first ? nlohmann::json(*first) : nlohmann::json(nullptr);
  j["passed"] = report.passed();
  return j.dump(indent);
}

}  // namespace issgd
