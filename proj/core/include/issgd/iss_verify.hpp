#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "issgd/descent.hpp"
#include "issgd/landscape.hpp"
#include "issgd/plant.hpp"

namespace issgd {

/// A scalar comparison function: zero at zero, increasing on [0, domain_sup).
class ComparisonFunction {
 public:
  enum class Kind { k_pl, power, rational_saturating, table, positive_definite };

  /// r / (b1 r + b2), supremum 1 / b1.
  static ComparisonFunction k_pl(double b1, double b2);
  /// c r^p, unbounded.
  static ComparisonFunction power(double c, double p);
  /// c r / (1 + r), supremum c.
  static ComparisonFunction rational_saturating(double c);
  /// Piecewise linear through (r_i, v_i); the first knot must be (0, 0) and both
  /// coordinates strictly increasing. Defined on [0, r_last].
  static ComparisonFunction table(std::vector<std::pair<double, double>> knots);
  /// Positive definite only: no inverse, so no ultimate bound.
  static ComparisonFunction positive_definite(std::function<double(double)> fn);

  Kind kind() const noexcept { return kind_; }
  double operator()(double r) const;
  /// Supremum of the values, +inf when unbounded.
  double sup() const noexcept { return sup_; }
  /// Right end of the domain, +inf unless a table.
  double domain_sup() const noexcept { return domain_sup_; }
  bool invertible() const noexcept { return kind_ != Kind::positive_definite; }
  /// Throws DisturbanceTooLargeError if s >= sup(), DomainError if not invertible.
  double inverse(double s) const;

 private:
  Kind kind_ = Kind::power;
  double p1_ = 0.0;
  double p2_ = 0.0;
  double sup_ = std::numeric_limits<double>::infinity();
  double domain_sup_ = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> knots_;
  std::function<double(double)> fn_;
};

std::string_view to_string(ComparisonFunction::Kind kind);

/// alpha6 of a landscape certificate.
ComparisonFunction k_pl_function(const LandscapeCertificate& cert);

struct StepVerdict {
  std::size_t k = 0;
  bool gate_active = false;
  bool decrease_ok = true;  ///< always true when the gate is inactive
  double slack = 0.0;       ///< rhs - lhs + tolerance; negative means violated
};

struct IssReport {
  std::string check;
  std::vector<StepVerdict> per_step;
  std::optional<double> ultimate_bound;
  std::optional<std::size_t> entered_bound_at;
  bool invariant_after_entry = true;
  /// Set when the gate is instantiated by analogy rather than quoted.
  bool derived_gate = false;

  std::size_t gated_steps() const;
  std::size_t violations() const;
  std::optional<std::size_t> first_failure() const;
  bool passed() const { return violations() == 0; }
};

/// Absolute slack 1e-9 (1 + |lhs| + |rhs|).
double verification_tolerance(double lhs, double rhs);

/// Wherever ||e(k)|| <= alpha5(gap)/2, checks
///   J(k+1) - J(k) <= -(3 eta / 8) alpha5(gap)^2.
/// Also fills the ultimate bound for the largest recorded perturbation when
/// alpha5 is invertible and the budget fits, and runs the invariance check.
IssReport check_gated_decrease(const DescentTrajectory& traj, const ComparisonFunction& alpha5);

/// alpha^-1(2 e_sup). Throws DisturbanceTooLargeError past the supremum.
double ultimate_bound(const ComparisonFunction& alpha, double e_sup);
double ultimate_bound(const LandscapeCertificate& cert, double e_sup);

/// Rate constant used for the Lyapunov checks: min(lambda_min(R), 1).
double lyapunov_rate(const LandscapeCertificate& cert);
/// Gate sigma(v) = min(sigma1(v), sigma2(v)) on ||W||_F^2.
double lyapunov_gate_sigma1(const LandscapeCertificate& cert, double v);
double lyapunov_gate_sigma2(const LandscapeCertificate& cert, double v);

/// Gated decrease V(k+1) - V(k) <= -(eta rate / 4) V(k) of
/// V5 = <K-K*, K-K*>_{Y*} + J - J*. Requires a natural_lqr trajectory.
IssReport check_v5_decrease(const Plant& plant, const OptimalSolution& opt,
                            const DescentTrajectory& traj, const LandscapeCertificate& cert);
/// Same template for V6 = J - J* + <K-K*, R(K-K*)>_{Y*} / 2 on a
/// gauss_newton_lqr trajectory. The report is flagged derived_gate.
IssReport check_v6_decrease(const Plant& plant, const OptimalSolution& opt,
                            const DescentTrajectory& traj, const LandscapeCertificate& cert);

struct InvarianceResult {
  std::optional<std::size_t> entered_bound_at;
  bool invariant_after_entry = true;
};

/// First k with gap <= bound, and whether every later gap stays within it.
/// Throws InputError unless bound > 0.
InvarianceResult invariance_check(const DescentTrajectory& traj, double bound);

/// Descriptive max-over-runs envelope of the cost gap.
struct GapEnvelope {
  std::vector<double> max_gap;  ///< indexed by k
  double tail_max_gap = 0.0;    ///< max over runs of the final gap
};
GapEnvelope gap_envelope(const std::vector<DescentTrajectory>& runs);

/// Stable JSON rendering of a report.
std::string to_json(const IssReport& report, int indent = 2);

}  // namespace issgd
