#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "issgd/descent.hpp"
#include "issgd/errors.hpp"
#include "issgd/fixtures.hpp"
#include "issgd/iss_verify.hpp"
#include "issgd/lyapunov.hpp"

using namespace issgd;

namespace {

struct OneD {
  Plant plant = one_d_lqr().plant;
  OptimalSolution opt = solve_optimum(plant, Matrix::scalar(2.0));
  Problem problem = make_lqr_problem(plant, opt);
};

const OneD& oned() {
  static const OneD o;
  return o;
}

Method method(MethodKind kind, StepRule rule = StepRule::paper()) { return Method{kind, rule}; }

}  // namespace

TEST(StepSize, OneDimensionalPaperRules) {
  const Matrix K = Matrix::scalar(2.0);
  EXPECT_NEAR(step_size(oned().problem, method(MethodKind::standard), K), 1.0 / 49.375, 1e-15);
  EXPECT_NEAR(step_size(oned().problem, method(MethodKind::natural_lqr), K), 1.0 / (6.0 * 1.625), 1e-15);
  EXPECT_NEAR(step_size(oned().problem, method(MethodKind::gauss_newton_lqr), K), 1.0 / 6.5, 1e-15);
  EXPECT_EQ(step_size(oned().problem, method(MethodKind::standard, StepRule::fixed(0.3)), K), 0.3);
  EXPECT_NEAR(step_size(oned().problem, method(MethodKind::gauss_newton_lqr, StepRule::scaled(0.5)), K),
              0.5 / 6.5, 1e-15);
}

TEST(StepRule, Validation) {
  EXPECT_THROW(StepRule::fixed(0.0), InputError);
  EXPECT_THROW(StepRule::fixed(-1.0), InputError);
  EXPECT_THROW(StepRule::scaled(0.0), InputError);
  EXPECT_THROW(StepRule::scaled(1.5), InputError);
  EXPECT_NO_THROW(StepRule::scaled(1.0));
}

TEST(Step, QuarticScalarProblem) {
  const Problem p = scalar_example("example2").to_problem();
  const Method m = method(MethodKind::standard);
  const double eta = step_size(p, m, Matrix::scalar(1.0));
  EXPECT_NEAR(eta, 1.0 / 3.0, 1e-15);
  const Matrix next = step(p, m, Matrix::scalar(1.0), Matrix::scalar(0.0));
  EXPECT_NEAR(next(0, 0), 1.0 - eta, 1e-15);
  EXPECT_THROW(step(p, method(MethodKind::natural_lqr), Matrix::scalar(1.0), Matrix::scalar(0.0)),
               InputError);
}

TEST(Step, GaussNewtonUnitStepIsKleinmanStep) {
  const Matrix next = step(oned().problem, method(MethodKind::gauss_newton_lqr, StepRule::fixed(1.0)),
                           Matrix::scalar(2.0), Matrix::scalar(0.0));
  EXPECT_NEAR(next(0, 0), 1.25, 1e-14);
}

TEST(Step, StandardDecreaseIdentity) {
  for (double eta : {0.02, 0.1}) {
    for (double K : {2.0, 5.0}) {
      const Matrix next = step(oned().problem, method(MethodKind::standard, StepRule::fixed(eta)),
                               Matrix::scalar(K), Matrix::scalar(0.0));
      const double lhs = OneDimensionalLqr::cost(next(0, 0)) - OneDimensionalLqr::cost(K);
      const double rhs = -eta * OneDimensionalLqr::m1(K, eta) * (OneDimensionalLqr::cost(K) - 1.0);
      EXPECT_NEAR(lhs, rhs, 1e-10) << "eta " << eta << " K " << K;
    }
  }
}

TEST(Step, NaturalDecreaseIdentity) {
  for (double eta : {0.02, 0.1}) {
    for (double K : {2.0, 5.0}) {
      const Matrix next = step(oned().problem, method(MethodKind::natural_lqr, StepRule::fixed(eta)),
                               Matrix::scalar(K), Matrix::scalar(0.0));
      const double lhs = OneDimensionalLqr::cost(next(0, 0)) - OneDimensionalLqr::cost(K);
      const double rhs = -eta * OneDimensionalLqr::m2(K, eta) * (OneDimensionalLqr::cost(K) - 1.0);
      EXPECT_NEAR(lhs, rhs, 1e-10) << "eta " << eta << " K " << K;
    }
  }
}

TEST(Step, EscapeThrowsWithOffendingIterate) {
  try {
    step(oned().problem, method(MethodKind::standard, StepRule::fixed(0.5)), Matrix::scalar(0.5),
         Matrix::scalar(10.0));
    FAIL() << "expected EscapeError";
  } catch (const EscapeError& e) {
    EXPECT_LT(e.offending_iterate()(0, 0), 0.0);
  }
}

TEST(Run, ZeroPerturbationStandardConverges) {
  const DescentTrajectory t = run(oned().problem, method(MethodKind::standard),
                                  PerturbationModel::zero(), Matrix::scalar(3.0));
  EXPECT_EQ(t.terminated_reason, TerminationReason::converged);
  EXPECT_LE(t.records.back().cost - 1.0, 1e-6);
  for (std::size_t i = 1; i < t.records.size(); ++i) {
    EXPECT_EQ(t.records[i].k, i);
    EXPECT_LE(t.records[i].cost, t.records[i - 1].cost + 1e-10);
  }
  EXPECT_EQ(t.records.back().step_size, 0.0);
}

TEST(Run, ZeroPerturbationMonotoneForAllMethods) {
  const PlantSample s = random_plant(3, 2, 17);
  const Problem p = make_lqr_problem(s.plant, s.optimum);
  for (MethodKind kind : {MethodKind::standard, MethodKind::natural_lqr, MethodKind::gauss_newton_lqr}) {
    RunOptions opts;
    opts.max_iter = 3000;
    const DescentTrajectory t = run(p, method(kind), PerturbationModel::zero(), s.K0.K, opts);
    EXPECT_NE(t.terminated_reason, TerminationReason::left_admissible_set);
    for (std::size_t i = 1; i < t.records.size(); ++i)
      EXPECT_LE(t.records[i].cost, t.records[i - 1].cost + 1e-10) << to_string(kind) << " step " << i;
  }
}

TEST(Run, GaussNewtonUnitStepReproducesKleinman) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PlantSample s = random_plant(4, 2, seed);
    const AreSolution are = kleinman_newton(s.plant, s.K0.K, 1e-10, 100);
    const Problem p = make_lqr_problem(s.plant, s.optimum);
    RunOptions opts;
    opts.max_iter = are.gains.size() - 1;
    opts.stop_tol = 0.0;
    const DescentTrajectory t = run(p, method(MethodKind::gauss_newton_lqr, StepRule::fixed(1.0)),
                                    PerturbationModel::zero(), s.K0.K, opts);
    ASSERT_GE(t.records.size(), 2u);
    for (std::size_t i = 0; i < t.records.size(); ++i)
      EXPECT_LE(frobenius_norm(t.records[i].point - are.gains[i]), 1e-10) << "seed " << seed << " i " << i;
  }
}

TEST(Run, GatedIidBallStaysAdmissibleAndInsideBound) {
  const double gap0 = OneDimensionalLqr::cost(3.0) - 1.0;
  const LandscapeCertificate& cert = oned().problem.lqr->cert;
  const double eps = 0.4 * alpha6(cert, gap0);
  const double bound = ultimate_bound(cert, eps);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RunOptions opts;
    opts.max_iter = 3000;
    const DescentTrajectory t = run(oned().problem, method(MethodKind::standard),
                                    PerturbationModel::iid_ball(eps, seed), Matrix::scalar(3.0), opts);
    EXPECT_NE(t.terminated_reason, TerminationReason::left_admissible_set);
    EXPECT_LE(t.records.back().cost - 1.0, bound);
    for (const IterateRecord& r : t.records) EXPECT_LE(r.perturbation_norm, eps * (1.0 + 1e-15));
  }
}

TEST(Run, ReplayOfZerosMatchesZeroModel) {
  RunOptions opts;
  opts.max_iter = 50;
  const DescentTrajectory a = run(oned().problem, method(MethodKind::natural_lqr),
                                  PerturbationModel::zero(), Matrix::scalar(4.0), opts);
  const DescentTrajectory b =
      run(oned().problem, method(MethodKind::natural_lqr),
          PerturbationModel::replay(std::vector<Matrix>(20, Matrix::scalar(0.0))), Matrix::scalar(4.0), opts);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].point, b.records[i].point);
    EXPECT_EQ(a.records[i].cost, b.records[i].cost);
  }
}

TEST(Run, DeterministicForFixedSeed) {
  const PlantSample s = random_plant(3, 1, 2);
  const Problem p = make_lqr_problem(s.plant, s.optimum);
  RunOptions opts;
  opts.max_iter = 200;
  const auto go = [&] {
    return run(p, method(MethodKind::natural_lqr), PerturbationModel::iid_ball(1e-3, 42), s.K0.K, opts);
  };
  const DescentTrajectory a = go();
  const DescentTrajectory b = go();
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].point, b.records[i].point);
    EXPECT_EQ(a.records[i].perturbation_norm, b.records[i].perturbation_norm);
  }
}

TEST(Run, EscapeIsReportedNotThrown) {
  std::vector<Matrix> push(3, Matrix::scalar(400.0));
  const DescentTrajectory t = run(oned().problem, method(MethodKind::standard),
                                  PerturbationModel::replay(push), Matrix::scalar(3.0));
  EXPECT_EQ(t.terminated_reason, TerminationReason::left_admissible_set);
  ASSERT_TRUE(t.escape_point.has_value());
  EXPECT_LE((*t.escape_point)(0, 0), 0.0);
  EXPECT_FALSE(t.records.empty());
}

TEST(Run, RejectsInadmissibleStart) {
  EXPECT_THROW(run(oned().problem, method(MethodKind::standard), PerturbationModel::zero(),
                   Matrix::scalar(-1.0)),
               InputError);
}

TEST(Perturbation, ModelsRespectBudget) {
  const Matrix g{{3.0, -4.0}};
  PerturbationSource ball(PerturbationModel::iid_ball(0.7, 9));
  for (std::size_t k = 0; k < 1000; ++k) EXPECT_LE(frobenius_norm(ball.next(k, g)), 0.7 * (1 + 1e-15));

  PerturbationSource anti(PerturbationModel::anti_descent(0.5));
  const Matrix e = anti.next(0, g);
  EXPECT_NEAR(e(0, 0), -0.3, 1e-15);
  EXPECT_NEAR(e(0, 1), 0.4, 1e-15);
  EXPECT_EQ(anti.next(1, Matrix(1, 2)), Matrix(1, 2));

  PerturbationSource cst(PerturbationModel::constant_direction(Matrix{{0.0, 2.0}}, 0.25));
  EXPECT_EQ(cst.next(0, g), (Matrix{{0.0, 0.25}}));
  EXPECT_THROW(cst.next(0, Matrix(2, 1)), InputError);
  EXPECT_THROW(PerturbationModel::constant_direction(Matrix(1, 2), 0.1), InputError);
  EXPECT_THROW(PerturbationModel::iid_ball(-1.0, 0), InputError);

  PerturbationSource rep(PerturbationModel::replay({Matrix{{1.0, 1.0}}}));
  EXPECT_EQ(rep.next(0, g), (Matrix{{1.0, 1.0}}));
  EXPECT_EQ(rep.next(1, g), Matrix(1, 2));
}

TEST(Perturbation, BallSamplesFillTheBall) {
  // Radius^dim is uniform on [0,1] for uniform samples in a dim-ball.
  PerturbationSource ball(PerturbationModel::iid_ball(1.0, 3));
  const Matrix g(2, 2);
  double mean = 0.0;
  const int count = 20000;
  for (int k = 0; k < count; ++k) mean += std::pow(frobenius_norm(ball.next(k, g)), 4.0);
  EXPECT_NEAR(mean / count, 0.5, 0.01);
}

TEST(Names, RoundTrip) {
  for (MethodKind k : {MethodKind::standard, MethodKind::natural_lqr, MethodKind::gauss_newton_lqr})
    EXPECT_EQ(parse_method_kind(to_string(k)), k);
  for (TerminationReason r : {TerminationReason::max_iter, TerminationReason::converged,
                              TerminationReason::left_admissible_set})
    EXPECT_EQ(parse_termination_reason(to_string(r)), r);
  EXPECT_THROW(parse_method_kind("adam"), InputError);
}
