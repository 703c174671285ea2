#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "issgd/errors.hpp"
#include "issgd/fixtures.hpp"
#include "issgd/landscape.hpp"
#include "support/oracles.hpp"

using namespace issgd;

namespace {

const Plant& scalar_plant() {
  static const Plant p = one_d_lqr().plant;
  return p;
}

Gain scalar_gain(double k) { return make_gain(scalar_plant(), Matrix::scalar(k)); }

const OptimalSolution& scalar_optimum() {
  static const OptimalSolution o = solve_optimum(scalar_plant(), Matrix::scalar(2.0));
  return o;
}

// A stabilizing gain drawn around K* for random property tests.
Gain perturbed_gain(const PlantSample& s, oracle::Gen& gen, double radius) {
  const Matrix dir = gen.matrix(s.plant.m(), s.plant.n());
  for (double scale = radius;; scale *= 0.5) {
    Gain g = make_gain(s.plant, s.optimum.K_star + scale * dir);
    if (g.hurwitz_margin >= 1e-3) return g;
  }
}

double rel_err(const Matrix& got, const Matrix& want) {
  return frobenius_norm(got - want) / std::max(frobenius_norm(want), 1e-300);
}

}  // namespace

TEST(LyapunovPair, OneDimensionalExample) {
  const LyapunovPair at2 = lyapunov_pair(scalar_plant(), scalar_gain(2.0));
  EXPECT_NEAR(at2.P(0, 0), 1.25, 1e-14);
  EXPECT_NEAR(at2.Y(0, 0), 0.25, 1e-14);
  const LyapunovPair at1 = lyapunov_pair(scalar_plant(), scalar_gain(1.0));
  EXPECT_NEAR(at1.P(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(at1.Y(0, 0), 0.5, 1e-14);
  EXPECT_THROW(lyapunov_pair(scalar_plant(), scalar_gain(-1.0)), StabilityError);
}

TEST(LyapunovPair, RandomPlantMatchesQuadrature) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PlantSample s = random_plant(4, 2, seed);
    const LyapunovPair pair = lyapunov_pair(s.plant, s.K0);
    const Matrix Acl = s.plant.closed_loop(s.K0.K);
    const Matrix Pq = oracle::lyapunov_quadrature(Acl, s.plant.Q + s.K0.K.transposed() * s.plant.R * s.K0.K);
    const Matrix Yq = oracle::lyapunov_quadrature(Acl.transposed(), Matrix::identity(4));
    EXPECT_LE(frobenius_norm(pair.P - Pq), 1e-6) << "seed " << seed;
    EXPECT_LE(frobenius_norm(pair.Y - Yq), 1e-6) << "seed " << seed;
    // Tr(P) = Tr((Q + K^T R K) Y)
    const double j2 = trace((s.plant.Q + s.K0.K.transposed() * s.plant.R * s.K0.K) * pair.Y);
    EXPECT_LE(std::abs(trace(pair.P) - j2), 1e-7 * std::abs(j2));
  }
}

TEST(Cost, OneDimensionalExample) {
  EXPECT_NEAR(cost(scalar_plant(), scalar_gain(2.0)), 1.25, 1e-14);
  EXPECT_NEAR(cost(scalar_plant(), scalar_gain(1.0)), 1.0, 1e-14);
  EXPECT_THROW(cost(scalar_plant(), scalar_gain(0.0)), StabilityError);
}

TEST(Cost, AboveOptimumOnRandomGains) {
  oracle::Gen gen(31);
  const PlantSample s = random_plant(3, 2, 7);
  for (int i = 0; i < 100; ++i) {
    const Gain g = perturbed_gain(s, gen, 2.0);
    EXPECT_GE(cost(s.plant, g) - s.optimum.J_star, -1e-10 * s.optimum.J_star);
  }
}

TEST(Gradient, OneDimensionalExample) {
  EXPECT_NEAR(gradient(scalar_plant(), scalar_gain(2.0))(0, 0), 0.375, 1e-14);
  EXPECT_NEAR(gradient(scalar_plant(), scalar_gain(1.0))(0, 0), 0.0, 1e-14);
}

TEST(Gradient, MatchesFiniteDifferences) {
  oracle::Gen gen(32);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = gen.size(1, 4);
    const PlantSample s = random_plant(n, gen.size(1, std::min<std::size_t>(n, 2)), seed);
    const Gain g = s.K0;
    auto J = [&](const Matrix& K) { return cost(s.plant, make_gain(s.plant, K)); };
    const Matrix fd = oracle::finite_difference_gradient(J, g.K, 1e-5);
    EXPECT_LE(rel_err(gradient(s.plant, g), fd), 1e-4) << "seed " << seed;
  }
}

TEST(NaturalGradient, OneDimensionalExampleAndIdentity) {
  EXPECT_NEAR(natural_gradient(scalar_plant(), scalar_gain(2.0))(0, 0), 1.5, 1e-14);
  EXPECT_NEAR(natural_gradient(scalar_plant(), scalar_gain(1.0))(0, 0), 0.0, 1e-14);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PlantSample s = random_plant(4, 2, seed);
    const LyapunovPair pair = lyapunov_pair(s.plant, s.K0);
    EXPECT_LE(frobenius_norm(natural_gradient(s.plant, s.K0) * pair.Y - gradient(s.plant, s.K0)),
              1e-8 * (1.0 + frobenius_norm(gradient(s.plant, s.K0))));
  }
}

TEST(GaussNewtonDirection, OneDimensionalExampleAndIdentity) {
  EXPECT_NEAR(gauss_newton_direction(scalar_plant(), scalar_gain(2.0))(0, 0), -0.75, 1e-14);
  EXPECT_NEAR(gauss_newton_direction(scalar_plant(), scalar_gain(1.0))(0, 0), 0.0, 1e-14);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PlantSample s = random_plant(4, 2, seed);
    const Matrix nat = natural_gradient(s.plant, s.K0);
    const Matrix expected = -0.5 * solve_linear(s.plant.R, nat);
    EXPECT_LE(frobenius_norm(gauss_newton_direction(s.plant, s.K0) - expected),
              1e-10 * (1.0 + frobenius_norm(expected)));
  }
}

TEST(HessianAction, AtOptimumReducesToFirstTerm) {
  const PlantSample s = random_plant(3, 2, 3);
  const Gain kstar = make_gain(s.plant, s.optimum.K_star);
  oracle::Gen gen(33);
  const Matrix dK = gen.matrix(2, 3);
  const Matrix expected = 2.0 * s.plant.R * dK * s.optimum.Y_star;
  EXPECT_LE(rel_err(hessian_action(s.plant, kstar, dK), expected), 1e-8);
}

TEST(HessianAction, MatchesDirectionalDifferenceOfGradient) {
  oracle::Gen gen(34);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PlantSample s = random_plant(3, 2, seed);
    const Matrix dK = gen.matrix(2, 3);
    auto grad = [&](const Matrix& K) { return gradient(s.plant, make_gain(s.plant, K)); };
    const Matrix fd = oracle::directional_difference(grad, s.K0.K, dK, 1e-5);
    EXPECT_LE(rel_err(hessian_action(s.plant, s.K0, dK), fd), 1e-4) << "seed " << seed;
  }
}

TEST(HessianAction, LinearAndSymmetric) {
  oracle::Gen gen(35);
  const PlantSample s = random_plant(4, 2, 9);
  const Matrix d1 = gen.matrix(2, 4);
  const Matrix d2 = gen.matrix(2, 4);
  const Matrix h1 = hessian_action(s.plant, s.K0, d1);
  const Matrix h2 = hessian_action(s.plant, s.K0, d2);
  EXPECT_LE(frobenius_norm(hessian_action(s.plant, s.K0, 2.0 * d1) - 2.0 * h1),
            1e-10 * frobenius_norm(h1));
  EXPECT_NEAR(frobenius_inner(d1, h2), frobenius_inner(d2, h1), 1e-7 * (1.0 + std::abs(frobenius_inner(d1, h2))));
  EXPECT_THROW(hessian_action(s.plant, s.K0, Matrix(4, 2)), InputError);
}

TEST(Certificate, OneDimensionalConstants) {
  const LandscapeCertificate c = pl_certificate(scalar_plant(), scalar_optimum());
  EXPECT_NEAR(c.a1, 2.0, 1e-14);
  EXPECT_NEAR(c.a2, 0.0, 1e-14);
  EXPECT_NEAR(c.b1, 2.0, 1e-12);
  EXPECT_NEAR(c.b2, 0.5, 1e-12);
  EXPECT_NEAR(c.disturbance_sup, 0.5, 1e-12);
  EXPECT_NEAR(scalar_optimum().Y_star(0, 0), 0.5, 1e-14);
  EXPECT_EQ(alpha6(c, 0.0), 0.0);
  EXPECT_NEAR(alpha6(c, 0.25), 0.25, 1e-12);
  EXPECT_LE(alpha6(c, 0.25), 0.375);
  EXPECT_GT(c.c1, 0.0);
  EXPECT_GT(c.c2, 0.0);
}

TEST(Certificate, RejectsNonStationaryOptimum) {
  OptimalSolution bogus = scalar_optimum();
  bogus.K_star = Matrix::scalar(2.0);
  EXPECT_THROW(pl_certificate(scalar_plant(), bogus), InputError);
}

TEST(Certificate, Alpha6IncreasingWithSupremum) {
  const PlantSample s = random_plant(3, 1, 4);
  const LandscapeCertificate c = pl_certificate(s.plant, s.optimum);
  double prev = 0.0;
  for (double r = 1e-3; r < 1e6; r *= 3.0) {
    const double a = alpha6(c, r);
    EXPECT_GT(a, prev);
    EXPECT_LT(a, c.disturbance_sup);
    prev = a;
  }
}

TEST(LipschitzBound, OneDimensionalValueAndDomain) {
  const LandscapeCertificate c = pl_certificate(scalar_plant(), scalar_optimum());
  EXPECT_NEAR(lipschitz_bound(c, 1.25), 49.375, 1e-12);
  EXPECT_GT(lipschitz_bound(c, 2.0), lipschitz_bound(c, 1.25));
  EXPECT_THROW(lipschitz_bound(c, 0.9), DomainError);
}

TEST(LipschitzBound, HoldsOnSampledPairs) {
  oracle::Gen gen(36);
  const PlantSample s = random_plant(3, 2, 5);
  const LandscapeCertificate c = pl_certificate(s.plant, s.optimum);
  const double h = cost(s.plant, s.K0);
  int checked = 0;
  while (checked < 200) {
    const Gain g1 = perturbed_gain(s, gen, 1.0);
    const Gain g2 = perturbed_gain(s, gen, 1.0);
    if (cost(s.plant, g1) > h || cost(s.plant, g2) > h) continue;
    const double lhs = frobenius_norm(gradient(s.plant, g1) - gradient(s.plant, g2));
    EXPECT_LE(lhs, lipschitz_bound(c, h) * frobenius_norm(g1.K - g2.K));
    ++checked;
  }
}

TEST(GainNormBound, OneDimensionalAndSampled) {
  const LandscapeCertificate c = pl_certificate(scalar_plant(), scalar_optimum());
  EXPECT_NEAR(gain_norm_bound(c, 1.25), 2.5, 1e-14);
  EXPECT_LT(gain_norm_bound(c, 1e-12), 1e-11);
  EXPECT_THROW(gain_norm_bound(c, 0.0), DomainError);

  oracle::Gen gen(37);
  const PlantSample s = random_plant(4, 2, 6);
  const LandscapeCertificate rc = pl_certificate(s.plant, s.optimum);
  for (int i = 0; i < 100; ++i) {
    const Gain g = perturbed_gain(s, gen, 3.0);
    EXPECT_LE(spectral_norm(g.K), gain_norm_bound(rc, cost(s.plant, g)));
  }
}

TEST(CofK, OneDimensionalAndMonotoneInCost) {
  EXPECT_NEAR(c_of_K(scalar_plant(), scalar_gain(2.0), scalar_optimum()), 1.625, 1e-14);
  const LandscapeCertificate c = pl_certificate(scalar_plant(), scalar_optimum());
  EXPECT_NEAR(c_of_K(c, 0.0), 1.0, 0.0);

  oracle::Gen gen(38);
  const PlantSample s = random_plant(3, 2, 8);
  for (int i = 0; i < 100; ++i) {
    const Gain g = perturbed_gain(s, gen, 2.0);
    const LyapunovPair pair = lyapunov_pair(s.plant, g);
    const Matrix k_plus = solve_linear(s.plant.R, s.plant.B.transposed() * pair.P);
    const Matrix d = g.K - k_plus;
    const double lhs = weighted_inner(d, s.plant.R * d, s.optimum.Y_star);
    const double cK = c_of_K(s.plant, g, s.optimum);
    EXPECT_GE(cK, 1.0);
    EXPECT_LE(lhs, cK * trace(pair.P - s.optimum.P_star) + 1e-9);
  }
}

TEST(LyapunovValues, OneDimensional) {
  const OptimalSolution& o = scalar_optimum();
  EXPECT_NEAR(natural_lyapunov_value(o, Matrix::scalar(2.0), 1.25), 0.75, 1e-14);
  EXPECT_NEAR(gauss_newton_lyapunov_value(scalar_plant(), o, Matrix::scalar(2.0), 1.25), 0.5, 1e-14);
  EXPECT_NEAR(natural_lyapunov_value(o, o.K_star, o.J_star), 0.0, 1e-14);
  EXPECT_NEAR(gauss_newton_lyapunov_value(scalar_plant(), o, o.K_star, o.J_star), 0.0, 1e-14);
}

TEST(Landscape, RiemannianAndPdiffIdentities) {
  oracle::Gen gen(39);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PlantSample s = random_plant(3, 2, seed);
    const Gain g = perturbed_gain(s, gen, 1.0);
    const LyapunovPair pair = lyapunov_pair(s.plant, g);
    const Matrix dk = g.K - s.optimum.K_star;
    const double gap = trace(pair.P) - s.optimum.J_star;
    const double riem = weighted_inner(dk, s.plant.R * dk, pair.Y);
    EXPECT_LE(std::abs(gap - riem), 1e-7 * std::abs(gap)) << "seed " << seed;

    const Matrix k_plus = solve_linear(s.plant.R, s.plant.B.transposed() * pair.P);
    const double lhs = 2.0 * weighted_inner(dk, s.plant.R * (g.K - k_plus), s.optimum.Y_star);
    const double rhs = gap + weighted_inner(dk, s.plant.R * dk, s.optimum.Y_star);
    EXPECT_LE(std::abs(lhs - rhs), 1e-7 * std::abs(rhs)) << "seed " << seed;
  }
}
