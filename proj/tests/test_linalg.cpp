#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <vector>

#include "issgd/errors.hpp"
#include "issgd/linalg.hpp"
#include "issgd/numeric_settings.hpp"
#include "support/oracles.hpp"

using namespace issgd;

namespace {

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Matrix, ConstructionAndAccess) {
  Matrix m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(1, 2), 6.0);
  EXPECT_EQ(m.transposed()(2, 1), 6.0);
  EXPECT_EQ(Matrix::identity(3)(1, 1), 1.0);
  EXPECT_EQ(Matrix::identity(3)(0, 1), 0.0);
  EXPECT_THROW((Matrix{{1, 2}, {3}}), InputError);
}

TEST(Matrix, ArithmeticShapesChecked) {
  Matrix a{{1, 2}, {3, 4}};
  Matrix b{{0, 1}, {1, 0}};
  EXPECT_EQ(a * b, (Matrix{{2, 1}, {4, 3}}));
  EXPECT_EQ(a + b, (Matrix{{1, 3}, {4, 4}}));
  EXPECT_EQ(2.0 * a, (Matrix{{2, 4}, {6, 8}}));
  EXPECT_THROW(a * Matrix(3, 1), InputError);
  EXPECT_THROW(a + Matrix(2, 3), InputError);
}

TEST(SpectralNorm, Examples) {
  EXPECT_NEAR(spectral_norm(Matrix::identity(3)), 1.0, 1e-14);
  EXPECT_NEAR(spectral_norm(Matrix{{3, 0}, {0, 1}}), 3.0, 1e-14);
  Matrix bad{{1, std::numeric_limits<double>::quiet_NaN()}};
  EXPECT_THROW(spectral_norm(bad), InputError);
}

TEST(SpectralNorm, MatchesPowerIterationOracle) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = gen.matrix(4, 3);
    const double expected = oracle::spectral_norm_power(m);
    EXPECT_LE(std::abs(spectral_norm(m) - expected), 1e-10 * expected) << "trial " << trial;
  }
}

TEST(FrobeniusNorm, Examples) {
  EXPECT_EQ(frobenius_norm(Matrix(3, 2)), 0.0);
  EXPECT_NEAR(frobenius_norm(Matrix{{3, 4}}), 5.0, 1e-15);
}

TEST(FrobeniusNorm, NormSandwichProperty) {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = gen.size(1, 6);
    const std::size_t c = gen.size(1, 6);
    const Matrix m = gen.matrix(r, c, -3.0, 3.0);
    const double s = spectral_norm(m);
    const double f = frobenius_norm(m);
    EXPECT_LE(s, f * (1.0 + 1e-12));
    EXPECT_LE(f, std::sqrt(static_cast<double>(std::min(r, c))) * s * (1.0 + 1e-12));
  }
}

TEST(EigRealParts, Examples) {
  const SpectrumSummary neg = eig_real_parts(-1.0 * Matrix::identity(2));
  EXPECT_EQ(sorted(neg.real_parts), (std::vector<double>{-1.0, -1.0}));
  EXPECT_EQ(neg.max_real_part, -1.0);

  const SpectrumSummary rot = eig_real_parts(Matrix{{0, 1}, {-1, 0}});
  ASSERT_EQ(rot.real_parts.size(), 2u);
  for (double x : rot.real_parts) EXPECT_NEAR(x, 0.0, 1e-14);

  EXPECT_THROW(eig_real_parts(Matrix(2, 3)), InputError);
}

TEST(EigRealParts, CompanionMatricesWithChosenRoots) {
  oracle::Gen gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::complex<double>> roots;
    const std::size_t n = gen.size(1, 8);
    // Clustered roots are ill-conditioned in companion form for any QR
    // implementation, so keep them apart.
    auto separated = [&](std::complex<double> z) {
      for (const auto& r : roots)
        if (std::abs(r - z) < 0.3) return false;
      return true;
    };
    while (roots.size() < n) {
      if (roots.size() + 2 <= n && gen.uniform(0, 1) < 0.4) {
        const std::complex<double> z(gen.uniform(-3.0, -0.1), gen.uniform(0.2, 2.0));
        if (!separated(z)) continue;
        roots.push_back(z);
        roots.push_back(std::conj(z));
      } else {
        const std::complex<double> z(gen.uniform(-5.0, -0.1), 0.0);
        if (separated(z)) roots.push_back(z);
      }
    }
    std::vector<double> expected;
    for (const auto& r : roots) expected.push_back(r.real());
    const SpectrumSummary s = eig_real_parts(oracle::companion(roots));
    ASSERT_EQ(s.real_parts.size(), n);
    const std::vector<double> got = sorted(s.real_parts);
    expected = sorted(expected);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(got[i], expected[i], 1e-8) << "trial " << trial << " index " << i;
    EXPECT_EQ(s.max_real_part, *std::max_element(s.real_parts.begin(), s.real_parts.end()));
  }
}

TEST(EigRealParts, SymmetricSumEqualsTrace) {
  oracle::Gen gen(14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.size(1, 10);
    const Matrix s = gen.symmetric(n);
    const SpectrumSummary sp = eig_real_parts(s);
    double sum = 0.0;
    for (double x : sp.real_parts) sum += x;
    const double tr = trace(s);
    EXPECT_LE(std::abs(sum - tr), 1e-8 * (1.0 + std::abs(tr)));
    // The symmetric solver must agree with the general one.
    const std::vector<double> jac = symmetric_eigenvalues(s);
    const std::vector<double> gen_sorted = sorted(sp.real_parts);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(jac[i], gen_sorted[i], 1e-9);
  }
}

TEST(EigRealParts, HurwitzMargin) {
  EXPECT_TRUE(is_hurwitz(Matrix::scalar(-1e-6)));
  EXPECT_FALSE(is_hurwitz(Matrix::scalar(-1e-10)));
  EXPECT_FALSE(is_hurwitz(Matrix::scalar(0.0)));
}

TEST(SolveLinear, Examples) {
  const Matrix b{{1.5}, {-2.0}, {7.0}};
  EXPECT_EQ(solve_linear(Matrix::identity(3), b), b);
  const Matrix x = solve_linear(Matrix{{2, 0}, {0, 4}}, Matrix{{2}, {4}});
  EXPECT_NEAR(x(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(x(1, 0), 1.0, 1e-15);
}

TEST(SolveLinear, SingularReportsConditioning) {
  try {
    solve_linear(Matrix{{1, 2}, {2, 4}}, Matrix{{1}, {1}});
    FAIL() << "expected ConditioningError";
  } catch (const ConditioningError& e) {
    EXPECT_GT(e.condition_estimate(), 1e12);
  }
  EXPECT_THROW(solve_linear(Matrix(2, 3), Matrix(2, 1)), InputError);
}

TEST(SolveLinear, ResidualBoundOnRandomInstances) {
  oracle::Gen gen(15);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = gen.size(1, 8);
    const Matrix a = gen.well_conditioned(n);
    const Matrix b = gen.matrix(n, gen.size(1, 3), -5.0, 5.0);
    const Matrix x = solve_linear(a, b);
    const double res = oracle::fro(oracle::axpy(-1.0, b, oracle::matmul(a, x)));
    EXPECT_LE(res, 1e-9 * (1.0 + oracle::fro(b))) << "trial " << trial;
  }
}

TEST(Linalg, KroneckerVecIdentity) {
  // vec(A X B) = (B^T kron A) vec(X)
  oracle::Gen gen(16);
  const Matrix A = gen.matrix(3, 2);
  const Matrix X = gen.matrix(2, 4);
  const Matrix B = gen.matrix(4, 2);
  const Matrix lhs = vec(A * X * B);
  const Matrix rhs = kron(B.transposed(), A) * vec(X);
  EXPECT_LE(frobenius_norm(lhs - rhs), 1e-14);
  EXPECT_EQ(unvec(vec(X), 2, 4), X);
}

TEST(Linalg, WeightedInnerProductIsTraceForm) {
  oracle::Gen gen(17);
  const Matrix k1 = gen.matrix(2, 3);
  const Matrix k2 = gen.matrix(2, 3);
  const Matrix y = gen.spd(3);
  EXPECT_NEAR(weighted_inner(k1, k2, y), trace(k1 * y * k2.transposed()), 1e-14);
  EXPECT_NEAR(weighted_inner(k1, k2, y), weighted_inner(k2, k1, y), 1e-14);
}

TEST(NumericSettings, Presets) {
  const NumericSettings d = NumericSettings::preset("default");
  EXPECT_EQ(d.hurwitz_margin, 1e-9);
  const NumericSettings s = NumericSettings::preset("strict");
  EXPECT_LT(s.lyapunov_residual, d.lyapunov_residual);
  EXPECT_THROW(NumericSettings::preset("loose"), InputError);
}
