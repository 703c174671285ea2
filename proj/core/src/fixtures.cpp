#include "issgd/fixtures.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "issgd/errors.hpp"
#include "issgd/json_io.hpp"
#include "issgd/lyapunov.hpp"

namespace issgd {

std::string_view to_string(PlRegime regime) {
  switch (regime) {
    case PlRegime::k_pl: return "k_pl";
    case PlRegime::k_inf_pl: return "k_inf_pl";
    case PlRegime::pd_pl: return "pd_pl";
  }
  return "unknown";
}

Problem ScalarProblem::to_problem() const {
  Problem p;
  p.name = name;
  p.cost = [f = cost](const Matrix& z) { return f(z(0, 0)); };
  p.gradient = [g = gradient](const Matrix& z) { return Matrix::scalar(g(z(0, 0))); };
  p.lipschitz_on_sublevel = lipschitz_on_sublevel;
  p.pl_function = [a = pl_fn](double r) { return a(r); };
  p.optimum_cost = optimum_cost;
  p.admissibility = [lo = domain_lo, hi = domain_hi](const Matrix& z) {
    return z.rows() == 1 && z.cols() == 1 && z(0, 0) > lo && z(0, 0) < hi;
  };
  return p;
}

std::vector<double> ScalarProblem::sample_domain(std::size_t count, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_dist(std::log(0.01), std::log(100.0));
  std::bernoulli_distribution sign;
  std::vector<double> out;
  out.reserve(count);
  const bool whole_line = std::isinf(domain_lo) && std::isinf(domain_hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double d = std::exp(log_dist(rng));
    if (whole_line) {
      out.push_back(sign(rng) ? d : -d);
    } else {
      out.push_back(domain_lo + d);
    }
  }
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScalarProblem saturating_example() {
  const double root2 = std::sqrt(2.0);
  const double zstar = 1.0 + root2;
  ScalarProblem p;
  p.name = "example1";
  p.domain_lo = 1.0;
  p.domain_hi = kInf;
  p.cost = [zstar](double z) { return (z - zstar) * (z - zstar) / (2.0 * (z - 1.0)); };
  p.gradient = [](double z) { return 0.5 - 1.0 / ((z - 1.0) * (z - 1.0)); };
  // With u = z - 1 the cost is u/2 - sqrt2 + 1/u and the second derivative
  // 2/u^3 peaks at the left end of the sublevel set, the smaller root of
  // u^2 - 2(h + sqrt2) u + 2 = 0.
  p.lipschitz_on_sublevel = [root2](double h) {
    if (!(h >= 0.0)) throw DomainError("example1: sublevel height must be nonnegative");
    const double s = h + root2;
    const double u_lo = 2.0 / (s + std::sqrt(std::max(s * s - 2.0, 0.0)));
    return 2.0 / (u_lo * u_lo * u_lo);
  };
  p.pl_fn = ComparisonFunction::k_pl(2.0, root2 / 2.0);
  p.minimizer = zstar;
  p.optimum_cost = 0.0;
  p.regime = PlRegime::k_pl;
  return p;
}

ScalarProblem quartic_example() {
  ScalarProblem p;
  p.name = "example2";
  p.domain_lo = -kInf;
  p.domain_hi = kInf;
  p.cost = [](double z) { return 0.25 * z * z * z * z; };
  p.gradient = [](double z) { return z * z * z; };
  // J'' = 3 z^2 and |z| <= (4h)^(1/4) on the sublevel set.
  p.lipschitz_on_sublevel = [](double h) {
    if (!(h >= 0.0)) throw DomainError("example2: sublevel height must be nonnegative");
    return 3.0 * std::sqrt(4.0 * h);
  };
  p.pl_fn = ComparisonFunction::power(std::pow(4.0, 0.75), 0.75);
  p.minimizer = 0.0;
  p.optimum_cost = 0.0;
  p.regime = PlRegime::k_inf_pl;
  return p;
}

ScalarProblem log_example() {
  ScalarProblem p;
  p.name = "example3";
  p.domain_lo = -kInf;
  p.domain_hi = kInf;
  p.cost = [](double z) { return std::log1p(z * z); };
  p.gradient = [](double z) { return 2.0 * z / (z * z + 1.0); };
  // |J''| = 2 |1 - z^2| / (1 + z^2)^2 <= 2 everywhere.
  p.lipschitz_on_sublevel = [](double h) {
    if (!(h >= 0.0)) throw DomainError("example3: sublevel height must be nonnegative");
    return 2.0;
  };
  // |grad| written in terms of J; it decays for large J, so only positive definite.
  p.pl_fn = ComparisonFunction::positive_definite(
      [](double r) { return 2.0 * std::sqrt(std::expm1(r)) / std::exp(r); });
  p.minimizer = 0.0;
  p.optimum_cost = 0.0;
  p.regime = PlRegime::pd_pl;
  return p;
}

}  // namespace

std::vector<ScalarProblem> scalar_examples() {
  return {saturating_example(), quartic_example(), log_example()};
}

ScalarProblem scalar_example(std::string_view name) {
  for (ScalarProblem& p : scalar_examples())
    if (p.name == name) return p;
  throw InputError("unknown scalar example '" + std::string(name) + "'");
}

OneDimensionalLqr one_d_lqr() {
  OneDimensionalLqr out;
  out.plant = Plant{Matrix::scalar(0.0), Matrix::scalar(1.0), Matrix::scalar(1.0),
                    Matrix::scalar(1.0)};
  return out;
}

namespace {

Matrix uniform_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (double& x : m.data()) x = u(rng);
  return m;
}

// Q diag(lambda) Q^T with Q from Gram-Schmidt on a random matrix.
Matrix random_spd(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> spread(0.5, 2.0);
  Matrix basis(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    do {
      for (std::size_t i = 0; i < n; ++i) basis(i, j) = normal(rng);
      for (std::size_t p = 0; p < j; ++p) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += basis(i, j) * basis(i, p);
        for (std::size_t i = 0; i < n; ++i) basis(i, j) -= dot * basis(i, p);
      }
      norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += basis(i, j) * basis(i, j);
      norm = std::sqrt(norm);
    } while (norm < 1e-6);
    for (std::size_t i = 0; i < n; ++i) basis(i, j) /= norm;
  }
  std::vector<double> eig(n);
  for (double& e : eig) e = spread(rng);
  return symmetrized(basis * Matrix::diagonal(eig) * basis.transposed());
}

// Bass: with X solving (A + bI) X + X (A + bI)^T = 2 B B^T, the gain B^T X^-1
// places every closed-loop eigenvalue at real part -b.
Matrix bass_gain_unchecked(const Plant& plant, const NumericSettings& settings) {
  const std::size_t n = plant.n();
  const double shift = spectral_norm(plant.A, settings) + 1.0;
  const Matrix shifted = -(plant.A + shift * Matrix::identity(n));
  const Matrix forcing = 2.0 * plant.B * plant.B.transposed();
  const Matrix X = solve_dual_lyapunov(shifted, forcing, settings).P;
  return solve_linear(X, plant.B, settings).transposed();
}

}  // namespace

Matrix stabilizing_gain(const Plant& plant, const NumericSettings& settings) {
  plant.validate(settings);
  Matrix K;
  try {
    K = bass_gain_unchecked(plant, settings);
  } catch (const ConditioningError&) {
    throw StabilityError("stabilizing_gain: plant is not stabilizable", 0.0);
  } catch (const NumericError&) {
    throw StabilityError("stabilizing_gain: plant is not stabilizable", 0.0);
  }
  require_stabilizing(plant, K, "stabilizing_gain", settings);
  return K;
}

PlantSample random_plant(std::size_t n, std::size_t m, std::uint64_t seed,
                         const NumericSettings& settings) {
  if (m < 1 || m > n || n > 8)
    throw InputError("random_plant: requires 1 <= m <= n <= 8");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  constexpr double kMargin = 1e-3;
  for (int attempt = 0; attempt < 100; ++attempt) {
    PlantSample s;
    s.seed = seed;
    s.plant.A = uniform_matrix(n, n, rng);
    s.plant.B = uniform_matrix(n, m, rng);
    s.plant.Q = random_spd(n, rng);
    s.plant.R = random_spd(m, rng);
    const Matrix delta = uniform_matrix(m, n, rng);
    try {
      s.plant.validate(settings);
      s.optimum = solve_optimum(s.plant, bass_gain_unchecked(s.plant, settings), settings);
      double scale = 1.0;
      for (int halving = 0; halving < 60; ++halving, scale *= 0.5) {
        Gain g = make_gain(s.plant, s.optimum.K_star + scale * delta, settings);
        if (g.hurwitz_margin >= kMargin) {
          s.K0 = std::move(g);
          return s;
        }
      }
    } catch (const Error&) {
      // Ill-conditioned draw; try the next one from the same stream.
    }
  }
  throw GenerationError("random_plant: no usable plant after 100 attempts (seed " +
                        std::to_string(seed) + ")");
}

nlohmann::json plant_sample_to_json(const PlantSample& s) {
  return {{"seed", s.seed},
          {"plant", plant_to_json(s.plant)},
          {"K0", matrix_to_json(s.K0.K)},
          {"K_star", matrix_to_json(s.optimum.K_star)},
          {"J_star", s.optimum.J_star}};
}

PlantSample plant_sample_from_json(const nlohmann::json& j, const NumericSettings& settings) {
  if (!j.is_object() || !j.contains("plant") || !j.contains("K0"))
    throw InputError("plant sample: expected keys plant and K0");
  PlantSample s;
  s.seed = j.value("seed", std::uint64_t{0});
  s.plant = plant_from_json(j.at("plant"));
  s.K0 = make_gain(s.plant, matrix_from_json(j.at("K0"), "K0"), settings);
  if (!s.K0.admissible(settings)) throw InputError("plant sample: K0 is not stabilizing");
  s.optimum = solve_optimum(s.plant, s.K0.K, settings);
  return s;
}

}  // namespace issgd
