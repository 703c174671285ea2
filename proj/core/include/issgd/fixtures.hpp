#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "issgd/descent.hpp"
#include "issgd/iss_verify.hpp"
#include "issgd/landscape.hpp"
#include "issgd/plant.hpp"

namespace issgd {

enum class PlRegime { k_pl, k_inf_pl, pd_pl };
std::string_view to_string(PlRegime regime);

/// A one-dimensional objective with its landscape data.
struct ScalarProblem {
  std::string name;
  double domain_lo = 0.0;  ///< open interval, may be infinite
  double domain_hi = 0.0;
  std::function<double(double)> cost;
  std::function<double(double)> gradient;
  /// Lipschitz constant of the gradient on {J <= h}.
  std::function<double(double)> lipschitz_on_sublevel;
  ComparisonFunction pl_fn;
  double minimizer = 0.0;
  double optimum_cost = 0.0;
  PlRegime regime = PlRegime::k_pl;

  bool contains(double z) const { return z > domain_lo && z < domain_hi; }
  /// Wraps the problem for the descent engine with 1 x 1 points.
  Problem to_problem() const;
  /// Log-uniform samples a distance in [0.01, 100] from the left end of the
  /// domain, or from 0 with a random sign on the whole line.
  std::vector<double> sample_domain(std::size_t count, std::uint64_t seed) const;
};

/// (z - z*)^2 / (2 (z - 1)) on z > 1, z^4 / 4 and log(z^2 + 1), in that order.
std::vector<ScalarProblem> scalar_examples();
/// Lookup by name: example1, example2, example3. Throws InputError.
ScalarProblem scalar_example(std::string_view name);

/// The scalar plant a = 0, b = q = r = 1 with its closed forms.
struct OneDimensionalLqr {
  Plant plant;
  double K_star = 1.0;
  double J_star = 1.0;

  static double cost(double K) { return (K * K + 1.0) / (2.0 * K); }
  static double gradient(double K) { return (K * K - 1.0) / (2.0 * K * K); }
  static double natural_gradient(double K) { return (K * K - 1.0) / K; }
  static double value(double K) { return cost(K); }
  static double gramian(double K) { return 1.0 / (2.0 * K); }
  /// Standard update: J(K') - J(K) = -eta m1 (J(K) - 1).
  static double m1(double K, double eta) {
    return (2.0 * K - eta) * (K + 1.0) * (K + 1.0) /
           (4.0 * K * K * K * K - 2.0 * eta * K * K * K + 2.0 * eta * K);
  }
  /// Natural update: J(K') - J(K) = -eta m2 (J(K) - 1).
  static double m2(double K, double eta) {
    return (1.0 - eta) * (K + 1.0) * (K + 1.0) / ((1.0 - eta) * K * K + eta);
  }
};

OneDimensionalLqr one_d_lqr();

/// A stabilizing gain placing every closed-loop eigenvalue at real part
/// -(||A|| + 1). Throws StabilityError if the plant is not stabilizable.
Matrix stabilizing_gain(const Plant& plant, const NumericSettings& settings = default_settings());

struct PlantSample {
  Plant plant;
  Gain K0;
  std::uint64_t seed = 0;
  OptimalSolution optimum;
};

/// Random stabilizable plant with SPD weights (eigenvalues in [0.5, 2]) and a
/// stabilizing K0 near K*. Requires 1 <= m <= n <= 8. Throws GenerationError
/// after 100 failed attempts.
PlantSample random_plant(std::size_t n, std::size_t m, std::uint64_t seed,
                         const NumericSettings& settings = default_settings());

nlohmann::json plant_sample_to_json(const PlantSample& sample);
PlantSample plant_sample_from_json(const nlohmann::json& j,
                                   const NumericSettings& settings = default_settings());

}  // namespace issgd
