#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "issgd/descent.hpp"
#include "issgd/iss_verify.hpp"

namespace issgd::cli {

/// Parsed but not yet solved experiment description.
struct ExperimentConfig {
  nlohmann::json problem;
  Method method;
  nlohmann::json perturbation;
  std::optional<Matrix> start;
  RunOptions run;
  std::filesystem::path base_dir;  ///< for relative paths inside the config
};

struct SweepConfig {
  ExperimentConfig base;
  std::string axis;  ///< epsilon, seed or method
  std::vector<nlohmann::json> values;
  std::size_t replications = 1;
};

ExperimentConfig parse_experiment(const nlohmann::json& j, const std::filesystem::path& base_dir);
SweepConfig parse_sweep(const nlohmann::json& j, const std::filesystem::path& base_dir);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// A problem ready to run, with the data the verifier needs.
struct Experiment {
  std::string problem_name;
  Problem problem;
  /// alpha5 for the gated-decrease check.
  ComparisonFunction alpha;
  Matrix start;
  /// Present for LQR problems.
  std::optional<Plant> plant;
  std::optional<OptimalSolution> optimum;
  std::optional<LandscapeCertificate> certificate;
};

Experiment build_experiment(const ExperimentConfig& cfg);
PerturbationModel build_perturbation(const nlohmann::json& spec, const std::filesystem::path& base_dir,
                                     std::optional<std::uint64_t> seed_override);
Method parse_method(const nlohmann::json& j);

/// Gate flag for one record, using the check that matches the method.
bool gate_active(const Experiment& ex, MethodKind kind, const IterateRecord& rec, double optimum_cost);

inline constexpr const char* kTrajectoryHeader =
    "k,cost,cost_gap,grad_fro,step_size,perturb_fro,v5,v6,gate_active";

void write_trajectory_csv(std::ostream& os, const Experiment& ex, const DescentTrajectory& traj);
nlohmann::json trajectory_to_json(const Experiment& ex, const DescentTrajectory& traj);
nlohmann::json trajectory_meta(const Experiment& ex, const DescentTrajectory& traj);

/// Reads rows written by write_trajectory_csv. Throws InputError on any
/// schema mismatch.
DescentTrajectory read_trajectory_csv(std::istream& is);

}  // namespace issgd::cli
