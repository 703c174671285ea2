#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace issgd::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

struct GlobalOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
};

struct VerifyOptions {
  std::filesystem::path trajectory;
  std::optional<std::filesystem::path> meta;  ///< default: <trajectory stem>.meta.json
  std::optional<std::string> method;
};

struct GenerateOptions {
  std::size_t n = 2;
  std::size_t m = 1;
  std::uint64_t seed = 0;
  std::size_t count = 1;
};

// Each command reports errors on err and returns an exit code; issgd errors
// map to kInputError.
int cmd_solve(const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_descend(const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_verify(const GlobalOptions& g, const VerifyOptions& v, std::ostream& out, std::ostream& err);
int cmd_sweep(const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_generate(const GlobalOptions& g, const GenerateOptions& opts, std::ostream& out, std::ostream& err);

/// Path of the sidecar written next to a trajectory CSV.
std::filesystem::path meta_path_for(const std::filesystem::path& trajectory);

}  // namespace issgd::cli
