#include "issgd/numeric_settings.hpp"

#include <cstdlib>
#include <string>

#include "issgd/errors.hpp"

namespace issgd {

NumericSettings NumericSettings::preset(std::string_view name) {
  NumericSettings s;
  if (name.empty() || name == "default") return s;
  if (name == "strict") {
    s.hurwitz_margin = 1e-7;
    s.min_reciprocal_condition = 1e-12;
    s.symmetry_tolerance = 1e-12;
    s.lyapunov_residual = 1e-10;
    s.are_tolerance = 1e-12;
    s.verification_slack = 1e-11;
    return s;
  }
  throw InputError("unknown numeric profile '" + std::string(name) +
                   "' (expected 'strict' or 'default')");
}

const NumericSettings& default_settings() {
  static const NumericSettings settings = [] {
    const char* env = std::getenv("ISSGD_NUMERIC_PROFILE");
    return NumericSettings::preset(env ? std::string_view(env) : std::string_view());
  }();
  return settings;
}

}  // namespace issgd
