#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "issgd/landscape.hpp"
#include "issgd/linalg.hpp"
#include "issgd/plant.hpp"

namespace issgd {

/// Matrices are nested row arrays. A bare number reads as 1 x 1.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const char* what);

nlohmann::json plant_to_json(const Plant& plant);
/// Reads keys A, B, Q, R and validates the plant. Throws InputError.
Plant plant_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const LandscapeCertificate& cert);

/// printf("%.17g"), the round-trip format of every serialized float.
std::string format_real(double x);

}  // namespace issgd
