#include "issgd/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "issgd/errors.hpp"

namespace issgd {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, const char* what) {
  if (j.is_number()) return Matrix::scalar(j.get<double>());
  if (!j.is_array() || j.empty())
    throw InputError(std::string(what) + ": expected a nonempty array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty())
      throw InputError(std::string(what) + ": every row must be a nonempty array");
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) throw InputError(std::string(what) + ": entries must be numbers");
      r.push_back(x.get<double>());
    }
    if (!rows.empty() && r.size() != rows.front().size())
      throw InputError(std::string(what) + ": rows have different lengths");
    rows.push_back(std::move(r));
  }
  Matrix m = Matrix::from_rows(rows);
  require_finite(m, what);
  return m;
}

nlohmann::json plant_to_json(const Plant& plant) {
  return {{"A", matrix_to_json(plant.A)},
          {"B", matrix_to_json(plant.B)},
          {"Q", matrix_to_json(plant.Q)},
          {"R", matrix_to_json(plant.R)}};
}

Plant plant_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("plant: expected an object with keys A, B, Q, R");
  for (const char* key : {"A", "B", "Q", "R"})
    if (!j.contains(key)) throw InputError(std::string("plant: missing key ") + key);
  Plant p{matrix_from_json(j.at("A"), "plant.A"), matrix_from_json(j.at("B"), "plant.B"),
          matrix_from_json(j.at("Q"), "plant.Q"), matrix_from_json(j.at("R"), "plant.R")};
  p.validate();
  return p;
}

nlohmann::json certificate_to_json(const LandscapeCertificate& c) {
  return {{"a1", c.a1},
          {"a2", c.a2},
          {"b1", c.b1},
          {"b2", c.b2},
          {"disturbance_sup", c.disturbance_sup},
          {"c1", c.c1},
          {"c2", c.c2},
          {"J_star", c.J_star},
          {"norm_A", c.norm_A},
          {"norm_B", c.norm_B},
          {"norm_R", c.norm_R},
          {"lambda_min_Q", c.lambda_min_Q},
          {"lambda_min_R", c.lambda_min_R},
          {"lambda_min_Y_star", c.lambda_min_Y_star},
          {"lambda_max_Y_star", c.lambda_max_Y_star},
          {"norm_B_Rinv_Bt", c.norm_B_Rinv_Bt},
          {"closed_loop_fro_star", c.closed_loop_fro_star}};
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace issgd
