#include "experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "issgd/errors.hpp"
#include "issgd/fixtures.hpp"
#include "issgd/json_io.hpp"

namespace issgd::cli {

namespace fs = std::filesystem;

nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

namespace {

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InputError(where + ": unknown key '" + key + "'");
  }
}

double positive_real(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!(x > 0.0) || !std::isfinite(x)) throw InputError(std::string(what) + " must be positive");
  return x;
}

std::uint64_t unsigned_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw InputError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

}  // namespace

Method parse_method(const nlohmann::json& j) {
  Method m;
  if (j.is_string()) {
    m.kind = parse_method_kind(j.get<std::string>());
    return m;
  }
  if (!j.is_object() || !j.contains("kind")) throw InputError("method: expected an object with key kind");
  reject_unknown_keys(j, {"kind", "step_rule"}, "method");
  if (!j.at("kind").is_string()) throw InputError("method.kind must be a string");
  m.kind = parse_method_kind(j.at("kind").get<std::string>());
  if (j.contains("step_rule")) {
    const auto& r = j.at("step_rule");
    if (r.is_string() && r.get<std::string>() == "paper") {
      m.step_rule = StepRule::paper();
    } else if (r.is_object() && r.size() == 1 && r.contains("fixed")) {
      m.step_rule = StepRule::fixed(positive_real(r.at("fixed"), "step_rule.fixed"));
    } else if (r.is_object() && r.size() == 1 && r.contains("scaled")) {
      m.step_rule = StepRule::scaled(positive_real(r.at("scaled"), "step_rule.scaled"));
    } else {
      throw InputError("method.step_rule: expected \"paper\", {\"fixed\": eta} or {\"scaled\": fraction}");
    }
  }
  return m;
}

ExperimentConfig parse_experiment(const nlohmann::json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  reject_unknown_keys(j, {"problem", "method", "perturbation", "start", "run", "sweep"}, "config");
  if (!j.contains("problem")) throw InputError("config: missing key problem");
  ExperimentConfig cfg;
  cfg.base_dir = base_dir;
  cfg.problem = j.at("problem");
  if (!cfg.problem.is_object()) throw InputError("problem: expected an object");
  int sources = 0;
  for (const char* key : {"builtin", "plant", "random"}) sources += cfg.problem.contains(key) ? 1 : 0;
  if (sources != 1) throw InputError("problem: exactly one of builtin, plant, random is required");
  reject_unknown_keys(cfg.problem, {"builtin", "plant", "random"}, "problem");

  cfg.method = j.contains("method") ? parse_method(j.at("method")) : Method{};
  cfg.perturbation = j.value("perturbation", nlohmann::json{{"kind", "zero"}});
  // Validate now so errors surface before any solve.
  build_perturbation(cfg.perturbation, base_dir, std::nullopt);
  if (j.contains("start")) cfg.start = matrix_from_json(j.at("start"), "start");
  if (j.contains("run")) {
    const auto& r = j.at("run");
    if (!r.is_object()) throw InputError("run: expected an object");
    reject_unknown_keys(r, {"max_iter", "stop_tol"}, "run");
    if (r.contains("max_iter")) cfg.run.max_iter = unsigned_int(r.at("max_iter"), "run.max_iter");
    if (r.contains("stop_tol")) {
      if (!r.at("stop_tol").is_number() || r.at("stop_tol").get<double>() < 0.0)
        throw InputError("run.stop_tol must be a nonnegative number");
      cfg.run.stop_tol = r.at("stop_tol").get<double>();
    }
  }
  return cfg;
}

SweepConfig parse_sweep(const nlohmann::json& j, const fs::path& base_dir) {
  SweepConfig s;
  s.base = parse_experiment(j, base_dir);
  if (!j.contains("sweep") || !j.at("sweep").is_object()) throw InputError("config: missing sweep object");
  const auto& sw = j.at("sweep");
  reject_unknown_keys(sw, {"axis", "values", "replications"}, "sweep");
  if (!sw.contains("axis") || !sw.at("axis").is_string()) throw InputError("sweep.axis must be a string");
  s.axis = sw.at("axis").get<std::string>();
  if (s.axis != "epsilon" && s.axis != "seed" && s.axis != "method")
    throw InputError("sweep.axis must be epsilon, seed or method");
  if (!sw.contains("values") || !sw.at("values").is_array() || sw.at("values").empty())
    throw InputError("sweep.values must be a nonempty array");
  for (const auto& v : sw.at("values")) {
    if (s.axis == "epsilon" && (!v.is_number() || v.get<double>() < 0.0))
      throw InputError("sweep.values: epsilon values must be nonnegative numbers");
    if (s.axis == "seed") unsigned_int(v, "sweep.values");
    if (s.axis == "method") parse_method(v);
    s.values.push_back(v);
  }
  if (sw.contains("replications")) {
    s.replications = unsigned_int(sw.at("replications"), "sweep.replications");
    if (s.replications < 1) throw InputError("sweep.replications must be at least 1");
  }
  return s;
}

PerturbationModel build_perturbation(const nlohmann::json& spec, const fs::path& base_dir,
                                     std::optional<std::uint64_t> seed_override) {
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string())
    throw InputError("perturbation: expected an object with string key kind");
  reject_unknown_keys(spec, {"kind", "epsilon", "seed", "direction", "sequence", "sequence_file"},
                      "perturbation");
  const std::string kind = spec.at("kind").get<std::string>();
  auto epsilon = [&] {
    if (!spec.contains("epsilon")) throw InputError("perturbation: " + kind + " requires epsilon");
    if (!spec.at("epsilon").is_number()) throw InputError("perturbation.epsilon must be a number");
    return spec.at("epsilon").get<double>();
  };
  if (kind == "zero") return PerturbationModel::zero();
  if (kind == "iid_ball") {
    std::uint64_t seed = spec.contains("seed") ? unsigned_int(spec.at("seed"), "perturbation.seed") : 0;
    if (seed_override) seed = *seed_override;
    return PerturbationModel::iid_ball(epsilon(), seed);
  }
  if (kind == "anti_descent") return PerturbationModel::anti_descent(epsilon());
  if (kind == "constant_direction") {
    if (!spec.contains("direction")) throw InputError("perturbation: constant_direction requires direction");
    return PerturbationModel::constant_direction(matrix_from_json(spec.at("direction"), "direction"),
                                                 epsilon());
  }
  if (kind == "replay") {
    nlohmann::json seq;
    if (spec.contains("sequence") == spec.contains("sequence_file"))
      throw InputError("perturbation: replay requires exactly one of sequence, sequence_file");
    if (spec.contains("sequence")) {
      seq = spec.at("sequence");
    } else {
      fs::path p = spec.at("sequence_file").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      seq = read_json_file(p);
    }
    if (!seq.is_array()) throw InputError("perturbation: replay sequence must be an array");
    std::vector<Matrix> out;
    for (const auto& e : seq) out.push_back(matrix_from_json(e, "replay entry"));
    return PerturbationModel::replay(std::move(out));
  }
  throw InputError("perturbation: unknown kind '" + kind + "'");
}

namespace {

Experiment lqr_experiment(std::string name, const Plant& plant, const Matrix& K0, const Matrix& start) {
  Experiment ex;
  ex.problem_name = std::move(name);
  ex.plant = plant;
  require_stabilizing(plant, start, "start");
  ex.optimum = solve_optimum(plant, K0);
  ex.problem = make_lqr_problem(plant, *ex.optimum);
  ex.problem.name = ex.problem_name;
  ex.certificate = ex.problem.lqr->cert;
  ex.alpha = k_pl_function(*ex.certificate);
  ex.start = start;
  return ex;
}

}  // namespace

Experiment build_experiment(const ExperimentConfig& cfg) {
  const nlohmann::json& p = cfg.problem;
  if (p.contains("builtin")) {
    if (!p.at("builtin").is_string()) throw InputError("problem.builtin must be a string");
    const std::string name = p.at("builtin").get<std::string>();
    if (name == "lqr_1d") {
      const Matrix start = cfg.start.value_or(Matrix::scalar(3.0));
      return lqr_experiment(name, one_d_lqr().plant, start, start);
    }
    const ScalarProblem sp = scalar_example(name);
    Experiment ex;
    ex.problem_name = name;
    ex.problem = sp.to_problem();
    ex.alpha = sp.pl_fn;
    const double fallback = name == "example1" ? 4.0 : name == "example2" ? 1.0 : 2.0;
    ex.start = cfg.start.value_or(Matrix::scalar(fallback));
    if (ex.start.rows() != 1 || ex.start.cols() != 1 || !sp.contains(ex.start(0, 0)))
      throw InputError("start: must be a scalar inside the domain of " + name);
    return ex;
  }
  if (p.contains("plant")) {
    const Plant plant = plant_from_json(p.at("plant"));
    const Matrix K0 = stabilizing_gain(plant);
    return lqr_experiment("plant", plant, K0, cfg.start.value_or(K0));
  }
  const auto& r = p.at("random");
  if (!r.is_object()) throw InputError("problem.random: expected an object with n, m, seed");
  reject_unknown_keys(r, {"n", "m", "seed"}, "problem.random");
  for (const char* key : {"n", "m", "seed"})
    if (!r.contains(key)) throw InputError(std::string("problem.random: missing ") + key);
  const PlantSample s = random_plant(unsigned_int(r.at("n"), "n"), unsigned_int(r.at("m"), "m"),
                                     unsigned_int(r.at("seed"), "seed"));
  return lqr_experiment("random", s.plant, s.K0.K, cfg.start.value_or(s.K0.K));
}

bool gate_active(const Experiment& ex, MethodKind kind, const IterateRecord& rec, double optimum_cost) {
  if (kind == MethodKind::standard) {
    const double gap = std::max(rec.cost - optimum_cost, 0.0);
    return rec.perturbation_norm <= 0.5 * ex.alpha(gap);
  }
  const char* column = kind == MethodKind::natural_lqr ? "v5" : "v6";
  const double v = rec.lyapunov_values.at(column);
  const double sigma = std::min(lyapunov_gate_sigma1(*ex.certificate, v), lyapunov_gate_sigma2(*ex.certificate, v));
  return rec.perturbation_norm * rec.perturbation_norm <= sigma;
}

void write_trajectory_csv(std::ostream& os, const Experiment& ex, const DescentTrajectory& traj) {
  os << kTrajectoryHeader << '\n';
  for (const IterateRecord& r : traj.records) {
    auto column = [&](const char* name) {
      auto it = r.lyapunov_values.find(name);
      return it == r.lyapunov_values.end() ? std::string() : format_real(it->second);
    };
    os << r.k << ',' << format_real(r.cost) << ',' << format_real(r.cost - traj.optimum_cost) << ','
       << format_real(r.grad_norm) << ',' << format_real(r.step_size) << ','
       << format_real(r.perturbation_norm) << ',' << column("v5") << ',' << column("v6") << ','
       << (gate_active(ex, traj.method.kind, r, traj.optimum_cost) ? 1 : 0) << '\n';
  }
}

namespace {

nlohmann::json step_rule_json(const StepRule& r) {
  switch (r.kind) {
    case StepRule::Kind::paper_rule: return "paper";
    case StepRule::Kind::fixed: return {{"fixed", r.value}};
    case StepRule::Kind::scaled_paper_rule: return {{"scaled", r.value}};
  }
  return nullptr;
}

}  // namespace

nlohmann::json trajectory_meta(const Experiment& ex, const DescentTrajectory& traj) {
  nlohmann::json m;
  m["problem"] = ex.problem_name;
  m["method"] = to_string(traj.method.kind);
  m["step_rule"] = step_rule_json(traj.method.step_rule);
  m["perturbation"] = to_string(traj.perturbation_kind);
  m["epsilon"] = traj.epsilon;
  m["seed"] = traj.seed;
  m["optimum_cost"] = traj.optimum_cost;
  m["terminated_reason"] = to_string(traj.terminated_reason);
  m["iterations"] = traj.records.empty() ? 0 : traj.records.back().k;
  m["final_cost_gap"] = traj.records.empty() ? 0.0 : traj.records.back().cost - traj.optimum_cost;
  m["escape_point"] = traj.escape_point ? matrix_to_json(*traj.escape_point) : nlohmann::json(nullptr);
  m["certificate"] = ex.certificate ? certificate_to_json(*ex.certificate) : nlohmann::json(nullptr);
  m["comparison_function"] = to_string(ex.alpha.kind());

  nlohmann::json advisories = nlohmann::json::array();
  m["ultimate_bound"] = nullptr;
  if (ex.alpha.invertible()) {
    try {
      m["ultimate_bound"] = ultimate_bound(ex.alpha, traj.epsilon);
    } catch (const DisturbanceTooLargeError& e) {
      advisories.push_back({{"kind", "disturbance_too_large"},
                            {"budget", e.budget()},
                            {"supremum", e.supremum()},
                            {"message", e.what()}});
    }
  } else {
    advisories.push_back({{"kind", "no_ultimate_bound"},
                          {"message", "comparison function is only positive definite"}});
  }
  m["advisories"] = std::move(advisories);
  return m;
}

nlohmann::json trajectory_to_json(const Experiment& ex, const DescentTrajectory& traj) {
  nlohmann::json rows = nlohmann::json::array();
  for (const IterateRecord& r : traj.records) {
    nlohmann::json row{{"k", r.k},
                       {"point", matrix_to_json(r.point)},
                       {"cost", r.cost},
                       {"cost_gap", r.cost - traj.optimum_cost},
                       {"grad_fro", r.grad_norm},
                       {"step_size", r.step_size},
                       {"perturb_fro", r.perturbation_norm},
                       {"gate_active", gate_active(ex, traj.method.kind, r, traj.optimum_cost)}};
    for (const auto& [name, value] : r.lyapunov_values) row[name] = value;
    rows.push_back(std::move(row));
  }
  return {{"meta", trajectory_meta(ex, traj)}, {"records", std::move(rows)}};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s, std::size_t line, const char* column) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw InputError("trajectory line " + std::to_string(line) + ": bad " + column + " value '" + s + "'");
  }
}

}  // namespace

DescentTrajectory read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("trajectory: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader)
    throw InputError("trajectory: header must be exactly '" + std::string(kTrajectoryHeader) + "'");
  DescentTrajectory t;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9)
      throw InputError("trajectory line " + std::to_string(lineno) + ": expected 9 fields");
    IterateRecord r;
    const double k = parse_real(f[0], lineno, "k");
    if (k < 0 || k != std::floor(k)) throw InputError("trajectory line " + std::to_string(lineno) + ": bad k");
    r.k = static_cast<std::size_t>(k);
    r.cost = parse_real(f[1], lineno, "cost");
    r.grad_norm = parse_real(f[3], lineno, "grad_fro");
    r.step_size = parse_real(f[4], lineno, "step_size");
    r.perturbation_norm = parse_real(f[5], lineno, "perturb_fro");
    if (!f[6].empty()) r.lyapunov_values["v5"] = parse_real(f[6], lineno, "v5");
    if (!f[7].empty()) r.lyapunov_values["v6"] = parse_real(f[7], lineno, "v6");
    if (f[8] != "0" && f[8] != "1")
      throw InputError("trajectory line " + std::to_string(lineno) + ": gate_active must be 0 or 1");
    t.records.push_back(std::move(r));
  }
  if (t.records.empty()) throw InputError("trajectory: no rows");
  return t;
}

}  // namespace issgd::cli
