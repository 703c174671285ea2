#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "experiment.hpp"
#include "issgd/errors.hpp"
#include "issgd/fixtures.hpp"
#include "issgd/json_io.hpp"
#include "issgd/lyapunov.hpp"

namespace issgd::cli {

namespace fs = std::filesystem;

namespace {

ExperimentConfig load_config(const GlobalOptions& g) {
  if (!g.config) throw InputError("--config is required");
  return parse_experiment(read_json_file(*g.config), g.config->parent_path());
}

void check_format(const GlobalOptions& g) {
  if (g.format != "csv" && g.format != "json") throw InputError("--format must be csv or json");
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw InputError("cannot write " + (dir / name).string());
  return f;
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

fs::path meta_path_for(const fs::path& trajectory) {
  fs::path p = trajectory;
  p.replace_extension(".meta.json");
  return p;
}

int cmd_solve(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(g);
    const ExperimentConfig cfg = load_config(g);
    const Experiment ex = build_experiment(cfg);
    nlohmann::json j;
    j["problem"] = ex.problem_name;
    if (ex.plant) {
      j["K_star"] = matrix_to_json(ex.optimum->K_star);
      j["P_star"] = matrix_to_json(ex.optimum->P_star);
      j["J_star"] = ex.optimum->J_star;
      j["are_residual"] = are_residual(*ex.plant, ex.optimum->P_star);
      j["certificate"] = certificate_to_json(*ex.certificate);
    } else {
      const ScalarProblem sp = scalar_example(ex.problem_name);
      j["minimizer"] = sp.minimizer;
      j["optimum_cost"] = sp.optimum_cost;
      j["regime"] = to_string(sp.regime);
    }
    if (g.out) open_output(*g.out, "solve.json") << j.dump(2) << '\n';
    if (g.format == "json") {
      out << j.dump(2) << '\n';
    } else if (ex.plant) {
      out << "problem: " << ex.problem_name << '\n'
          << "K*: " << j["K_star"].dump() << '\n'
          << "J*: " << format_real(ex.optimum->J_star) << '\n'
          << "ARE residual: " << format_real(j["are_residual"].get<double>()) << '\n';
    } else {
      out << "problem: " << ex.problem_name << '\n'
          << "minimizer: " << format_real(j["minimizer"].get<double>()) << '\n'
          << "optimum cost: " << format_real(j["optimum_cost"].get<double>()) << '\n';
    }
    return kOk;
  });
}

int cmd_descend(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(g);
    const ExperimentConfig cfg = load_config(g);
    const Experiment ex = build_experiment(cfg);
    const PerturbationModel pert = build_perturbation(cfg.perturbation, cfg.base_dir, g.seed);
    DescentTrajectory traj = run(ex.problem, cfg.method, pert, ex.start, cfg.run);
    traj.problem_name = ex.problem_name;

    nlohmann::json meta = trajectory_meta(ex, traj);
    meta["problem_spec"] = cfg.problem;
    meta["start"] = matrix_to_json(ex.start);
    meta["run"] = {{"max_iter", cfg.run.max_iter}, {"stop_tol", cfg.run.stop_tol}};

    if (g.out) {
      if (g.format == "json") {
        open_output(*g.out, "trajectory.json") << trajectory_to_json(ex, traj).dump(2) << '\n';
      } else {
        std::ofstream csv = open_output(*g.out, "trajectory.csv");
        write_trajectory_csv(csv, ex, traj);
      }
      open_output(*g.out, "trajectory.meta.json") << meta.dump(2) << '\n';
    } else if (g.format == "json") {
      out << trajectory_to_json(ex, traj).dump(2) << '\n';
    } else {
      write_trajectory_csv(out, ex, traj);
    }
    err << "terminated: " << to_string(traj.terminated_reason) << " after "
        << meta["iterations"].get<std::size_t>() << " iterations\n";
    return kOk;
  });
}

int cmd_verify(const GlobalOptions& g, const VerifyOptions& v, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::ifstream csv(v.trajectory);
    if (!csv) throw InputError("cannot open " + v.trajectory.string());
    DescentTrajectory traj = read_trajectory_csv(csv);
    const fs::path meta_path = v.meta.value_or(meta_path_for(v.trajectory));
    const nlohmann::json meta = read_json_file(meta_path);
    for (const char* key : {"method", "step_rule", "perturbation", "epsilon", "seed", "terminated_reason"})
      if (!meta.contains(key)) throw InputError(meta_path.string() + ": missing key " + key);

    traj.method = parse_method({{"kind", meta.at("method")}, {"step_rule", meta.at("step_rule")}});
    if (v.method && parse_method_kind(*v.method) != traj.method.kind) {
      err << "error: method mismatch: trajectory was produced by " << to_string(traj.method.kind)
          << ", not " << *v.method << '\n';
      return kInputError;
    }
    traj.epsilon = meta.at("epsilon").get<double>();
    traj.seed = meta.at("seed").get<std::uint64_t>();
    traj.terminated_reason = parse_termination_reason(meta.at("terminated_reason").get<std::string>());
    if (meta.contains("escape_point") && !meta.at("escape_point").is_null())
      traj.escape_point = matrix_from_json(meta.at("escape_point"), "escape_point");

    ExperimentConfig cfg;
    if (g.config) {
      cfg = load_config(g);
    } else {
      if (!meta.contains("problem_spec")) throw InputError("verify: no --config and the sidecar has no problem_spec");
      nlohmann::json j{{"problem", meta.at("problem_spec")}};
      if (meta.contains("start")) j["start"] = meta.at("start");
      cfg = parse_experiment(j, meta_path.parent_path());
    }
    const Experiment ex = build_experiment(cfg);
    traj.problem_name = ex.problem_name;
    traj.optimum_cost = ex.problem.optimum_cost;

    IssReport report;
    if (traj.method.kind == MethodKind::standard) {
      report = check_gated_decrease(traj, ex.alpha);
    } else {
      if (!ex.plant) throw InputError("verify: the natural and Gauss-Newton checks need an LQR problem");
      report = traj.method.kind == MethodKind::natural_lqr
                   ? check_v5_decrease(*ex.plant, *ex.optimum, traj, *ex.certificate)
                   : check_v6_decrease(*ex.plant, *ex.optimum, traj, *ex.certificate);
    }
    out << to_json(report) << '\n';
    if (!report.passed()) {
      err << "verification failed at step " << *report.first_failure() << '\n';
      return kVerificationFailed;
    }
    return kOk;
  });
}

namespace {

struct SweepRow {
  std::string value;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  std::optional<double> final_gap;
  std::optional<double> bound;
  std::optional<bool> respected;
  std::optional<std::size_t> iterations;
  std::string reason;
  std::string error;
};

std::string value_label(const std::string& axis, const nlohmann::json& v) {
  if (axis == "method") return std::string(to_string(parse_method(v).kind));
  return v.dump();
}

SweepRow sweep_one(const SweepConfig& sw, const Experiment& ex, std::size_t vi, std::size_t r,
                   std::uint64_t base_seed) {
  const nlohmann::json& v = sw.values[vi];
  SweepRow row;
  row.value = value_label(sw.axis, v);
  row.replication = r;
  row.seed = (sw.axis == "seed" ? v.get<std::uint64_t>() : base_seed) + r;
  try {
    nlohmann::json spec = sw.base.perturbation;
    Method method = sw.base.method;
    if (sw.axis == "epsilon") spec["epsilon"] = v;
    if (sw.axis == "method") method = parse_method(v);
    const PerturbationModel pert = build_perturbation(spec, sw.base.base_dir, row.seed);
    const DescentTrajectory traj = run(ex.problem, method, pert, ex.start, sw.base.run);
    row.final_gap = traj.records.back().cost - traj.optimum_cost;
    row.iterations = traj.records.back().k;
    row.reason = to_string(traj.terminated_reason);
    if (ex.alpha.invertible()) {
      try {
        row.bound = ultimate_bound(ex.alpha, traj.epsilon);
        row.respected = *row.final_gap <= *row.bound + sw.base.run.stop_tol;
      } catch (const DisturbanceTooLargeError&) {
      }
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

int cmd_sweep(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(g);
    if (!g.config) throw InputError("--config is required");
    const SweepConfig sw = parse_sweep(read_json_file(*g.config), g.config->parent_path());
    const Experiment ex = build_experiment(sw.base);
    std::uint64_t base_seed = g.seed.value_or(0);
    if (!g.seed && sw.base.perturbation.contains("seed"))
      base_seed = sw.base.perturbation.at("seed").get<std::uint64_t>();

    const std::size_t total = sw.values.size() * sw.replications;
    std::vector<SweepRow> rows(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < total; i = next++)
        rows[i] = sweep_one(sw, ex, i / sw.replications, i % sw.replications, base_seed);
    };
    const std::size_t jobs = std::clamp<std::size_t>(g.jobs, 1, total);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::ostringstream buf;
    if (g.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const SweepRow& r : rows) {
        auto opt = [](const auto& o) { return o ? nlohmann::json(*o) : nlohmann::json(nullptr); };
        arr.push_back({{"value", r.value},
                       {"replication", r.replication},
                       {"seed", r.seed},
                       {"final_cost_gap", opt(r.final_gap)},
                       {"predicted_bound", opt(r.bound)},
                       {"bound_respected", opt(r.respected)},
                       {"iterations", opt(r.iterations)},
                       {"terminated_reason", r.reason},
                       {"error", r.error}});
      }
      buf << arr.dump(2) << '\n';
    } else {
      buf << "value,replication,seed,final_cost_gap,predicted_bound,bound_respected,iterations,"
             "terminated_reason,error\n";
      for (const SweepRow& r : rows) {
        buf << r.value << ',' << r.replication << ',' << r.seed << ','
            << (r.final_gap ? format_real(*r.final_gap) : "") << ','
            << (r.bound ? format_real(*r.bound) : "") << ','
            << (r.respected ? (*r.respected ? "1" : "0") : "") << ','
            << (r.iterations ? std::to_string(*r.iterations) : "") << ',' << r.reason << ','
            << csv_quote(r.error) << '\n';
      }
    }
    if (g.out) {
      open_output(*g.out, g.format == "json" ? "sweep.json" : "sweep.csv") << buf.str();
    } else {
      out << buf.str();
    }
    return kOk;
  });
}

int cmd_generate(const GlobalOptions& g, const GenerateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.count < 1) throw InputError("--count must be at least 1");
    const std::uint64_t seed = g.seed.value_or(opts.seed);
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < opts.count; ++i) {
      nlohmann::json s = plant_sample_to_json(random_plant(opts.n, opts.m, seed + i));
      if (g.out) open_output(*g.out, "plant_" + std::to_string(seed + i) + ".json") << s.dump(2) << '\n';
      arr.push_back(std::move(s));
    }
    if (!g.out) out << (opts.count == 1 ? arr[0] : arr).dump(2) << '\n';
    return kOk;
  });
}

}  // namespace issgd::cli
