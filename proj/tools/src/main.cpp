#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace issgd::cli;

  CLI::App app{"Perturbed policy-gradient descent for LQR with ISS verification"};
  app.require_subcommand(1);

  GlobalOptions g;
  std::string config, out_dir;
  std::uint64_t seed = 0;
  auto* config_opt = app.add_option("--config", config, "experiment config (JSON)");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  app.add_option("--jobs", g.jobs, "concurrent sweep runs")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "override the perturbation seed");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  auto* solve = app.add_subcommand("solve", "solve the Riccati equation and print the optimum");
  auto* descend = app.add_subcommand("descend", "run one perturbed descent and write its trajectory");
  auto* verify = app.add_subcommand("verify", "check a stored trajectory against the decrease inequalities");
  auto* sweep = app.add_subcommand("sweep", "run a sweep over epsilon, seed or method");
  auto* generate = app.add_subcommand("generate", "emit random stabilizable plants");

  VerifyOptions v;
  std::string trajectory, meta, method;
  verify->add_option("--trajectory", trajectory, "trajectory CSV from descend")->required();
  auto* meta_opt = verify->add_option("--meta", meta, "sidecar JSON (default: next to the CSV)");
  auto* method_opt = verify->add_option("--method", method, "expected method");

  GenerateOptions gen;
  generate->add_option("--n", gen.n, "state dimension")->check(CLI::Range(1, 8));
  generate->add_option("--m", gen.m, "input dimension")->check(CLI::Range(1, 8));
  generate->add_option("--count", gen.count, "number of plants")->check(CLI::PositiveNumber);

  // Global flags may appear after the subcommand too.
  for (auto* sub : {solve, descend, verify, sweep, generate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*config_opt) g.config = config;
  if (*out_opt) g.out = out_dir;
  if (*seed_opt) g.seed = seed;

  try {
    if (*solve) return cmd_solve(g, std::cout, std::cerr);
    if (*descend) return cmd_descend(g, std::cout, std::cerr);
    if (*sweep) return cmd_sweep(g, std::cout, std::cerr);
    if (*generate) return cmd_generate(g, gen, std::cout, std::cerr);
    v.trajectory = trajectory;
    if (*meta_opt) v.meta = meta;
    if (*method_opt) v.method = method;
    return cmd_verify(g, v, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
