// Command-line front end. All substantive work lives in orbitkit::run_*;
// this file only parses flags, routes, and decides where the JSON goes.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "orbitkit/commands.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string json_path;  // empty: no JSON; "-": JSON replaces the summary on stdout
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<int> degree_bound;
  bool strict = false;
};

void add_common(CLI::App* sub, CommonFlags& f, bool needs_config) {
  if (needs_config)
    sub->add_option("-c,--config", f.config_path, "configuration file")
        ->required()
        ->check(CLI::ExistingFile);
  sub->add_option("--seed", f.seed, "override the random seed");
  sub->add_option("--samples", f.samples, "override the Monte Carlo sample count");
  sub->add_option("--json", f.json_path, "write the JSON report to this path ('-' = stdout)");
  sub->add_flag("--strict", f.strict, "exit with code 3 on an inconclusive verdict");
}

orbitkit::CliOverrides to_overrides(const CommonFlags& f) {
  orbitkit::CliOverrides ov;
  ov.seed = f.seed;
  ov.samples = f.samples;
  ov.degree_bound = f.degree_bound;
  ov.strict = f.strict;
  return ov;
}

int emit(const orbitkit::CommandResult& r, const CommonFlags& f) {
  if (!r.error.empty()) {
    std::cerr << "error: " << r.error << "\n";
    return r.exit_code == 0 ? 2 : r.exit_code;
  }
  if (f.json_path == "-") {
    std::cout << r.json_text;
    return r.exit_code;
  }
  std::cout << r.summary << "\n";
  if (!f.json_path.empty()) {
    std::ofstream out(f.json_path, std::ios::binary);
    out << r.json_text;
    if (!out) {
      std::cerr << "error: cannot write '" << f.json_path << "'\n";
      return 2;
    }
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitkit: invariant-theoretic analysis of compact group orbits"};
  app.require_subcommand(1);

  CommonFlags torus_f, defect_f, flow_f, checkf_f, gelfand_f, fixtures_f;

  CLI::App* torus =
      app.add_subcommand("torus-analyze", "exact fibration analysis of a torus orbit");
  add_common(torus, torus_f, true);

  CLI::App* defect = app.add_subcommand(
      "orbit-defect", "multiplicativity defect of orbit averages on monomials");
  add_common(defect, defect_f, true);
  defect->add_option("--degree-bound", defect_f.degree_bound,
                     "monomial degree bound for the defect scan");

  CLI::App* flow =
      app.add_subcommand("orbit-flow", "norm-minimizing descent along the group orbit");
  add_common(flow, flow_f, true);

  CLI::App* checkf = app.add_subcommand(
      "group-check-f", "normalizer dimension test for a subalgebra pair");
  add_common(checkf, checkf_f, true);

  CLI::App* gelfand = app.add_subcommand(
      "group-gelfand", "multiplicity-free test over a family of characters");
  add_common(gelfand, gelfand_f, true);

  CLI::App* fixtures =
      app.add_subcommand("fixtures", "run the built-in example gallery as a self-test");
  add_common(fixtures, fixtures_f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*torus)
      return emit(orbitkit::run_torus_analyze(
                      orbitkit::Config::parse_file(torus_f.config_path),
                      to_overrides(torus_f)),
                  torus_f);
    if (*defect)
      return emit(orbitkit::run_orbit_defect(
                      orbitkit::Config::parse_file(defect_f.config_path),
                      to_overrides(defect_f)),
                  defect_f);
    if (*flow)
      return emit(orbitkit::run_orbit_flow(orbitkit::Config::parse_file(flow_f.config_path),
                                           to_overrides(flow_f)),
                  flow_f);
    if (*checkf)
      return emit(orbitkit::run_group_check_f(
                      orbitkit::Config::parse_file(checkf_f.config_path),
                      to_overrides(checkf_f)),
                  checkf_f);
    if (*gelfand)
      return emit(orbitkit::run_group_gelfand(
                      orbitkit::Config::parse_file(gelfand_f.config_path),
                      to_overrides(gelfand_f)),
                  gelfand_f);
    if (*fixtures) return emit(orbitkit::run_fixtures(to_overrides(fixtures_f)), fixtures_f);
  } catch (const orbitkit::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
