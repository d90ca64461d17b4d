#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "orbitkit/config.hpp"

namespace orbitkit {

/// Command-line overrides; unset fields fall back to the config file and
/// then to documented defaults.
struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<int> degree_bound;
  bool strict = false;
};

struct CommandResult {
  /// 0 success; 1 fixture self-test failure; 2 configuration/validation
  /// error; 3 inconclusive verdict under --strict.
  int exit_code = 0;
  std::string json_text;  // report envelope (empty on exit code 2)
  std::string summary;    // human-readable lines for standard output
  std::string error;      // set when exit_code == 2
};

CommandResult run_torus_analyze(const Config& cfg, const CliOverrides& ov = {});
CommandResult run_orbit_defect(const Config& cfg, const CliOverrides& ov = {});
CommandResult run_orbit_flow(const Config& cfg, const CliOverrides& ov = {});
CommandResult run_group_check_f(const Config& cfg, const CliOverrides& ov = {});
CommandResult run_group_gelfand(const Config& cfg, const CliOverrides& ov = {});
CommandResult run_fixtures(const CliOverrides& ov = {});

}  // namespace orbitkit
