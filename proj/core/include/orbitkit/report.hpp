#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orbitkit {

inline constexpr const char* kSchemaVersion = "1.0.0";

struct Provenance {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  int threads = 1;
  double wall_time_ms = 0.0;
  bool approximate_haar = false;
};

/// Structural validation of an emitted report against the envelope contract
/// published in docs/report-schema.json. Returns the list of problems;
/// empty means valid.
std::vector<std::string> validate_envelope(const std::string& json_text);

}  // namespace orbitkit
