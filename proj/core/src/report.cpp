#include "orbitkit/report.hpp"

#include <cctype>
#include <json.hpp>

namespace orbitkit {

namespace {

using nlohmann::json;

bool semver_like(const std::string& s) {
  int dots = 0;
  bool digit_run = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit_run = true;
    } else if (c == '.') {
      if (!digit_run) return false;
      ++dots;
      digit_run = false;
    } else {
      return false;
    }
  }
  return dots == 2 && digit_run;
}

}  // namespace

std::vector<std::string> validate_envelope(const std::string& json_text) {
  std::vector<std::string> problems;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    problems.push_back(std::string("not valid JSON: ") + e.what());
    return problems;
  }
  if (!doc.is_object()) {
    problems.push_back("top-level value is not an object");
    return problems;
  }

  static const char* kCommands[] = {"torus-analyze", "orbit-defect",  "orbit-flow",
                                    "group-check-f", "group-gelfand", "fixtures"};
  static const char* kKeys[] = {"schema_version", "command",  "config",
                                "provenance",     "verdicts", "warnings"};

  for (const char* key : kKeys)
    if (!doc.contains(key)) problems.push_back(std::string("missing key '") + key + "'");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) problems.push_back("unexpected top-level key '" + key + "'");
  }
  if (!problems.empty()) return problems;

  if (!doc["schema_version"].is_string() ||
      !semver_like(doc["schema_version"].get<std::string>()))
    problems.push_back("schema_version is not a semantic version string");

  if (!doc["command"].is_string()) {
    problems.push_back("command is not a string");
  } else {
    const std::string cmd = doc["command"].get<std::string>();
    bool known = false;
    for (const char* c : kCommands) known = known || cmd == c;
    if (!known) problems.push_back("unknown command '" + cmd + "'");
  }

  if (!doc["config"].is_object()) {
    problems.push_back("config is not an object");
  } else {
    for (const auto& [section, body] : doc["config"].items()) {
      if (!body.is_object()) {
        problems.push_back("config section '" + section + "' is not an object");
        continue;
      }
      for (const auto& [key, value] : body.items())
        if (!value.is_string())
          problems.push_back("config value " + section + "." + key + " is not a string");
    }
  }

  const json& prov = doc["provenance"];
  if (!prov.is_object()) {
    problems.push_back("provenance is not an object");
  } else {
    if (!prov.contains("seed") || !prov["seed"].is_number_unsigned())
      problems.push_back("provenance.seed is not an unsigned integer");
    if (!prov.contains("samples") || !prov["samples"].is_number_unsigned())
      problems.push_back("provenance.samples is not an unsigned integer");
    if (!prov.contains("threads") || !prov["threads"].is_number_integer() ||
        prov["threads"].get<long long>() < 1)
      problems.push_back("provenance.threads is not a positive integer");
    if (!prov.contains("wall_time_ms") || !prov["wall_time_ms"].is_number() ||
        prov["wall_time_ms"].get<double>() < 0.0)
      problems.push_back("provenance.wall_time_ms is not a nonnegative number");
    if (!prov.contains("approximate_haar") || !prov["approximate_haar"].is_boolean())
      problems.push_back("provenance.approximate_haar is not a boolean");
  }

  if (!doc["verdicts"].is_object() || doc["verdicts"].empty())
    problems.push_back("verdicts is not a nonempty object");

  if (!doc["warnings"].is_array()) {
    problems.push_back("warnings is not an array");
  } else {
    for (const auto& w : doc["warnings"])
      if (!w.is_string()) problems.push_back("warnings entries must be strings");
  }

  return problems;
}

}  // namespace orbitkit
