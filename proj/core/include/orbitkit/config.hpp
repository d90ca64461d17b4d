#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitkit/lattice_cone.hpp"
#include "orbitkit/numeric.hpp"

namespace orbitkit {

/// Parse or validation failure with the source name and 1-based line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Sectioned key-value configuration:
///   # full-line comment
///   [section]
///   key = value
/// Values keep their raw text; typed accessors parse on demand and report
/// the defining line on failure. The complete grammar is documented in
/// docs/config-format.md.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& source = "<config>");

  const std::string& source() const { return source_; }
  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  long long get_int(const std::string& section, const std::string& key) const;
  long long get_int_or(const std::string& section, const std::string& key,
                       long long fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key) const;
  std::uint64_t get_u64_or(const std::string& section, const std::string& key,
                           std::uint64_t fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;

  /// "(1,0) (-1,0) (0,1)" -> integer weight vectors of one common length.
  std::vector<WeightVector> get_weights(const std::string& section,
                                        const std::string& key) const;
  /// "(re,im) (re,im) ..." with decimal literals.
  Eigen::VectorXcd get_complex_vector(const std::string& section,
                                      const std::string& key) const;
  /// Same syntax, parsed exactly as rationals.
  std::vector<GaussRat> get_exact_vector(const std::string& section,
                                         const std::string& key) const;

  /// Sections and keys in sorted order (used for the report echo).
  std::vector<std::string> sections() const;
  std::vector<std::pair<std::string, std::string>> items(const std::string& section) const;

  int line_of(const std::string& section, const std::string& key) const;

 private:
  struct Value {
    std::string text;
    int line = 0;
  };
  std::string source_;
  std::map<std::string, std::map<std::string, Value>> data_;

  const Value& require(const std::string& section, const std::string& key) const;
};

/// Matrices from a text file: one row per line of whitespace-separated
/// "(re,im)" entries, matrices separated by blank lines, '#' comments.
std::vector<Eigen::MatrixXcd> parse_matrix_list(const std::string& path);

}  // namespace orbitkit
