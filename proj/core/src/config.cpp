#include "orbitkit/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace orbitkit {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

/// Splits "(a,b) (c,d) ..." into component lists; the only accepted shape.
std::vector<std::vector<std::string>> parse_tuples(const std::string& text,
                                                   const std::string& source, int line) {
  std::vector<std::vector<std::string>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(')
      throw ConfigError(source, line, "expected '(' at position " + std::to_string(i + 1));
    const std::size_t close = text.find(')', i);
    if (close == std::string::npos) throw ConfigError(source, line, "missing ')'");
    std::vector<std::string> parts;
    std::string inner = text.substr(i + 1, close - i - 1);
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = inner.find(',', start);
      parts.push_back(trim(inner.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    for (const std::string& p : parts)
      if (p.empty()) throw ConfigError(source, line, "empty tuple component");
    out.push_back(std::move(parts));
    i = close + 1;
  }
  if (out.empty()) throw ConfigError(source, line, "expected at least one '(...)' tuple");
  return out;
}

long long parse_int(const std::string& text, const std::string& source, int line) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (errno == ERANGE) throw ConfigError(source, line, "integer out of range: " + text);
  if (end == text.c_str() || *end != '\0')
    throw ConfigError(source, line, "not an integer: '" + text + "'");
  return v;
}

double parse_double(const std::string& text, const std::string& source, int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw ConfigError(source, line, "not a number: '" + text + "'");
  return v;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s[0] == '[') {
      const std::size_t close = s.find(']');
      if (close == std::string::npos) throw ConfigError(source, line, "missing ']'");
      if (trim(s.substr(close + 1)).size() != 0)
        throw ConfigError(source, line, "unexpected text after ']'");
      section = trim(s.substr(1, close - 1));
      if (section.empty()) throw ConfigError(source, line, "empty section name");
      if (cfg.data_.count(section))
        throw ConfigError(source, line, "duplicate section '" + section + "'");
      cfg.data_[section];
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source, line, "expected 'key = value' or '[section]'");
    if (section.empty()) throw ConfigError(source, line, "key outside of any section");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError(source, line, "empty key");
    auto& sec = cfg.data_[section];
    if (sec.count(key))
      throw ConfigError(source, line, "duplicate key '" + key + "' in section '" + section + "'");
    sec[key] = Value{trim(s.substr(eq + 1)), line};
  }
  return cfg;
}

bool Config::has_section(const std::string& section) const { return data_.count(section) != 0; }

bool Config::has(const std::string& section, const std::string& key) const {
  const auto it = data_.find(section);
  return it != data_.end() && it->second.count(key) != 0;
}

const Config::Value& Config::require(const std::string& section, const std::string& key) const {
  const auto it = data_.find(section);
  if (it == data_.end())
    throw ConfigError(source_, 0, "missing section '[" + section + "]'");
  const auto kit = it->second.find(key);
  if (kit == it->second.end())
    throw ConfigError(source_, 0, "missing key '" + key + "' in section '[" + section + "]'");
  return kit->second;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  return require(section, key).text;
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  return has(section, key) ? get_string(section, key) : fallback;
}

long long Config::get_int(const std::string& section, const std::string& key) const {
  const Value& v = require(section, key);
  return parse_int(v.text, source_, v.line);
}

long long Config::get_int_or(const std::string& section, const std::string& key,
                             long long fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key) const {
  const Value& v = require(section, key);
  const std::string t = v.text;
  if (!t.empty() && t[0] == '-')
    throw ConfigError(source_, v.line, "expected a nonnegative integer: '" + t + "'");
  errno = 0;
  char* end = nullptr;
  const unsigned long long r = std::strtoull(t.c_str(), &end, 10);
  if (errno == ERANGE) throw ConfigError(source_, v.line, "integer out of range: " + t);
  if (end == t.c_str() || *end != '\0')
    throw ConfigError(source_, v.line, "not an integer: '" + t + "'");
  return r;
}

std::uint64_t Config::get_u64_or(const std::string& section, const std::string& key,
                                 std::uint64_t fallback) const {
  return has(section, key) ? get_u64(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const Value& v = require(section, key);
  return parse_double(v.text, source_, v.line);
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
  if (!has(section, key)) return fallback;
  const Value& v = require(section, key);
  if (v.text == "true" || v.text == "yes" || v.text == "1") return true;
  if (v.text == "false" || v.text == "no" || v.text == "0") return false;
  throw ConfigError(source_, v.line, "not a boolean: '" + v.text + "'");
}

std::vector<WeightVector> Config::get_weights(const std::string& section,
                                              const std::string& key) const {
  const Value& v = require(section, key);
  const auto tuples = parse_tuples(v.text, source_, v.line);
  std::vector<WeightVector> out;
  for (const auto& parts : tuples) {
    WeightVector w;
    for (const std::string& p : parts) w.push_back(parse_int(p, source_, v.line));
    if (!out.empty() && w.size() != out.front().size())
      throw ConfigError(source_, v.line, "weight vectors must share one length");
    out.push_back(std::move(w));
  }
  return out;
}

Eigen::VectorXcd Config::get_complex_vector(const std::string& section,
                                            const std::string& key) const {
  const Value& v = require(section, key);
  const auto tuples = parse_tuples(v.text, source_, v.line);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(tuples.size()));
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (tuples[i].size() != 2)
      throw ConfigError(source_, v.line, "complex entries must be '(re,im)'");
    out(static_cast<Eigen::Index>(i)) = {parse_double(tuples[i][0], source_, v.line),
                                         parse_double(tuples[i][1], source_, v.line)};
  }
  return out;
}

std::vector<GaussRat> Config::get_exact_vector(const std::string& section,
                                               const std::string& key) const {
  const Value& v = require(section, key);
  const auto tuples = parse_tuples(v.text, source_, v.line);
  std::vector<GaussRat> out;
  for (const auto& parts : tuples) {
    if (parts.size() != 2)
      throw ConfigError(source_, v.line, "complex entries must be '(re,im)'");
    try {
      out.emplace_back(rat_from_string(parts[0]), rat_from_string(parts[1]));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source_, v.line, e.what());
    }
  }
  return out;
}

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, keys] : data_) out.push_back(name);
  return out;
}

std::vector<std::pair<std::string, std::string>> Config::items(const std::string& section) const {
  std::vector<std::pair<std::string, std::string>> out;
  const auto it = data_.find(section);
  if (it == data_.end()) return out;
  for (const auto& [key, value] : it->second) out.emplace_back(key, value.text);
  return out;
}

int Config::line_of(const std::string& section, const std::string& key) const {
  return require(section, key).line;
}

std::vector<Eigen::MatrixXcd> parse_matrix_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open file");

  std::vector<Eigen::MatrixXcd> out;
  std::vector<std::vector<std::complex<double>>> rows;
  auto flush = [&](int line) {
    if (rows.empty()) return;
    const std::size_t cols = rows[0].size();
    for (const auto& r : rows)
      if (r.size() != cols) throw ConfigError(path, line, "ragged matrix rows");
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    out.push_back(std::move(m));
    rows.clear();
  };

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string s = trim(raw);
    if (s.empty()) {
      flush(line);
      continue;
    }
    if (s[0] == '#') continue;
    const auto tuples = parse_tuples(s, path, line);
    std::vector<std::complex<double>> row;
    for (const auto& parts : tuples) {
      if (parts.size() != 2) throw ConfigError(path, line, "matrix entries must be '(re,im)'");
      row.emplace_back(parse_double(parts[0], path, line), parse_double(parts[1], path, line));
    }
    rows.push_back(std::move(row));
  }
  flush(line);
  if (out.empty()) throw ConfigError(path, line, "no matrices in file");
  return out;
}

}  // namespace orbitkit
