#include "orbitkit/numeric.hpp"

#include <cctype>
#include <cstdlib>

namespace orbitkit {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rat r;
    if (r.set_str(s, 10) != 0 || Rat(r).get_den() == 0)
      throw std::invalid_argument("bad rational literal: " + text);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    negative = (s[pos] == '-');
    ++pos;
  }

  std::string int_part, frac_part, exp_part;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
    int_part.push_back(s[pos++]);
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      frac_part.push_back(s[pos++]);
  }
  long exponent = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::string es;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) es.push_back(s[pos++]);
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      es.push_back(s[pos++]);
    if (es.empty() || (es.size() == 1 && !std::isdigit(static_cast<unsigned char>(es[0]))))
      throw std::invalid_argument("bad exponent in literal: " + text);
    exponent = std::strtol(es.c_str(), nullptr, 10);
  }
  if (pos != s.size() || (int_part.empty() && frac_part.empty()))
    throw std::invalid_argument("bad numeric literal: " + text);
  if (int_part.empty()) int_part = "0";
  if (!all_digits(int_part)) throw std::invalid_argument("bad numeric literal: " + text);

  // Explicit base ten: GMP's base auto-detection would read a leading zero
  // ("0.25" -> mantissa "025") as octal.
  mpz_class mantissa(int_part + frac_part, 10);
  long scale = exponent - static_cast<long>(frac_part.size());
  Rat r(mantissa);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale >= 0)
    r *= Rat(ten_pow);
  else
    r /= Rat(ten_pow);
  if (negative) r = -r;
  r.canonicalize();
  return r;
}

}  // namespace orbitkit
