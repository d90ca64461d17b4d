#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitkit {

using Int = long long;
using Rat = mpq_class;

inline double to_double(const Rat& r) { return r.get_d(); }

/// Canonical string form "p" or "p/q" with q > 0 and gcd(p, q) = 1.
inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

/// Parses "p", "p/q", decimal ("1.25") and scientific ("5e-3") literals.
/// Every such literal is an exact rational; no rounding happens here.
Rat rat_from_string(const std::string& text);

/// Complex number with exact rational real and imaginary parts.
struct GaussRat {
  Rat re{0}, im{0};

  GaussRat() = default;
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }
  /// |z|^2, exact.
  Rat norm_sq() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline GaussRat pow(const GaussRat& base, unsigned long long e) {
  GaussRat acc{1, 0};
  GaussRat b = base;
  while (e > 0) {
    if (e & 1ULL) acc = acc * b;
    b = b * b;
    e >>= 1ULL;
  }
  return acc;
}

/// Neumaier-compensated accumulator; the final value is independent of
/// the summation order up to one extra rounding.
struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  void merge(const Kahan& other) {
    add(other.sum);
    comp += other.comp;
  }
  double value() const { return sum + comp; }
};

struct KahanComplex {
  Kahan re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  void merge(const KahanComplex& o) {
    re.merge(o.re);
    im.merge(o.im);
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace orbitkit
