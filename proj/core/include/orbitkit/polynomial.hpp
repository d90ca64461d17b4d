#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "orbitkit/numeric.hpp"

namespace orbitkit {

/// Sparse holomorphic polynomial in m complex coordinates (no conjugates):
/// exponent vector -> coefficient. The ordered map keeps every traversal
/// deterministic.
struct Polynomial {
  int vars = 0;
  std::map<std::vector<Int>, std::complex<double>> terms;

  explicit Polynomial(int vars = 0) : vars(vars) {}

  static Polynomial constant(int vars, std::complex<double> c);
  static Polynomial monomial(int vars, std::vector<Int> exponent,
                             std::complex<double> coeff = 1.0);
  /// The coordinate function z_j.
  static Polynomial coordinate(int vars, int j);

  Polynomial& add_term(std::vector<Int> exponent, std::complex<double> coeff);
  std::complex<double> eval(const Eigen::VectorXcd& z) const;
  int degree() const;
  bool empty() const { return terms.empty(); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(std::complex<double> s, const Polynomial& a);
};

struct NamedPolynomial {
  std::string name;
  Polynomial p;
};

/// "c1,c2,...,cm" — stable key for exponent vectors in reports.
std::string exponent_key(const std::vector<Int>& c);

/// All exponent vectors with 1 <= |c| <= degree in graded lexicographic
/// order, plus for each its parent index and the extending variable, so a
/// full evaluation sweep costs one multiplication per monomial.
struct MonomialTable {
  int vars = 0;
  int degree = 0;
  std::vector<std::vector<Int>> exponents;
  std::vector<int> parent;  // -1: parent is the constant 1
  std::vector<int> var;     // exponent extended by variable var[i]

  std::size_t size() const { return exponents.size(); }
  /// Values of every monomial at z, in table order.
  void eval_all(const Eigen::VectorXcd& z, std::vector<std::complex<double>>& out) const;
  /// Index lookup; returns -1 when the exponent is outside the table.
  int index_of(const std::vector<Int>& c) const;

  static MonomialTable build(int vars, int degree, std::size_t cap);

 private:
  std::map<std::vector<Int>, int> index_;
};

}  // namespace orbitkit
