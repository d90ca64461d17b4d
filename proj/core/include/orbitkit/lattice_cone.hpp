#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitkit/numeric.hpp"
#include "orbitkit/rational_lp.hpp"

namespace orbitkit {

/// Integer character weight in Z^n.
using WeightVector = std::vector<Int>;

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finitely generated additive subsemigroup of Z^n, with 0 as the identity.
/// Generators are stored sorted lexicographically and deduplicated; zero
/// generators are stripped but remembered (the identity never affects the
/// tests below).
struct WeightSemigroup {
  int dim = 0;
  std::vector<WeightVector> generators;
  bool zero_generator_present = false;

  static WeightSemigroup from_generators(int dim, std::vector<WeightVector> gens);
};

/// Basis of a sublattice of Z^n in canonical row-Hermite form: row-echelon with
/// positive pivots and entries above each pivot reduced into [0, pivot).
/// A given sublattice has exactly one such basis.
struct LatticeBasis {
  int dim = 0;
  std::vector<std::vector<mpz_class>> rows;

  int rank() const { return static_cast<int>(rows.size()); }
  /// Exact membership of v in the generated lattice.
  bool contains(const std::vector<mpz_class>& v) const;
  bool contains(const WeightVector& v) const;
};

/// Canonical basis of the lattice generated by the given rows.
LatticeBasis lattice_from_rows(int dim, const std::vector<std::vector<mpz_class>>& rows);
LatticeBasis lattice_from_weights(int dim, const std::vector<WeightVector>& rows);

struct PointednessCertificate {
  bool pointed = false;
  /// Set when pointed: rational lambda with <g, lambda> >= 1 for every generator.
  std::optional<std::vector<Rat>> functional;
  /// Set when not pointed: nonzero c >= 0, indexed like generators, with
  /// sum_i c_i g_i = 0. Normalized to the primitive integer vector on its ray.
  std::optional<std::vector<Rat>> vanishing_combination;
};

/// Decides whether the rational cone spanned by the generators is pointed
/// (contains no line) and returns the witness for whichever side holds.
PointednessCertificate cone_is_pointed(const WeightSemigroup& s);

/// S is antisymmetric iff S ∩ (−S) = {0}.
bool is_antisymmetric_semigroup(const WeightSemigroup& s);

/// Lattice generated by the generators g with −g in the rational cone of all
/// generators (the units of S live inside it).
LatticeBasis lineality_lattice(const WeightSemigroup& s);

/// Full integer kernel {c in Z^m : sum_i c_i w_i = 0} of an ordered list of
/// m weights, as a canonical lattice basis (the whole kernel, not a
/// finite-index sublattice).
LatticeBasis integer_kernel(const std::vector<WeightVector>& weights);

/// Rational xi with <g, xi> >= 1 for every generator, when one exists.
std::optional<std::vector<Rat>> strict_positive_functional(const WeightSemigroup& s);

/// Rational xi with <g, xi> = 0 exactly for generators in the lineality
/// lattice and <g, xi> >= 1 for every other generator. Always exists.
std::vector<Rat> relint_dual_point(const WeightSemigroup& s);

/// All semigroup elements reachable from 0 by adding generators while every
/// partial sum stays within sup-norm <= norm_bound (breadth-first closure
/// with pruning at the bound). Includes 0. Elements come out in
/// lexicographic order.
struct EnumeratedSemigroup {
  int dim = 0;
  std::vector<Int> flat;  // size() blocks of dim entries, lex-sorted

  std::size_t size() const { return dim == 0 ? 0 : flat.size() / dim; }
  WeightVector at(std::size_t i) const;
  bool contains(const WeightVector& v) const;  // binary search
};

EnumeratedSemigroup semigroup_enumerate(const WeightSemigroup& s, Int norm_bound,
                                        std::size_t max_elements = 1'000'000);

/// Basis of the rational solution space {xi in Q^n : <row, xi> = 0 for all
/// rows}, by exact Gauss-Jordan elimination.
std::vector<std::vector<Rat>> rational_nullspace(int dim,
                                                 const std::vector<WeightVector>& rows);

/// Exact pairing <w, xi>.
Rat pairing(const WeightVector& w, const std::vector<Rat>& xi);

}  // namespace orbitkit
