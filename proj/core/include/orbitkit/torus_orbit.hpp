#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitkit/lattice_cone.hpp"

namespace orbitkit {

/// Diagonal action of the rank-n torus on C^m: t = exp(i*theta) scales
/// coordinate j by the character e^{i <w_j, theta>}. The complexified action
/// along a rational direction xi scales coordinate j by e^{-t <w_j, xi>}.
struct TorusAction {
  int n = 0;                          // torus rank
  std::vector<WeightVector> weights;  // m rows, each of length n

  int m() const { return static_cast<int>(weights.size()); }
  static TorusAction create(int n, std::vector<WeightVector> weights);
};

/// Point of C^m. When exact coordinates are present, approx mirrors them;
/// all exact operations preserve exactness.
struct OrbitPoint {
  std::vector<std::complex<double>> approx;
  std::optional<std::vector<GaussRat>> exact;

  static OrbitPoint from_doubles(std::vector<std::complex<double>> coords);
  static OrbitPoint from_exact(std::vector<GaussRat> coords);

  int dim() const { return static_cast<int>(approx.size()); }
  bool is_exact() const { return exact.has_value(); }
  bool coord_nonzero(int j) const;
  std::vector<int> support() const;
  bool is_zero() const { return support().empty(); }
};

/// Exponent pair (a, b) with a, b >= 0 and W^T (a - b) = 0; the binomial
/// z^a v^b - z^b v^a vanishes identically on the orbit of v.
using HullRelation = std::pair<std::vector<Int>, std::vector<Int>>;

struct FibrationReport {
  TorusAction action;
  OrbitPoint v;
  WeightSemigroup spectrum;     // weights over supp v, deduplicated
  bool antisymmetric = false;   // spectrum semigroup meets its negative only in 0
  bool nilpotent = false;       // all invariant monomials vanish at v
  LatticeBasis lineality;       // lattice of unit spectrum generators
  std::vector<Rat> xi_star;     // <w, xi*> = 0 on the lineality lattice, >= 1 outside
  OrbitPoint v_tilde;           // limit of the orbit along xi*
  std::vector<int> fiber_coords;  // j with w_j outside the lineality lattice
  std::vector<int> base_coords;   // complement
  std::vector<HullRelation> hull_relations;  // from the support kernel basis
  std::vector<std::string> warnings;
};

/// Weights over the support of v as a semigroup; v = 0 is rejected.
WeightSemigroup orbit_spectrum(const TorusAction& a, const OrbitPoint& v);

/// Full exact analysis of the orbit closure geometry of v.
FibrationReport analyze(const TorusAction& a, const OrbitPoint& v);

/// Limit of exp(i t xi) . v as t -> +infinity; nullopt when some support
/// coordinate has <w_j, xi> < 0 (the flow diverges).
std::optional<OrbitPoint> reachable_limit(const TorusAction& a, const OrbitPoint& v,
                                          const std::vector<Rat>& xi);

struct NilconeCertificate {
  bool member = false;
  /// member: rational xi with <w_j, xi> >= 1 on supp v (so exp(i t xi) v -> 0).
  std::optional<std::vector<Rat>> functional;
  /// not member: exponent c >= 0 supported in supp v with W^T c = 0, so z^c is
  /// an invariant monomial with z^c(v) != 0.
  std::optional<std::vector<Int>> invariant_monomial;
};

/// Exact membership of v in the common zero set of the nonconstant invariant
/// monomials. Refuses (std::invalid_argument) when v has a nonzero coordinate
/// of weight zero: that coordinate is a fixed direction and the nilcone
/// dichotomy does not apply.
NilconeCertificate nilcone_member_exact(const TorusAction& a, const OrbitPoint& v);

struct HullVerdict {
  bool member = false;
  std::string violated_constraint;  // empty when member
};

/// Necessary outer test for membership of z in the polynomial hull of the
/// orbit of v: |z_j| <= |v_j| coordinatewise plus every binomial relation
/// z^a v^b = z^b v^a from the support kernel. Exact when both points carry
/// exact coordinates, otherwise within tol.
HullVerdict hull_outer_membership(const TorusAction& a, const OrbitPoint& v,
                                  const OrbitPoint& z, double tol = 1e-10);

/// Point z_j = v_j exp(i <w_j, theta> - <w_j, xi>) of the hull; requires
/// <w_j, xi> >= 0 for every support coordinate.
OrbitPoint hull_inner_sample(const TorusAction& a, const OrbitPoint& v,
                             const std::vector<double>& theta,
                             const std::vector<double>& xi);

/// Image of a monomial (supp c inside supp v) under fiber averaging: the
/// monomial itself when it is constant along the fibers, otherwise zero.
struct MonomialImage {
  bool zero = false;
  std::vector<Int> exponent;
};
MonomialImage alpha_on_monomial(const FibrationReport& r, const std::vector<Int>& c);

/// Exact average of z^c over the fiber through v (the orbit of v under the
/// subtorus fixing v_tilde), computed from the character weight restricted to
/// that subtorus. Requires exact v.
GaussRat fiber_average_exact(const FibrationReport& r, const std::vector<Int>& c);

/// z^c evaluated at an exact point.
GaussRat monomial_eval_exact(const OrbitPoint& p, const std::vector<Int>& c);
std::complex<double> monomial_eval(const OrbitPoint& p, const std::vector<Int>& c);

}  // namespace orbitkit
