#include "orbitkit/torus_orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orbitkit {

namespace {

std::vector<Int> row_to_ints(const std::vector<mpz_class>& row) {
  std::vector<Int> out;
  out.reserve(row.size());
  for (const auto& v : row) {
    if (!v.fits_slong_p())
      throw ResourceLimitError("kernel basis entry exceeds machine integer range");
    out.push_back(static_cast<Int>(v.get_si()));
  }
  return out;
}

std::string exponent_str(const std::vector<Int>& c) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ",";
    os << c[i];
  }
  os << ")";
  return os.str();
}

// Kernel relations of the weights over supp v, embedded into full exponent
// pairs (a, b) with disjoint supports inside supp v.
std::vector<HullRelation> support_relations(const TorusAction& act, const OrbitPoint& v) {
  const std::vector<int> supp = v.support();
  std::vector<WeightVector> rows;
  rows.reserve(supp.size());
  for (int j : supp) rows.push_back(act.weights[j]);
  std::vector<HullRelation> rel;
  if (rows.empty()) return rel;
  LatticeBasis k = integer_kernel(rows);
  for (const auto& zrow : k.rows) {
    std::vector<Int> c = row_to_ints(zrow);
    std::vector<Int> a(act.m(), 0), b(act.m(), 0);
    for (std::size_t idx = 0; idx < supp.size(); ++idx) {
      if (c[idx] > 0)
        a[supp[idx]] = c[idx];
      else if (c[idx] < 0)
        b[supp[idx]] = -c[idx];
    }
    rel.emplace_back(std::move(a), std::move(b));
  }
  return rel;
}

}  // namespace

TorusAction TorusAction::create(int n, std::vector<WeightVector> weights) {
  if (n <= 0) throw std::invalid_argument("torus rank must be positive");
  if (weights.empty()) throw std::invalid_argument("action needs at least one weight");
  for (const auto& w : weights)
    if (static_cast<int>(w.size()) != n)
      throw std::invalid_argument("weight length does not match torus rank");
  TorusAction a;
  a.n = n;
  a.weights = std::move(weights);
  return a;
}

OrbitPoint OrbitPoint::from_doubles(std::vector<std::complex<double>> coords) {
  OrbitPoint p;
  p.approx = std::move(coords);
  return p;
}

OrbitPoint OrbitPoint::from_exact(std::vector<GaussRat> coords) {
  OrbitPoint p;
  p.approx.reserve(coords.size());
  for (const auto& c : coords) p.approx.push_back(c.to_complex());
  p.exact = std::move(coords);
  return p;
}

bool OrbitPoint::coord_nonzero(int j) const {
  if (exact) return !(*exact)[j].is_zero();
  return approx[j] != std::complex<double>(0.0, 0.0);
}

std::vector<int> OrbitPoint::support() const {
  std::vector<int> s;
  for (int j = 0; j < dim(); ++j)
    if (coord_nonzero(j)) s.push_back(j);
  return s;
}

WeightSemigroup orbit_spectrum(const TorusAction& a, const OrbitPoint& v) {
  if (v.dim() != a.m()) throw std::invalid_argument("point dimension does not match action");
  if (v.is_zero())
    throw std::invalid_argument("orbit spectrum of the zero vector is undefined");
  std::vector<WeightVector> gens;
  for (int j : v.support()) gens.push_back(a.weights[j]);
  return WeightSemigroup::from_generators(a.n, std::move(gens));
}

std::optional<OrbitPoint> reachable_limit(const TorusAction& a, const OrbitPoint& v,
                                          const std::vector<Rat>& xi) {
  if (v.dim() != a.m()) throw std::invalid_argument("point dimension does not match action");
  if (static_cast<int>(xi.size()) != a.n)
    throw std::invalid_argument("direction dimension does not match torus rank");
  std::vector<int> keep(a.m(), 0);
  for (int j = 0; j < a.m(); ++j) {
    if (!v.coord_nonzero(j)) continue;
    Rat p = pairing(a.weights[j], xi);
    if (p < 0) return std::nullopt;  // e^{t <w_j, xi>} |v_j| diverges
    keep[j] = (p == 0) ? 1 : 0;
  }
  if (v.is_exact()) {
    std::vector<GaussRat> coords(a.m());
    for (int j = 0; j < a.m(); ++j)
      coords[j] = keep[j] ? (*v.exact)[j] : GaussRat{};
    return OrbitPoint::from_exact(std::move(coords));
  }
  std::vector<std::complex<double>> coords(a.m(), {0.0, 0.0});
  for (int j = 0; j < a.m(); ++j)
    if (keep[j]) coords[j] = v.approx[j];
  return OrbitPoint::from_doubles(std::move(coords));
}

NilconeCertificate nilcone_member_exact(const TorusAction& a, const OrbitPoint& v) {
  if (v.dim() != a.m()) throw std::invalid_argument("point dimension does not match action");
  for (int j = 0; j < a.m(); ++j) {
    const bool zero_weight = std::all_of(a.weights[j].begin(), a.weights[j].end(),
                                         [](Int x) { return x == 0; });
    if (zero_weight && v.coord_nonzero(j))
      throw std::invalid_argument(
          "coordinate " + std::to_string(j) +
          " has zero weight and a nonzero value: it spans a fixed direction, so "
          "nilcone membership is not defined for this point");
  }
  WeightSemigroup spec = orbit_spectrum(a, v);
  NilconeCertificate out;
  PointednessCertificate pc = cone_is_pointed(spec);
  if (pc.pointed) {
    out.member = true;
    out.functional = pc.functional;
    // Internal consistency: the certificate must pair >= 1 with every support
    // weight, which is exactly why every invariant monomial vanishes at v.
    for (const auto& g : spec.generators)
      if (pairing(g, *out.functional) < 1)
        throw std::logic_error("invalid strict functional from LP");
  } else {
    out.member = false;
    const std::vector<Rat>& comb = *pc.vanishing_combination;
    // Map the combination on deduplicated spectrum generators back to one
    // coordinate per generator: an invariant monomial not vanishing at v.
    std::vector<Int> c(a.m(), 0);
    const std::vector<int> supp = v.support();
    for (std::size_t gi = 0; gi < spec.generators.size(); ++gi) {
      if (comb[gi] == 0) continue;
      if (comb[gi].get_den() != 1 || !comb[gi].get_num().fits_slong_p())
        throw std::logic_error("vanishing combination not in primitive integer form");
      for (int j : supp) {
        if (a.weights[j] == spec.generators[gi]) {
          c[j] = static_cast<Int>(comb[gi].get_num().get_si());
          break;
        }
      }
    }
    WeightVector total(a.n, 0);
    for (int j = 0; j < a.m(); ++j)
      for (int d = 0; d < a.n; ++d) total[d] += c[j] * a.weights[j][d];
    if (std::any_of(total.begin(), total.end(), [](Int x) { return x != 0; }))
      throw std::logic_error("invariant monomial exponent does not lie in the kernel");
    out.invariant_monomial = std::move(c);
  }
  return out;
}

FibrationReport analyze(const TorusAction& a, const OrbitPoint& v) {
  FibrationReport r;
  r.action = a;
  r.v = v;
  r.spectrum = orbit_spectrum(a, v);

  bool fixed_direction = false;
  for (int j = 0; j < a.m(); ++j) {
    const bool zero_weight = std::all_of(a.weights[j].begin(), a.weights[j].end(),
                                         [](Int x) { return x == 0; });
    if (zero_weight && v.coord_nonzero(j)) fixed_direction = true;
  }
  if (fixed_direction)
    r.warnings.push_back(
        "a support coordinate has zero weight: the ambient space has fixed "
        "directions, so the nilcone dichotomy does not apply (nilpotent = false)");

  r.antisymmetric = is_antisymmetric_semigroup(r.spectrum);
  r.nilpotent = strict_positive_functional(r.spectrum).has_value();
  r.lineality = lineality_lattice(r.spectrum);
  r.xi_star = relint_dual_point(r.spectrum);

  auto lim = reachable_limit(a, v, r.xi_star);
  if (!lim) throw std::logic_error("limit along the relint dual certificate must exist");
  r.v_tilde = std::move(*lim);

  for (int j = 0; j < a.m(); ++j) {
    if (r.lineality.contains(a.weights[j]))
      r.base_coords.push_back(j);
    else
      r.fiber_coords.push_back(j);
  }
  r.hull_relations = support_relations(a, v);
  return r;
}

HullVerdict hull_outer_membership(const TorusAction& a, const OrbitPoint& v,
                                  const OrbitPoint& z, double tol) {
  if (v.dim() != a.m() || z.dim() != a.m())
    throw std::invalid_argument("point dimension does not match action");
  const bool exact = v.is_exact() && z.is_exact();
  HullVerdict out;

  for (int j = 0; j < a.m(); ++j) {
    bool ok;
    if (exact)
      ok = (*z.exact)[j].norm_sq() <= (*v.exact)[j].norm_sq();
    else
      ok = std::abs(z.approx[j]) <= std::abs(v.approx[j]) + tol;
    if (!ok) {
      out.member = false;
      out.violated_constraint =
          "coordinate " + std::to_string(j) + ": |z_j| exceeds the orbit modulus |v_j|";
      return out;
    }
  }

  for (const HullRelation& rel : support_relations(a, v)) {
    const auto& ea = rel.first;
    const auto& eb = rel.second;
    bool ok;
    if (exact) {
      GaussRat lhs = monomial_eval_exact(z, ea) * monomial_eval_exact(v, eb);
      GaussRat rhs = monomial_eval_exact(z, eb) * monomial_eval_exact(v, ea);
      ok = (lhs == rhs);
    } else {
      std::complex<double> lhs = monomial_eval(z, ea) * monomial_eval(v, eb);
      std::complex<double> rhs = monomial_eval(z, eb) * monomial_eval(v, ea);
      ok = std::abs(lhs - rhs) <= tol;
    }
    if (!ok) {
      out.member = false;
      out.violated_constraint = "binomial relation z^a v^b = z^b v^a violated, a=" +
                                exponent_str(ea) + " b=" + exponent_str(eb);
      return out;
    }
  }
  out.member = true;
  return out;
}

OrbitPoint hull_inner_sample(const TorusAction& a, const OrbitPoint& v,
                             const std::vector<double>& theta,
                             const std::vector<double>& xi) {
  if (v.dim() != a.m()) throw std::invalid_argument("point dimension does not match action");
  if (static_cast<int>(theta.size()) != a.n || static_cast<int>(xi.size()) != a.n)
    throw std::invalid_argument("angle/direction dimension does not match torus rank");
  for (int j : v.support()) {
    double p = 0;
    for (int d = 0; d < a.n; ++d) p += static_cast<double>(a.weights[j][d]) * xi[d];
    if (p < 0)
      throw std::domain_error(
          "direction pairs negatively with support weight " + std::to_string(j) +
          "; the sample would leave the hull");
  }
  std::vector<std::complex<double>> coords(a.m(), {0.0, 0.0});
  for (int j = 0; j < a.m(); ++j) {
    if (!v.coord_nonzero(j)) continue;
    double ang = 0, dec = 0;
    for (int d = 0; d < a.n; ++d) {
      ang += static_cast<double>(a.weights[j][d]) * theta[d];
      dec += static_cast<double>(a.weights[j][d]) * xi[d];
    }
    coords[j] = v.approx[j] * std::exp(std::complex<double>(-dec, ang));
  }
  return OrbitPoint::from_doubles(std::move(coords));
}

MonomialImage alpha_on_monomial(const FibrationReport& r, const std::vector<Int>& c) {
  const int m = r.action.m();
  if (static_cast<int>(c.size()) != m)
    throw std::invalid_argument("exponent length does not match action");
  for (int j = 0; j < m; ++j) {
    if (c[j] < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
    if (c[j] > 0 && !r.v.coord_nonzero(j))
      throw std::invalid_argument(
          "monomial support must lie inside the support of the base point");
  }
  MonomialImage img;
  img.exponent = c;
  img.zero = false;
  for (int j : r.fiber_coords) {
    if (c[j] > 0) {
      img.zero = true;
      break;
    }
  }
  if (img.zero) img.exponent.assign(m, 0);
  return img;
}

GaussRat monomial_eval_exact(const OrbitPoint& p, const std::vector<Int>& c) {
  if (!p.is_exact()) throw std::invalid_argument("point has no exact coordinates");
  if (c.size() != p.exact->size()) throw std::invalid_argument("exponent length mismatch");
  GaussRat acc{1, 0};
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
    if (c[j] == 0) continue;
    acc = acc * pow((*p.exact)[j], static_cast<unsigned long long>(c[j]));
  }
  return acc;
}

std::complex<double> monomial_eval(const OrbitPoint& p, const std::vector<Int>& c) {
  if (c.size() != p.approx.size()) throw std::invalid_argument("exponent length mismatch");
  std::complex<double> acc{1.0, 0.0};
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
    for (Int k = 0; k < c[j]; ++k) acc *= p.approx[j];
  }
  return acc;
}

GaussRat fiber_average_exact(const FibrationReport& r, const std::vector<Int>& c) {
  const TorusAction& a = r.action;
  if (!r.v.is_exact()) throw std::invalid_argument("fiber average needs an exact point");
  if (static_cast<int>(c.size()) != a.m())
    throw std::invalid_argument("exponent length does not match action");
  for (Int e : c)
    if (e < 0) throw std::invalid_argument("monomial exponents must be nonnegative");

  // Lie algebra of the subtorus fixing v_tilde: directions xi with
  // <w_j, xi> = 0 for every support coordinate of v_tilde.
  std::vector<WeightVector> stab_rows;
  for (int j : r.v_tilde.support()) stab_rows.push_back(a.weights[j]);
  std::vector<std::vector<Rat>> h = rational_nullspace(a.n, stab_rows);

  // Character weight of z^c restricted to that subtorus.
  WeightVector omega(a.n, 0);
  for (int j = 0; j < a.m(); ++j)
    for (int d = 0; d < a.n; ++d) omega[d] += c[j] * a.weights[j][d];
  for (const auto& xi : h)
    if (pairing(omega, xi) != 0) return GaussRat{};  // mean of a nontrivial character

  return monomial_eval_exact(r.v, c);
}

}  // namespace orbitkit
