#include "orbitkit/lattice_cone.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace orbitkit {

namespace {

using ZRow = std::vector<mpz_class>;
using ZMat = std::vector<ZRow>;

// Row-style Hermite normal form. Returns H with zero rows removed; when
// transform != nullptr it receives a unimodular U with U * input = H
// (including the rows of U that map to the removed zero rows of H, in order:
// first the rows producing H, then the rows producing zeros).
ZMat hermite_normal_form(int dim, ZMat a, ZMat* transform) {
  const std::size_t m = a.size();
  ZMat u;
  if (transform) {
    u.assign(m, ZRow(m, 0));
    for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
  }
  auto row_op2 = [&](std::size_t r1, std::size_t r2, const mpz_class& p, const mpz_class& q,
                     const mpz_class& r, const mpz_class& s) {
    // (row r1, row r2) <- (p*row1 + q*row2, r*row1 + s*row2); p*s - q*r = ±1.
    for (int j = 0; j < dim; ++j) {
      mpz_class x = p * a[r1][j] + q * a[r2][j];
      mpz_class y = r * a[r1][j] + s * a[r2][j];
      a[r1][j] = x;
      a[r2][j] = y;
    }
    if (transform) {
      for (std::size_t j = 0; j < m; ++j) {
        mpz_class x = p * u[r1][j] + q * u[r2][j];
        mpz_class y = r * u[r1][j] + s * u[r2][j];
        u[r1][j] = x;
        u[r2][j] = y;
      }
    }
  };

  std::size_t rank = 0;
  for (int col = 0; col < dim && rank < m; ++col) {
    // Find a nonzero entry at or below the current pivot row.
    std::size_t piv = m;
    for (std::size_t i = rank; i < m; ++i) {
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == m) continue;
    if (piv != rank) {
      std::swap(a[piv], a[rank]);
      if (transform) std::swap(u[piv], u[rank]);
    }
    // Clear entries below the pivot with extended-gcd row transforms.
    for (std::size_t i = rank + 1; i < m; ++i) {
      if (a[i][col] == 0) continue;
      mpz_class g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a[rank][col].get_mpz_t(),
                 a[i][col].get_mpz_t());
      mpz_class r = -a[i][col] / g;
      mpz_class s = a[rank][col] / g;
      row_op2(rank, i, p, q, r, s);
    }
    if (a[rank][col] < 0) {
      for (int j = 0; j < dim; ++j) a[rank][j] = -a[rank][j];
      if (transform)
        for (std::size_t j = 0; j < m; ++j) u[rank][j] = -u[rank][j];
    }
    // Reduce entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < rank; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[rank][col].get_mpz_t());
      if (q == 0) continue;
      for (int j = 0; j < dim; ++j) a[i][j] -= q * a[rank][j];
      if (transform)
        for (std::size_t j = 0; j < m; ++j) u[i][j] -= q * u[rank][j];
    }
    ++rank;
  }

  if (transform) *transform = std::move(u);
  a.resize(rank);
  return a;
}

ZMat to_zmat(const std::vector<WeightVector>& rows) {
  ZMat out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    ZRow zr;
    zr.reserve(r.size());
    for (Int v : r) zr.emplace_back(static_cast<long>(v));
    out.push_back(std::move(zr));
  }
  return out;
}

bool is_zero_row(const ZRow& r) {
  for (const auto& v : r)
    if (v != 0) return false;
  return true;
}

// Scales a nonzero rational vector to the primitive integer vector on its ray
// (positive multiple, entries coprime).
std::vector<Rat> normalize_ray(std::vector<Rat> v) {
  mpz_class lcm_den(1);
  for (auto& x : v) {
    x.canonicalize();
    mpz_class den = x.get_den();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
  }
  mpz_class gcd_num(0);
  std::vector<mpz_class> ints;
  ints.reserve(v.size());
  for (const auto& x : v) {
    mpz_class n = x.get_num() * (lcm_den / x.get_den());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
    ints.push_back(std::move(n));
  }
  if (gcd_num == 0) return v;  // zero vector, unchanged
  std::vector<Rat> out;
  out.reserve(v.size());
  for (const auto& n : ints) out.emplace_back(Rat(n / gcd_num));
  return out;
}

}  // namespace

WeightSemigroup WeightSemigroup::from_generators(int dim, std::vector<WeightVector> gens) {
  if (dim <= 0) throw std::invalid_argument("semigroup dimension must be positive");
  WeightSemigroup s;
  s.dim = dim;
  for (auto& g : gens) {
    if (static_cast<int>(g.size()) != dim)
      throw std::invalid_argument("generator length does not match dimension");
    bool zero = std::all_of(g.begin(), g.end(), [](Int v) { return v == 0; });
    if (zero)
      s.zero_generator_present = true;
    else
      s.generators.push_back(std::move(g));
  }
  std::sort(s.generators.begin(), s.generators.end());
  s.generators.erase(std::unique(s.generators.begin(), s.generators.end()),
                     s.generators.end());
  return s;
}

bool LatticeBasis::contains(const std::vector<mpz_class>& v) const {
  if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("dimension mismatch");
  std::vector<mpz_class> w = v;
  // Rows are in echelon form: eliminate with exact divisions at the pivots.
  for (const auto& row : rows) {
    int p = 0;
    while (p < dim && row[p] == 0) ++p;
    if (p == dim) continue;
    if (w[p] == 0) continue;
    if (w[p] % row[p] != 0) return false;
    mpz_class q = w[p] / row[p];
    for (int j = p; j < dim; ++j) w[j] -= q * row[j];
  }
  return std::all_of(w.begin(), w.end(), [](const mpz_class& x) { return x == 0; });
}

bool LatticeBasis::contains(const WeightVector& v) const {
  ZRow z;
  z.reserve(v.size());
  for (Int x : v) z.emplace_back(static_cast<long>(x));
  return contains(z);
}

LatticeBasis lattice_from_rows(int dim, const ZMat& rows) {
  LatticeBasis b;
  b.dim = dim;
  b.rows = hermite_normal_form(dim, rows, nullptr);
  return b;
}

LatticeBasis lattice_from_weights(int dim, const std::vector<WeightVector>& rows) {
  return lattice_from_rows(dim, to_zmat(rows));
}

LatticeBasis integer_kernel(const std::vector<WeightVector>& weights) {
  const int m = static_cast<int>(weights.size());
  if (m == 0) return LatticeBasis{0, {}};
  const int n = static_cast<int>(weights[0].size());
  for (const auto& w : weights)
    if (static_cast<int>(w.size()) != n)
      throw std::invalid_argument("weights of unequal length");

  // U * W = H with U unimodular: the U-rows matching zero rows of H are a
  // basis of the full left kernel {c : sum_i c_i w_i = 0}.
  ZMat u;
  ZMat h = hermite_normal_form(n, to_zmat(weights), &u);
  ZMat kernel_rows(u.begin() + h.size(), u.end());
  return lattice_from_rows(m, kernel_rows);
}

PointednessCertificate cone_is_pointed(const WeightSemigroup& s) {
  PointednessCertificate out;
  if (s.generators.empty()) {
    out.pointed = true;
    out.functional = std::vector<Rat>(s.dim, Rat(0));
    return out;
  }
  RationalLP lp(s.dim);
  for (const auto& g : s.generators) {
    std::vector<Rat> row;
    row.reserve(s.dim);
    for (Int v : g) row.emplace_back(static_cast<long>(v));
    lp.add_ge(std::move(row), Rat(1));
  }
  LpFeasibility fs = solve_feasibility(lp);
  if (fs.feasible()) {
    // Gordan: a functional with <g, xi> >= 1 for all generators certifies
    // that no nonzero nonnegative combination of them can vanish.
    out.pointed = true;
    out.functional = std::move(*fs.point);
  } else {
    // The Farkas multipliers of {G xi >= 1} are exactly a nonzero c >= 0
    // with sum_i c_i g_i = 0 (the rhs condition forces sum c_i > 0).
    out.pointed = false;
    out.vanishing_combination = normalize_ray(std::move(fs.certificate->y_ge));
  }
  return out;
}

// A finitely generated semigroup S in Z^n (zero generators stripped) has a
// nontrivial unit iff some nonzero nonnegative rational combination of its
// generators vanishes, i.e. iff the rational cone is not pointed.
// Proof. If s != 0 has s, -s in S, write both as nonnegative integer
// combinations and add: a nonzero nonnegative combination vanishes.
// Conversely, clear denominators in a vanishing combination to get integers
// m_i >= 0, not all zero, with sum m_i g_i = 0; any g_j with m_j > 0 is a
// unit, since -g_j = (m_j - 1) g_j + sum_{i != j} m_i g_i lies in S.
bool is_antisymmetric_semigroup(const WeightSemigroup& s) {
  return cone_is_pointed(s).pointed;
}

LatticeBasis lineality_lattice(const WeightSemigroup& s) {
  const std::size_t k = s.generators.size();
  std::vector<WeightVector> units;
  for (std::size_t j = 0; j < k; ++j) {
    // Is -g_j a nonnegative combination of all generators?
    RationalLP lp(k);
    for (int d = 0; d < s.dim; ++d) {
      std::vector<Rat> row;
      row.reserve(k);
      for (std::size_t i = 0; i < k; ++i)
        row.emplace_back(static_cast<long>(s.generators[i][d]));
      lp.add_eq(std::move(row), Rat(static_cast<long>(-s.generators[j][d])));
    }
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Rat> row(k, Rat(0));
      row[i] = 1;
      lp.add_ge(std::move(row), Rat(0));
    }
    if (solve_feasibility(lp).feasible()) units.push_back(s.generators[j]);
  }
  return lattice_from_weights(s.dim, units);
}

std::optional<std::vector<Rat>> strict_positive_functional(const WeightSemigroup& s) {
  if (s.zero_generator_present) return std::nullopt;  // <0, xi> = 0 < 1 always
  PointednessCertificate c = cone_is_pointed(s);
  if (!c.pointed) return std::nullopt;
  return c.functional;
}

std::vector<Rat> relint_dual_point(const WeightSemigroup& s) {
  LatticeBasis lin = lineality_lattice(s);
  RationalLP lp(s.dim);
  for (const auto& g : s.generators) {
    std::vector<Rat> row;
    row.reserve(s.dim);
    for (Int v : g) row.emplace_back(static_cast<long>(v));
    if (lin.contains(g))
      lp.add_eq(std::move(row), Rat(0));
    else
      lp.add_ge(std::move(row), Rat(1));
  }
  LpFeasibility fs = solve_feasibility(lp);
  if (!fs.feasible())
    throw std::logic_error("relative-interior dual point must exist");
  return std::move(*fs.point);
}

WeightVector EnumeratedSemigroup::at(std::size_t i) const {
  return WeightVector(flat.begin() + static_cast<std::ptrdiff_t>(i * dim),
                      flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim));
}

bool EnumeratedSemigroup::contains(const WeightVector& v) const {
  if (static_cast<int>(v.size()) != dim) return false;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const Int* p = flat.data() + mid * dim;
    int cmp = 0;
    for (int j = 0; j < dim; ++j) {
      if (p[j] != v[j]) {
        cmp = p[j] < v[j] ? -1 : 1;
        break;
      }
    }
    if (cmp == 0) return true;
    if (cmp < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return false;
}

EnumeratedSemigroup semigroup_enumerate(const WeightSemigroup& s, Int norm_bound,
                                        std::size_t max_elements) {
  if (norm_bound < 0) throw std::invalid_argument("norm bound must be nonnegative");
  const int n = s.dim;
  for (const auto& g : s.generators)
    for (Int v : g)
      if (v > norm_bound || -v > norm_bound)
        throw std::invalid_argument("norm bound below a generator sup-norm");
  if (norm_bound > (1LL << 40))
    throw ResourceLimitError("enumeration bound too large to index");

  // Mixed-radix index over the box [-B, B]^n; falls back to a hash set when
  // the box itself is too large to address densely.
  const unsigned long long side = 2ULL * static_cast<unsigned long long>(norm_bound) + 1;
  unsigned long long box = 1;
  bool box_indexable = true;
  for (int j = 0; j < n; ++j) {
    if (box > (1ULL << 62) / side) {
      box_indexable = false;
      break;
    }
    box *= side;
  }
  const bool dense = box_indexable && box <= (1ULL << 28);

  auto encode = [&](const WeightVector& v) {
    unsigned long long idx = 0;
    for (int j = 0; j < n; ++j)
      idx = idx * side + static_cast<unsigned long long>(v[j] + norm_bound);
    return idx;
  };

  std::vector<bool> dense_seen;
  std::unordered_set<unsigned long long> sparse_seen;
  std::unordered_set<std::string> generic_seen;  // only when the box overflows
  auto mark = [&](const WeightVector& v) -> bool {  // returns true when new
    if (dense) {
      unsigned long long idx = encode(v);
      if (dense_seen[idx]) return false;
      dense_seen[idx] = true;
      return true;
    }
    if (box_indexable) return sparse_seen.insert(encode(v)).second;
    std::string key(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(Int));
    return generic_seen.insert(std::move(key)).second;
  };

  if (dense) dense_seen.assign(box, false);

  std::deque<WeightVector> queue;
  std::vector<WeightVector> found;
  WeightVector zero(n, 0);
  mark(zero);
  found.push_back(zero);
  queue.push_back(std::move(zero));

  while (!queue.empty()) {
    WeightVector e = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : s.generators) {
      WeightVector f(n);
      bool in_box = true;
      for (int j = 0; j < n; ++j) {
        f[j] = e[j] + g[j];
        if (f[j] > norm_bound || -f[j] > norm_bound) {
          in_box = false;
          break;
        }
      }
      if (!in_box) continue;
      if (!mark(f)) continue;
      if (found.size() >= max_elements)
        throw ResourceLimitError("semigroup enumeration exceeded the element cap");
      found.push_back(f);
      queue.push_back(std::move(f));
    }
  }

  std::sort(found.begin(), found.end());
  EnumeratedSemigroup out;
  out.dim = n;
  out.flat.reserve(found.size() * static_cast<std::size_t>(n));
  for (const auto& v : found) out.flat.insert(out.flat.end(), v.begin(), v.end());
  return out;
}

std::vector<std::vector<Rat>> rational_nullspace(int dim,
                                                 const std::vector<WeightVector>& rows) {
  std::vector<std::vector<Rat>> a;
  a.reserve(rows.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != dim)
      throw std::invalid_argument("row length does not match dimension");
    std::vector<Rat> row;
    row.reserve(dim);
    for (Int v : r) row.emplace_back(static_cast<long>(v));
    a.push_back(std::move(row));
  }

  // Gauss-Jordan to reduced row-echelon form.
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < dim && rank < a.size(); ++col) {
    std::size_t piv = a.size();
    for (std::size_t i = rank; i < a.size(); ++i) {
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const Rat p = a[rank][col];
    for (int j = 0; j < dim; ++j) a[rank][j] /= p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][col] == 0) continue;
      const Rat f = a[i][col];
      for (int j = 0; j < dim; ++j) a[i][j] -= f * a[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(dim, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(dim, Rat(0));
    v[free] = 1;
    for (std::size_t i = 0; i < rank; ++i) v[pivot_col[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rat pairing(const WeightVector& w, const std::vector<Rat>& xi) {
  if (w.size() != xi.size()) throw std::invalid_argument("pairing dimension mismatch");
  Rat acc(0);
  for (std::size_t j = 0; j < w.size(); ++j) acc += Rat(static_cast<long>(w[j])) * xi[j];
  return acc;
}

}  // namespace orbitkit
