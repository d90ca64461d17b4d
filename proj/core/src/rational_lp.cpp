#include "orbitkit/rational_lp.hpp"

#include <stdexcept>

namespace orbitkit {

void RationalLP::add_ge(std::vector<Rat> row, Rat rhs) {
  if (row.size() != num_vars) throw std::logic_error("constraint row size mismatch");
  A_ge.push_back(std::move(row));
  b_ge.push_back(std::move(rhs));
}

void RationalLP::add_eq(std::vector<Rat> row, Rat rhs) {
  if (row.size() != num_vars) throw std::logic_error("constraint row size mismatch");
  A_eq.push_back(std::move(row));
  b_eq.push_back(std::move(rhs));
}

namespace {

// Phase-1 standard form. Free variables are split x = u - w with u, w >= 0;
// each >=-row gets a surplus variable, every row gets an artificial variable.
// Rows are sign-normalized so all right-hand sides are nonnegative, and the
// sign flips are remembered to map the dual multipliers back.
struct Tableau {
  std::size_t rows = 0, cols = 0;           // cols excludes the rhs column
  std::vector<std::vector<Rat>> a;          // rows x (cols + 1), last col = rhs
  std::vector<std::size_t> basis;           // basic variable per row
};

}  // namespace

LpFeasibility solve_feasibility(const RationalLP& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m_ge = lp.A_ge.size();
  const std::size_t m_eq = lp.A_eq.size();
  const std::size_t m = m_ge + m_eq;

  // Column layout: u (n) | w (n) | surplus (m_ge) | artificial (m).
  const std::size_t col_u = 0, col_w = n, col_s = 2 * n, col_a = 2 * n + m_ge;
  Tableau t;
  t.rows = m;
  t.cols = col_a + m;
  t.a.assign(m, std::vector<Rat>(t.cols + 1, Rat(0)));
  t.basis.resize(m);

  std::vector<int> row_sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const bool is_ge = i < m_ge;
    const std::vector<Rat>& src = is_ge ? lp.A_ge[i] : lp.A_eq[i - m_ge];
    const Rat& rhs = is_ge ? lp.b_ge[i] : lp.b_eq[i - m_ge];
    const int sign = (rhs < 0) ? -1 : 1;
    row_sign[i] = sign;
    for (std::size_t j = 0; j < n; ++j) {
      Rat v = src[j] * sign;
      t.a[i][col_u + j] = v;
      t.a[i][col_w + j] = -v;
    }
    if (is_ge) t.a[i][col_s + i] = Rat(-sign);
    t.a[i][col_a + i] = 1;
    t.a[i][t.cols] = rhs * sign;
    t.basis[i] = col_a + i;
  }

  // Reduced costs for minimizing the sum of artificials: r_j = c_j - z_j with
  // c = 1 on artificials. Stored with the current objective value at the end.
  std::vector<Rat> r(t.cols + 1, Rat(0));
  for (std::size_t j = 0; j <= t.cols; ++j) {
    Rat z(0);
    for (std::size_t i = 0; i < t.rows; ++i) z += t.a[i][j];
    const Rat c = (j >= col_a && j < t.cols) ? Rat(1) : Rat(0);
    r[j] = c - z;
  }

  for (;;) {
    // Bland: entering column = smallest index with negative reduced cost.
    std::size_t enter = t.cols;
    for (std::size_t j = 0; j < t.cols; ++j) {
      if (r[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == t.cols) break;

    // Ratio test, ties broken by smallest basic variable index (Bland).
    std::size_t leave = t.rows;
    Rat best;
    for (std::size_t i = 0; i < t.rows; ++i) {
      if (t.a[i][enter] > 0) {
        Rat ratio = t.a[i][t.cols] / t.a[i][enter];
        if (leave == t.rows || ratio < best ||
            (ratio == best && t.basis[i] < t.basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave == t.rows)
      throw std::logic_error("phase-1 objective unbounded; cannot happen");

    // Pivot.
    const Rat piv = t.a[leave][enter];
    for (std::size_t j = 0; j <= t.cols; ++j) t.a[leave][j] /= piv;
    for (std::size_t i = 0; i < t.rows; ++i) {
      if (i == leave) continue;
      if (t.a[i][enter] == 0) continue;
      const Rat f = t.a[i][enter];
      for (std::size_t j = 0; j <= t.cols; ++j) t.a[i][j] -= f * t.a[leave][j];
    }
    if (r[enter] != 0) {
      const Rat f = r[enter];
      for (std::size_t j = 0; j <= t.cols; ++j) r[j] -= f * t.a[leave][j];
    }
    t.basis[leave] = enter;
  }

  // Optimal phase-1 value = sum of basic artificial values.
  Rat opt(0);
  for (std::size_t i = 0; i < t.rows; ++i)
    if (t.basis[i] >= col_a) opt += t.a[i][t.cols];

  LpFeasibility out;
  if (opt == 0) {
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = 0; i < t.rows; ++i) {
      const std::size_t b = t.basis[i];
      if (b < n)
        x[b] += t.a[i][t.cols];
      else if (b >= col_w && b < col_w + n)
        x[b - col_w] -= t.a[i][t.cols];
    }
    for (auto& v : x) v.canonicalize();
    if (!point_valid(lp, x)) throw std::logic_error("simplex produced invalid point");
    out.point = std::move(x);
    return out;
  }

  // Infeasible: dual multipliers y_i = z-value of artificial column i, i.e.
  // 1 - r on that column; undo the row sign normalization.
  FarkasCertificate cert;
  cert.y_ge.resize(m_ge);
  cert.y_eq.resize(m_eq);
  for (std::size_t i = 0; i < m; ++i) {
    Rat y = Rat(1) - r[col_a + i];
    y *= row_sign[i];
    y.canonicalize();
    if (i < m_ge)
      cert.y_ge[i] = y;
    else
      cert.y_eq[i - m_ge] = y;
  }
  if (!certificate_valid(lp, cert))
    throw std::logic_error("simplex produced invalid Farkas certificate");
  out.certificate = std::move(cert);
  return out;
}

bool point_valid(const RationalLP& lp, const std::vector<Rat>& x) {
  if (x.size() != lp.num_vars) return false;
  for (std::size_t i = 0; i < lp.A_ge.size(); ++i) {
    Rat lhs(0);
    for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += lp.A_ge[i][j] * x[j];
    if (lhs < lp.b_ge[i]) return false;
  }
  for (std::size_t i = 0; i < lp.A_eq.size(); ++i) {
    Rat lhs(0);
    for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += lp.A_eq[i][j] * x[j];
    if (lhs != lp.b_eq[i]) return false;
  }
  return true;
}

bool certificate_valid(const RationalLP& lp, const FarkasCertificate& cert) {
  if (cert.y_ge.size() != lp.A_ge.size() || cert.y_eq.size() != lp.A_eq.size())
    return false;
  for (const Rat& y : cert.y_ge)
    if (y < 0) return false;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    Rat col(0);
    for (std::size_t i = 0; i < lp.A_ge.size(); ++i) col += cert.y_ge[i] * lp.A_ge[i][j];
    for (std::size_t i = 0; i < lp.A_eq.size(); ++i) col += cert.y_eq[i] * lp.A_eq[i][j];
    if (col != 0) return false;
  }
  Rat rhs(0);
  for (std::size_t i = 0; i < lp.A_ge.size(); ++i) rhs += cert.y_ge[i] * lp.b_ge[i];
  for (std::size_t i = 0; i < lp.A_eq.size(); ++i) rhs += cert.y_eq[i] * lp.b_eq[i];
  return rhs > 0;
}

}  // namespace orbitkit
