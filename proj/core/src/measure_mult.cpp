#include "orbitkit/measure_mult.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "orbitkit/numeric.hpp"

namespace orbitkit {

namespace {

std::complex<double> complex_int_pow(std::complex<double> b, Int e) {
  std::complex<double> acc = 1.0;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

int exponent_degree(const std::vector<Int>& c) {
  Int d = 0;
  for (Int e : c) d += e;
  return static_cast<int>(d);
}

bool torus_closed_form(const CompactMatrixGroup& g, bool force_monte_carlo) {
  return !force_monte_carlo && g.kind == GroupKind::torus && g.action.has_value();
}

/// Monomial average over a torus orbit: the phase of z^c under the angle
/// theta is exp(i <sum_j c_j w_j, theta>), so the average is v^c when that
/// total weight vanishes and 0 otherwise.
std::complex<double> torus_monomial_average(const TorusAction& a, const Eigen::VectorXcd& v,
                                            const std::vector<Int>& c) {
  for (int d = 0; d < a.n; ++d) {
    Int s = 0;
    for (int j = 0; j < a.m(); ++j) s += c[static_cast<std::size_t>(j)] * a.weights[j][d];
    if (s != 0) return {0.0, 0.0};
  }
  std::complex<double> prod = 1.0;
  for (int j = 0; j < a.m(); ++j) prod *= complex_int_pow(v(j), c[static_cast<std::size_t>(j)]);
  return prod;
}

void check_inputs(const CompactMatrixGroup& g, const Eigen::VectorXcd& v) {
  if (v.size() != g.ambient_dim())
    throw std::invalid_argument("vector dimension does not match the group action");
}

struct MomentSet {
  std::vector<MonomialStats> averages;  // aligned with the monomial table
  Eigen::VectorXcd fixed_point;
  std::vector<double> fixed_point_se;
  bool exact = false;
};

/// Estimates every monomial in the table and the coordinate averages from
/// one shared sample stream, or evaluates the torus closed form.
MomentSet compute_moments(const CompactMatrixGroup& g, const Eigen::VectorXcd& v,
                          const MonomialTable& table, std::uint64_t samples,
                          SamplerState st, bool force_monte_carlo) {
  const int m = g.ambient_dim();
  MomentSet out;
  out.averages.resize(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) out.averages[i].exponent = table.exponents[i];
  out.fixed_point = Eigen::VectorXcd::Zero(m);
  out.fixed_point_se.assign(static_cast<std::size_t>(m), 0.0);

  if (torus_closed_form(g, force_monte_carlo)) {
    const TorusAction& a = *g.action;
    for (std::size_t i = 0; i < table.size(); ++i)
      out.averages[i].estimate = torus_monomial_average(a, v, table.exponents[i]);
    for (int j = 0; j < m; ++j) {
      bool zero_weight = true;
      for (int d = 0; d < a.n; ++d) zero_weight = zero_weight && a.weights[j][d] == 0;
      out.fixed_point(j) = zero_weight ? v(j) : std::complex<double>(0.0, 0.0);
    }
    out.exact = true;
    return out;
  }

  if (samples == 0) throw std::invalid_argument("sample count must be positive");

  struct Block {
    std::vector<KahanComplex> msum;
    std::vector<Kahan> msq;
    std::vector<KahanComplex> csum;
    std::vector<Kahan> csq;
  };
  const std::size_t nmono = table.size();
  auto partials = run_blocks<Block>(st, samples, [&](RandomStream& rs, std::uint64_t count) {
    Block b;
    b.msum.resize(nmono);
    b.msq.resize(nmono);
    b.csum.resize(static_cast<std::size_t>(m));
    b.csq.resize(static_cast<std::size_t>(m));
    std::vector<std::complex<double>> vals;
    for (std::uint64_t s = 0; s < count; ++s) {
      const Eigen::MatrixXcd elem = haar_sample(g, rs);
      const Eigen::VectorXcd z = act(g, elem, v);
      table.eval_all(z, vals);
      for (std::size_t i = 0; i < nmono; ++i) {
        b.msum[i].add(vals[i]);
        b.msq[i].add(std::norm(vals[i]));
      }
      for (int j = 0; j < m; ++j) {
        b.csum[static_cast<std::size_t>(j)].add(z(j));
        b.csq[static_cast<std::size_t>(j)].add(std::norm(z(j)));
      }
    }
    return b;
  });

  std::vector<KahanComplex> msum(nmono);
  std::vector<Kahan> msq(nmono);
  std::vector<KahanComplex> csum(static_cast<std::size_t>(m));
  std::vector<Kahan> csq(static_cast<std::size_t>(m));
  for (const Block& b : partials) {
    for (std::size_t i = 0; i < nmono; ++i) {
      msum[i].merge(b.msum[i]);
      msq[i].merge(b.msq[i]);
    }
    for (int j = 0; j < m; ++j) {
      csum[static_cast<std::size_t>(j)].merge(b.csum[static_cast<std::size_t>(j)]);
      csq[static_cast<std::size_t>(j)].merge(b.csq[static_cast<std::size_t>(j)]);
    }
  }

  const double n = static_cast<double>(samples);
  auto standard_error = [&](const std::complex<double>& mean, double sumsq) {
    if (samples < 2) return 0.0;
    double var = sumsq / n - std::norm(mean);
    if (var < 0.0) var = 0.0;
    return std::sqrt(var * n / (n - 1.0) / n);
  };
  for (std::size_t i = 0; i < nmono; ++i) {
    const std::complex<double> mean = msum[i].value() / n;
    out.averages[i].estimate = mean;
    out.averages[i].std_error = standard_error(mean, msq[i].value());
  }
  for (int j = 0; j < m; ++j) {
    const std::complex<double> mean = csum[static_cast<std::size_t>(j)].value() / n;
    out.fixed_point(j) = mean;
    out.fixed_point_se[static_cast<std::size_t>(j)] =
        standard_error(mean, csq[static_cast<std::size_t>(j)].value());
  }
  return out;
}

}  // namespace

Average orbit_average(const CompactMatrixGroup& g, const Eigen::VectorXcd& v,
                      const Polynomial& p, std::uint64_t samples, SamplerState st,
                      bool force_monte_carlo) {
  check_inputs(g, v);
  if (p.vars != g.ambient_dim())
    throw std::invalid_argument("polynomial variable count does not match the action");

  if (torus_closed_form(g, force_monte_carlo)) {
    const TorusAction& a = *g.action;
    std::complex<double> acc = 0.0;
    for (const auto& [c, coeff] : p.terms) acc += coeff * torus_monomial_average(a, v, c);
    return Average{acc, 0.0, true};
  }

  if (samples == 0) throw std::invalid_argument("sample count must be positive");
  struct Block {
    KahanComplex sum;
    Kahan sumsq;
  };
  auto partials = run_blocks<Block>(st, samples, [&](RandomStream& rs, std::uint64_t count) {
    Block b;
    for (std::uint64_t s = 0; s < count; ++s) {
      const Eigen::MatrixXcd elem = haar_sample(g, rs);
      const std::complex<double> val = p.eval(act(g, elem, v));
      b.sum.add(val);
      b.sumsq.add(std::norm(val));
    }
    return b;
  });
  KahanComplex sum;
  Kahan sumsq;
  for (const Block& b : partials) {
    sum.merge(b.sum);
    sumsq.merge(b.sumsq);
  }
  const double n = static_cast<double>(samples);
  Average out;
  out.estimate = sum.value() / n;
  if (samples >= 2) {
    double var = sumsq.value() / n - std::norm(out.estimate);
    if (var < 0.0) var = 0.0;
    out.std_error = std::sqrt(var * n / (n - 1.0) / n);
  }
  return out;
}

NilconeNumericReport nilcone_test_numeric(const CompactMatrixGroup& g,
                                          const Eigen::VectorXcd& v, int degree_bound,
                                          std::uint64_t samples, double tolerance,
                                          SamplerState st, std::size_t monomial_cap,
                                          bool force_monte_carlo) {
  check_inputs(g, v);
  if (degree_bound < 1) throw std::invalid_argument("degree bound must be at least 1");
  const MonomialTable table = MonomialTable::build(g.ambient_dim(), degree_bound, monomial_cap);
  MomentSet moments = compute_moments(g, v, table, samples, st, force_monte_carlo);

  NilconeNumericReport rep;
  rep.samples = samples;
  rep.degree_bound = degree_bound;
  rep.tolerance = tolerance;
  rep.exact = moments.exact;
  rep.averages = std::move(moments.averages);
  rep.consistent = true;
  for (const MonomialStats& s : rep.averages) {
    const double allowance = std::max(tolerance, 4.0 * s.std_error);
    const double mag = std::abs(s.estimate);
    double ratio;
    if (allowance > 0.0)
      ratio = mag / allowance;
    else
      ratio = mag == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    if (ratio > 1.0) rep.consistent = false;
    if (ratio > rep.worst_ratio || rep.worst_exponent.empty()) {
      rep.worst_ratio = ratio;
      rep.worst_exponent = s.exponent;
    }
  }
  return rep;
}

DefectReport multiplicativity_defect(const CompactMatrixGroup& g, const Eigen::VectorXcd& v,
                                     int degree_bound, std::uint64_t samples, SamplerState st,
                                     std::size_t monomial_cap, bool force_monte_carlo) {
  check_inputs(g, v);
  if (degree_bound < 1) throw std::invalid_argument("degree bound must be at least 1");
  const MonomialTable table =
      MonomialTable::build(g.ambient_dim(), 2 * degree_bound, monomial_cap);
  MomentSet moments = compute_moments(g, v, table, samples, st, force_monte_carlo);

  DefectReport rep;
  rep.samples = samples;
  rep.degree_bound = degree_bound;
  rep.exact = moments.exact;
  rep.averages = std::move(moments.averages);
  rep.fixed_point = std::move(moments.fixed_point);
  rep.fixed_point_se = std::move(moments.fixed_point_se);

  std::vector<std::size_t> low;  // monomials of degree <= degree_bound
  for (std::size_t i = 0; i < table.size(); ++i)
    if (exponent_degree(table.exponents[i]) <= degree_bound) low.push_back(i);

  const int m = g.ambient_dim();
  std::vector<Int> sum_exp(static_cast<std::size_t>(m));
  for (std::size_t ia = 0; ia < low.size(); ++ia) {
    for (std::size_t ib = ia; ib < low.size(); ++ib) {
      const std::vector<Int>& a = table.exponents[low[ia]];
      const std::vector<Int>& b = table.exponents[low[ib]];
      for (int j = 0; j < m; ++j)
        sum_exp[static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(j)] + b[static_cast<std::size_t>(j)];
      const int iab = table.index_of(sum_exp);
      if (iab < 0) throw std::logic_error("product exponent missing from the table");
      const MonomialStats& sa = rep.averages[low[ia]];
      const MonomialStats& sb = rep.averages[low[ib]];
      const MonomialStats& sab = rep.averages[static_cast<std::size_t>(iab)];
      const double d = std::abs(sab.estimate - sa.estimate * sb.estimate);
      if (d > rep.defect || rep.pair_a.empty()) {
        rep.defect = d;
        rep.pair_a = a;
        rep.pair_b = b;
        rep.defect_std_error = sab.std_error + std::abs(sa.estimate) * sb.std_error +
                               std::abs(sb.estimate) * sa.std_error;
      }
    }
  }
  return rep;
}

FixedPointReport fixed_point_consistency(const CompactMatrixGroup& g,
                                         const Eigen::VectorXcd& v, int degree_bound,
                                         std::uint64_t samples, SamplerState st,
                                         std::size_t monomial_cap, bool force_monte_carlo) {
  check_inputs(g, v);
  if (degree_bound < 1) throw std::invalid_argument("degree bound must be at least 1");
  const MonomialTable table = MonomialTable::build(g.ambient_dim(), degree_bound, monomial_cap);
  MomentSet moments = compute_moments(g, v, table, samples, st, force_monte_carlo);

  FixedPointReport rep;
  rep.samples = samples;
  rep.exact = moments.exact;
  rep.fixed_point = std::move(moments.fixed_point);

  std::vector<std::complex<double>> at_fixed;
  table.eval_all(rep.fixed_point, at_fixed);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double r = std::abs(moments.averages[i].estimate - at_fixed[i]);
    if (r > rep.max_residual || rep.worst_exponent.empty()) {
      rep.max_residual = r;
      rep.worst_exponent = table.exponents[i];
    }
  }
  return rep;
}

}  // namespace orbitkit
