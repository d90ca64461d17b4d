#include "orbitkit/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orbitkit/kempf_ness.hpp"
#include "orbitkit/measure_mult.hpp"

namespace orbitkit {

namespace {

GaussRat one() { return {Rat(1), Rat(0)}; }
GaussRat zero() { return {Rat(0), Rat(0)}; }

constexpr double kConsistentMax = kDefectConsistentMax;
constexpr double kRefutedMin = kDefectRefutedMin;

bool same_exact_point(const OrbitPoint& p, const std::vector<GaussRat>& expected) {
  if (!p.is_exact() || p.exact->size() != expected.size()) return false;
  for (std::size_t i = 0; i < expected.size(); ++i)
    if ((*p.exact)[i] != expected[i]) return false;
  return true;
}

const MonomialStats* find_average(const std::vector<MonomialStats>& averages,
                                  const std::vector<Int>& c) {
  for (const MonomialStats& s : averages)
    if (s.exponent == c) return &s;
  return nullptr;
}

}  // namespace

Eigen::VectorXcd to_vector(const std::vector<GaussRat>& coords) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = coords[i].to_complex();
  return out;
}

std::vector<TorusFixture> torus_fixture_gallery() {
  std::vector<TorusFixture> out;

  out.push_back({"line-strict", TorusAction::create(1, {{1}, {2}}), {one(), one()}, true, true,
                 {zero(), zero()}, {0, 1}});
  out.push_back({"line-opposite", TorusAction::create(1, {{1}, {-1}}), {one(), one()}, false,
                 false, {one(), one()}, {}});
  out.push_back({"plane-split", TorusAction::create(2, {{1, 0}, {-1, 0}, {0, 1}}),
                 {one(), one(), one()}, false, false, {one(), one(), zero()}, {2}});
  out.push_back({"plane-skew-pointed", TorusAction::create(2, {{2, -1}, {-1, 2}}), {one(), one()},
                 true, true, {zero(), zero()}, {0, 1}});
  out.push_back({"plane-mixed-lineality", TorusAction::create(2, {{1, 1}, {-1, -1}, {1, 0}}),
                 {one(), one(), one()}, false, false, {one(), one(), zero()}, {2}});
  return out;
}

CompactMatrixGroup sphere_fixture_group() { return CompactMatrixGroup::unitary_group(2); }

Eigen::VectorXcd sphere_fixture_vector() {
  Eigen::VectorXcd v(2);
  v << std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 0.0);
  return v;
}

CompactMatrixGroup su2_adjoint_fixture_group() {
  return CompactMatrixGroup::special_unitary_group(2, RepKind::adjoint);
}

Eigen::VectorXcd su2_adjoint_fixture_vector() {
  Eigen::VectorXcd v(4);
  v << std::complex<double>(0.0, 1.0), std::complex<double>(1.0, 0.0),
      std::complex<double>(0.0, 0.0), std::complex<double>(0.0, -1.0);
  return v;
}

Polynomial su2_trace_form() {
  Polynomial p(4);
  p.add_term({2, 0, 0, 0}, 1.0);
  p.add_term({0, 1, 1, 0}, 2.0);
  p.add_term({0, 0, 0, 2}, 1.0);
  return p;
}

std::vector<Eigen::MatrixXcd> so3_basis() {
  auto e = [](int r, int c) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(r, c) = 1.0;
    m(c, r) = -1.0;
    return m;
  };
  return {e(2, 1), e(0, 2), e(1, 0)};
}

std::vector<Eigen::MatrixXcd> so2_in_so3_basis() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(1, 0) = 1.0;
  m(0, 1) = -1.0;
  return {m};
}

std::vector<Eigen::MatrixXcd> su2_basis() {
  Eigen::MatrixXcd x1(2, 2), x2(2, 2), x3(2, 2);
  x1 << std::complex<double>(0, 1), 0.0, 0.0, std::complex<double>(0, -1);
  x2 << 0.0, 1.0, -1.0, 0.0;
  x3 << 0.0, std::complex<double>(0, 1), std::complex<double>(0, 1), 0.0;
  return {x1, x2, x3};
}

std::vector<Eigen::MatrixXcd> torus_algebra_basis(int n) {
  std::vector<Eigen::MatrixXcd> out;
  for (int d = 0; d < n; ++d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    m(d, d) = std::complex<double>(0.0, 1.0);
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

double clamp1(double x) { return std::min(1.0, std::max(-1.0, x)); }

}  // namespace

std::vector<NamedCharacter> so3_harmonic_characters(int max_ell) {
  std::vector<NamedCharacter> out;
  for (int ell = 0; ell <= max_ell; ++ell) {
    out.push_back({"ell=" + std::to_string(ell), [ell](const Eigen::MatrixXcd& g) {
                     // Rotation angle from the trace: tr = 1 + 2 cos(theta).
                     const double theta = std::acos(clamp1((g.trace().real() - 1.0) / 2.0));
                     double chi = 1.0;
                     for (int k = 1; k <= ell; ++k) chi += 2.0 * std::cos(k * theta);
                     return std::complex<double>(chi, 0.0);
                   }});
  }
  return out;
}

std::vector<NamedCharacter> su2_spin_characters(const std::vector<int>& spins) {
  std::vector<NamedCharacter> out;
  for (int j : spins) {
    out.push_back({"spin=" + std::to_string(j), [j](const Eigen::MatrixXcd& g) {
                     // Eigenphases of g are +-phi with tr = 2 cos(phi); the
                     // integer-spin character is sum over weights e^{2 i m phi}.
                     const double phi = std::acos(clamp1(g.trace().real() / 2.0));
                     double chi = 1.0;
                     for (int m = 1; m <= j; ++m) chi += 2.0 * std::cos(2.0 * m * phi);
                     return std::complex<double>(chi, 0.0);
                   }});
  }
  return out;
}

ElementSampler so2_in_so3_sampler() {
  return [](RandomStream& rs) {
    const double theta = rs.uniform(0.0, 2.0 * M_PI);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
    m(0, 0) = std::cos(theta);
    m(0, 1) = -std::sin(theta);
    m(1, 0) = std::sin(theta);
    m(1, 1) = std::cos(theta);
    return m;
  };
}

ElementSampler su2_center_sampler() {
  return [](RandomStream& rs) {
    const double sign = rs.index(2) == 0 ? 1.0 : -1.0;
    return Eigen::MatrixXcd(sign * Eigen::MatrixXcd::Identity(2, 2));
  };
}

ElementSampler group_sampler(CompactMatrixGroup g) {
  return [g](RandomStream& rs) { return haar_sample(g, rs); };
}

std::vector<FixtureOutcome> run_fixture_gallery(std::uint64_t samples, SamplerState st) {
  std::vector<FixtureOutcome> out;
  constexpr std::uint64_t kStride = 1ULL << 40;
  std::uint64_t slot = 0;
  auto next_state = [&]() {
    return SamplerState{st.seed, st.counter + (slot++) * kStride};
  };

  for (const TorusFixture& f : torus_fixture_gallery()) {
    FixtureOutcome o;
    o.name = f.name;
    std::ostringstream detail;
    bool ok = true;

    const FibrationReport rep = analyze(f.action, OrbitPoint::from_exact(f.v));
    if (rep.antisymmetric != f.expect_antisymmetric) {
      ok = false;
      detail << "antisymmetric=" << rep.antisymmetric << " expected "
             << f.expect_antisymmetric << "; ";
    }
    if (rep.nilpotent != f.expect_nilpotent) {
      ok = false;
      detail << "nilpotent=" << rep.nilpotent << " expected " << f.expect_nilpotent << "; ";
    }
    if (!same_exact_point(rep.v_tilde, f.expect_v_tilde)) {
      ok = false;
      detail << "v_tilde mismatch; ";
    }
    if (rep.fiber_coords != f.expect_fiber_coords) {
      ok = false;
      detail << "fiber coordinates mismatch; ";
    }

    const DefectReport d = multiplicativity_defect(CompactMatrixGroup::torus_group(f.action),
                                                   to_vector(f.v), 2, samples, next_state());
    const bool cross_ok =
        f.expect_antisymmetric ? d.defect <= kConsistentMax : d.defect >= kRefutedMin;
    if (!cross_ok) {
      ok = false;
      detail << "defect " << d.defect << " contradicts exact verdict; ";
    }
    detail << "defect=" << d.defect;
    o.match = ok;
    o.detail = detail.str();
    out.push_back(std::move(o));
  }

  {
    FixtureOutcome o;
    o.name = "sphere-u2";
    const DefectReport d = multiplicativity_defect(sphere_fixture_group(),
                                                   sphere_fixture_vector(), 3, samples,
                                                   next_state());
    const double fp_norm = d.fixed_point.norm();
    o.match = d.defect <= kConsistentMax && fp_norm <= kConsistentMax;
    std::ostringstream detail;
    detail << "defect=" << d.defect << " fixed_point_norm=" << fp_norm;
    o.detail = detail.str();
    out.push_back(std::move(o));
  }

  {
    FixtureOutcome o;
    o.name = "su2-adjoint-counterexample";
    const CompactMatrixGroup g = su2_adjoint_fixture_group();
    const Eigen::VectorXcd v = su2_adjoint_fixture_vector();
    std::ostringstream detail;
    bool ok = true;

    const NilconeNumericReport nil = nilcone_test_numeric(g, v, 2, samples, 5e-3, next_state());
    const MonomialStats* sq1 = find_average(nil.averages, {2, 0, 0, 0});
    const MonomialStats* scross = find_average(nil.averages, {0, 1, 1, 0});
    const MonomialStats* sq4 = find_average(nil.averages, {0, 0, 0, 2});
    if (!sq1 || !scross || !sq4) {
      ok = false;
      detail << "missing quadratic averages; ";
    } else {
      const std::complex<double> trace_avg =
          sq1->estimate + 2.0 * scross->estimate + sq4->estimate;
      detail << "trace_form_average=" << trace_avg.real();
      if (std::abs(trace_avg - std::complex<double>(-2.0, 0.0)) > 0.02) {
        ok = false;
        detail << " (expected -2); ";
      }
    }
    if (nil.consistent) {
      ok = false;
      detail << "; nilcone test unexpectedly consistent";
    }

    const DefectReport d = multiplicativity_defect(g, v, 2, samples, next_state());
    detail << " defect=" << d.defect;
    if (d.defect < kRefutedMin) {
      ok = false;
      detail << " (expected >= " << kRefutedMin << ")";
    }

    const FlowReport flow = flow_minimize(g, v, {{"trace_form", su2_trace_form()}});
    const double residual = flow.invariant_residuals.at("trace_form");
    detail << " flow_norm_sq=" << flow.final_norm_sq << " invariant_residual=" << residual;
    if (!flow.stalled || flow.final_norm_sq < 2.0 - 1e-6 || residual > 1e-6) {
      ok = false;
      detail << " (expected stall at norm_sq >= 2 with conserved invariant)";
    }

    o.match = ok;
    o.detail = detail.str();
    out.push_back(std::move(o));
  }

  return out;
}

}  // namespace orbitkit
