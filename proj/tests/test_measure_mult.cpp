#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>

#include "orbitkit/fixtures.hpp"
#include "orbitkit/lattice_cone.hpp"
#include "orbitkit/measure_mult.hpp"

using namespace orbitkit;
using cd = std::complex<double>;

namespace {

CompactMatrixGroup torus(std::vector<std::vector<Int>> weights) {
  const int n = static_cast<int>(weights.front().size());
  return CompactMatrixGroup::torus_group(TorusAction::create(n, std::move(weights)));
}

Polynomial monomial(std::vector<Int> e) {
  const int vars = static_cast<int>(e.size());
  return Polynomial::monomial(vars, std::move(e));
}

Eigen::VectorXcd cvec(std::initializer_list<cd> entries) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const cd& z : entries) v(i++) = z;
  return v;
}

std::optional<cd> find_avg(const std::vector<MonomialStats>& stats,
                           const std::vector<Int>& e) {
  for (const auto& s : stats)
    if (s.exponent == e) return s.estimate;
  return std::nullopt;
}

}  // namespace

TEST_CASE("constants average to themselves with zero error") {
  const Polynomial one = Polynomial::constant(2, cd(1.0, 0.0));
  const auto t = torus({{1}, {-1}});
  const Eigen::VectorXcd v = cvec({cd(1, 0), cd(1, 0)});
  const Average a = orbit_average(t, v, one, 1000, SamplerState{1, 0});
  CHECK(a.estimate == cd(1.0, 0.0));
  CHECK(a.std_error == 0.0);
  CHECK(a.exact);

  const Average mc =
      orbit_average(sphere_fixture_group(), sphere_fixture_vector(), one, 1000,
                    SamplerState{1, 0});
  CHECK(std::abs(mc.estimate - cd(1.0, 0.0)) <= 1e-14);
  CHECK(mc.std_error <= 1e-14);
  CHECK(!mc.exact);
}

TEST_CASE("torus averages use the closed form: value at v when the weight cancels") {
  const auto t = torus({{1}, {-1}});
  const Eigen::VectorXcd v = cvec({cd(1, 0), cd(1, 0)});

  const Average on = orbit_average(t, v, monomial({1, 1}), 50, SamplerState{2, 0});
  CHECK(on.exact);
  CHECK(on.estimate == cd(1.0, 0.0));
  CHECK(on.std_error == 0.0);

  const Average off = orbit_average(t, v, monomial({1, 0}), 50, SamplerState{2, 0});
  CHECK(off.exact);
  CHECK(off.estimate == cd(0.0, 0.0));

  // z1 z2 is constant on this orbit, so Monte Carlo agrees to rounding.
  const Average mc =
      orbit_average(t, v, monomial({1, 1}), 2000, SamplerState{2, 0}, true);
  CHECK(!mc.exact);
  CHECK(std::abs(mc.estimate - cd(1.0, 0.0)) <= 1e-12);
  CHECK(mc.std_error <= 1e-12);
}

TEST_CASE("sphere coordinate averages vanish within error bars") {
  const Average a = orbit_average(sphere_fixture_group(), sphere_fixture_vector(),
                                  monomial({1, 0}), 20000, SamplerState{7, 0});
  CHECK(!a.exact);
  CHECK(a.std_error > 0.0);
  CHECK(a.std_error < 0.02);
  CHECK(std::abs(a.estimate) <= std::max(0.05, 5.0 * a.std_error));
}

TEST_CASE("numeric membership test: cone interior weights force every average to zero") {
  const auto t = torus({{1}, {2}});
  const Eigen::VectorXcd v = cvec({cd(1, 0), cd(1, 0)});
  const auto rep = nilcone_test_numeric(t, v, 4, 100, 1e-9, SamplerState{3, 0});
  CHECK(rep.consistent);
  CHECK(rep.exact);
  CHECK(rep.worst_ratio == 0.0);
  CHECK(rep.degree_bound == 4);
  CHECK(!rep.averages.empty());
  for (const auto& s : rep.averages) CHECK(std::abs(s.estimate) == 0.0);
}

TEST_CASE("numeric membership test: the zero vector is trivially consistent") {
  const auto t = torus({{1}, {-1}});
  const Eigen::VectorXcd v = cvec({cd(0, 0), cd(0, 0)});
  const auto rep = nilcone_test_numeric(t, v, 3, 100, 1e-9, SamplerState{3, 1});
  CHECK(rep.consistent);
}

TEST_CASE("numeric membership test: the adjoint counterexample is flagged") {
  const auto g = su2_adjoint_fixture_group();
  const Eigen::VectorXcd v = su2_adjoint_fixture_vector();
  const auto rep = nilcone_test_numeric(g, v, 2, 20000, 5e-3, SamplerState{4, 0});
  CHECK(!rep.consistent);
  CHECK(rep.worst_ratio > 1.0);

  // tr(W^2) = z1^2 + 2 z2 z3 + z4^2 is invariant and equals -2 on the orbit,
  // so the three quadratic averages recombine to -2.
  const auto a1 = find_avg(rep.averages, {2, 0, 0, 0});
  const auto a2 = find_avg(rep.averages, {0, 1, 1, 0});
  const auto a3 = find_avg(rep.averages, {0, 0, 0, 2});
  REQUIRE(a1.has_value());
  REQUIRE(a2.has_value());
  REQUIRE(a3.has_value());
  const cd combo = *a1 + 2.0 * *a2 + *a3;
  CHECK(std::abs(combo - cd(-2.0, 0.0)) <= 0.05);
}

TEST_CASE("monomial cap aborts oversized families") {
  CHECK_THROWS_AS(nilcone_test_numeric(sphere_fixture_group(), sphere_fixture_vector(),
                                       3, 10, 1e-3, SamplerState{0, 0}, 5),
                  ResourceLimitError);
}

TEST_CASE("defect: pointed torus weights give an exactly multiplicative measure") {
  const auto t = torus({{1}, {2}});
  const Eigen::VectorXcd v = cvec({cd(1, 0), cd(1, 0)});
  const auto rep = multiplicativity_defect(t, v, 2, 100, SamplerState{5, 0});
  CHECK(rep.exact);
  CHECK(rep.defect == 0.0);
  CHECK(rep.fixed_point.cwiseAbs().maxCoeff() == 0.0);

  const auto fp = fixed_point_consistency(t, v, 2, 100, SamplerState{5, 1});
  CHECK(fp.exact);
  CHECK(fp.max_residual == 0.0);
}

TEST_CASE("defect: an opposite weight pair breaks multiplicativity maximally") {
  const auto t = torus({{1}, {-1}});
  const Eigen::VectorXcd v = cvec({cd(1, 0), cd(1, 0)});
  const auto rep = multiplicativity_defect(t, v, 2, 100, SamplerState{6, 0});
  CHECK(rep.exact);
  CHECK(rep.defect == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(!rep.pair_a.empty());
  // The reported pair reproduces the reported defect.
  const auto ma = find_avg(rep.averages, rep.pair_a);
  const auto mb = find_avg(rep.averages, rep.pair_b);
  std::vector<Int> ab(rep.pair_a.size());
  for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = rep.pair_a[i] + rep.pair_b[i];
  const auto mab = find_avg(rep.averages, ab);
  REQUIRE(ma.has_value());
  REQUIRE(mb.has_value());
  REQUIRE(mab.has_value());
  CHECK(std::abs(*mab - *ma * *mb) == doctest::Approx(rep.defect).epsilon(1e-12));

  const auto fp = fixed_point_consistency(t, v, 2, 100, SamplerState{6, 1});
  CHECK(fp.max_residual >= 0.9);
  CHECK(fp.worst_exponent == std::vector<Int>{1, 1});
}

TEST_CASE("defect: the unit sphere under U(2) is multiplicative within tolerance") {
  const auto g = sphere_fixture_group();
  const Eigen::VectorXcd v = sphere_fixture_vector();
  const auto rep = multiplicativity_defect(g, v, 2, 100000, SamplerState{7, 0});
  CHECK(!rep.exact);
  CHECK(rep.defect <= 5e-3);
  CHECK(rep.fixed_point.norm() <= 5e-3);

  const auto fp = fixed_point_consistency(g, v, 2, 100000, SamplerState{7, 1});
  CHECK(fp.fixed_point.norm() <= 5e-3);
  CHECK(fp.max_residual <= 1e-2);
}

TEST_CASE("defect: the adjoint counterexample is refuted") {
  const auto g = su2_adjoint_fixture_group();
  const auto rep = multiplicativity_defect(g, su2_adjoint_fixture_vector(), 2, 20000,
                                           SamplerState{8, 0});
  CHECK(rep.defect >= kDefectRefutedMin);
}

TEST_CASE("raising the degree bound can only increase the defect") {
  const auto g = sphere_fixture_group();
  const Eigen::VectorXcd v = sphere_fixture_vector();
  const auto d2 = multiplicativity_defect(g, v, 2, 20000, SamplerState{9, 0});
  const auto d3 = multiplicativity_defect(g, v, 3, 20000, SamplerState{9, 0});
  CHECK(d2.defect <= d3.defect + 1e-12);
}

TEST_CASE("independent seeds agree within combined error bars") {
  const auto g = su2_adjoint_fixture_group();
  const Eigen::VectorXcd v = su2_adjoint_fixture_vector();
  const Polynomial z1sq = monomial({2, 0, 0, 0});
  const Average a = orbit_average(g, v, z1sq, 20000, SamplerState{21, 0});
  const Average b = orbit_average(g, v, z1sq, 20000, SamplerState{22, 0});
  const double combined = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  CHECK(std::abs(a.estimate - b.estimate) <= 6.0 * combined + 1e-12);
}

TEST_CASE("an invariant polynomial is constant along the orbit") {
  const auto g = su2_adjoint_fixture_group();
  const Average a = orbit_average(g, su2_adjoint_fixture_vector(), su2_trace_form(),
                                  5000, SamplerState{23, 0});
  CHECK(std::abs(a.estimate - cd(-2.0, 0.0)) <= 1e-10);
  CHECK(a.std_error <= 1e-10);
}

TEST_CASE("results do not depend on the worker thread count") {
  const auto g = sphere_fixture_group();
  const Eigen::VectorXcd v = sphere_fixture_vector();
  const auto base = multiplicativity_defect(g, v, 2, 20000, SamplerState{10, 0});
  setenv("ORBITKIT_THREADS", "4", 1);
  const auto threaded = multiplicativity_defect(g, v, 2, 20000, SamplerState{10, 0});
  unsetenv("ORBITKIT_THREADS");
  REQUIRE(base.defect == threaded.defect);
  REQUIRE(base.defect_std_error == threaded.defect_std_error);
  REQUIRE(base.fixed_point == threaded.fixed_point);
  REQUIRE(base.averages.size() == threaded.averages.size());
  for (std::size_t i = 0; i < base.averages.size(); ++i) {
    REQUIRE(base.averages[i].estimate == threaded.averages[i].estimate);
    REQUIRE(base.averages[i].std_error == threaded.averages[i].std_error);
  }
}
