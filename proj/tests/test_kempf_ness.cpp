#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "orbitkit/fixtures.hpp"
#include "orbitkit/kempf_ness.hpp"
#include "orbitkit/torus_orbit.hpp"

using namespace orbitkit;
using cd = std::complex<double>;

namespace {

CompactMatrixGroup torus(std::vector<std::vector<Int>> weights) {
  const int n = static_cast<int>(weights.front().size());
  return CompactMatrixGroup::torus_group(TorusAction::create(n, std::move(weights)));
}

Eigen::VectorXcd cvec(std::initializer_list<cd> entries) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const cd& z : entries) v(i++) = z;
  return v;
}

void check_single_verdict(const FlowReport& r) {
  const int flags = (r.converged_to_zero ? 1 : 0) + (r.stalled ? 1 : 0) +
                    (r.iteration_limit ? 1 : 0);
  REQUIRE(flags == 1);
}

}  // namespace

TEST_CASE("moment gradient: zero vector and the frozen torus value") {
  const auto t = torus({{1}, {2}});
  CHECK(moment_gradient(t, cvec({cd(0, 0), cd(0, 0)})).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd g = moment_gradient(t, cvec({cd(1, 0), cd(1, 0)}));
  REQUIRE(g.size() == 1);
  CHECK(g(0) == -6.0);  // -2 * (1*1 + 2*1)
}

TEST_CASE("moment gradient matches central finite differences") {
  std::mt19937_64 rng(20240815);
  std::uniform_int_distribution<int> wcoef(-3, 3);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  const double h = 1e-6;

  auto check_group = [&](const CompactMatrixGroup& g, const Eigen::VectorXcd& w) {
    const Eigen::VectorXd grad = moment_gradient(g, w);
    const auto basis = g.lie_basis();
    REQUIRE(grad.size() == static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double fp = act_exp(g, basis[k], cd(0.0, h), w).squaredNorm();
      const double fm = act_exp(g, basis[k], cd(0.0, -h), w).squaredNorm();
      const double fd = (fp - fm) / (2.0 * h);
      REQUIRE(std::abs(fd - grad(k)) <= 1e-5 * std::max(1.0, std::abs(grad(k))));
    }
  };

  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const int m = 2 + static_cast<int>(rng() % 2);
    std::vector<std::vector<Int>> rows;
    for (int j = 0; j < m; ++j) {
      std::vector<Int> row(n);
      bool nonzero = false;
      do {
        for (auto& x : row) x = wcoef(rng);
        nonzero = false;
        for (auto x : row) nonzero |= (x != 0);
      } while (!nonzero);
      rows.push_back(row);
    }
    const auto g = torus(std::move(rows));
    Eigen::VectorXcd w(m);
    for (int j = 0; j < m; ++j) w(j) = cd(coord(rng), coord(rng));
    check_group(g, w);
  }

  const auto u2 = CompactMatrixGroup::unitary_group(2);
  const auto su2adj = su2_adjoint_fixture_group();
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::VectorXcd w2(2), w4(4);
    for (int j = 0; j < 2; ++j) w2(j) = cd(coord(rng), coord(rng));
    for (int j = 0; j < 4; ++j) w4(j) = cd(coord(rng), coord(rng));
    check_group(u2, w2);
    check_group(su2adj, w4);
  }
}

TEST_CASE("flow drives strictly destabilized points to zero") {
  const auto t = torus({{1}, {2}});
  FlowParams params;
  params.zero_tol = 1e-12;
  const FlowReport r = flow_minimize(t, cvec({cd(1, 0), cd(1, 0)}), {}, params);
  check_single_verdict(r);
  CHECK(r.converged_to_zero);
  CHECK(r.final_norm_sq <= 1e-12);
  CHECK(r.initial_norm_sq == doctest::Approx(2.0));
  CHECK(r.final_point.squaredNorm() <= 1e-12);

  REQUIRE(r.single_direction.has_value());
  const auto& xi = *r.single_direction;
  REQUIRE(xi.size() == 1);
  CHECK(xi[0] >= Rat(1));        // pairing with weight 1
  CHECK(2 * xi[0] >= Rat(1));    // pairing with weight 2

  REQUIRE(!r.norm_sq_trace.empty());
  for (std::size_t i = 1; i < r.norm_sq_trace.size(); ++i)
    REQUIRE(r.norm_sq_trace[i] < r.norm_sq_trace[i - 1]);
}

TEST_CASE("flow stalls on a minimal vector and withholds the direction certificate") {
  const auto t = torus({{1}, {-1}});
  const FlowReport r = flow_minimize(t, cvec({cd(1, 0), cd(1, 0)}));
  check_single_verdict(r);
  CHECK(r.stalled);
  CHECK(r.final_norm_sq >= 2.0 - 1e-5);
  CHECK(!r.single_direction.has_value());
  CHECK(r.gradient_norm <= 1e-8);
}

TEST_CASE("adjoint counterexample: flow stalls while conserving the trace form") {
  const auto g = su2_adjoint_fixture_group();
  const std::vector<NamedPolynomial> invariants = {{"trace_form", su2_trace_form()}};
  const FlowReport r = flow_minimize(g, su2_adjoint_fixture_vector(), invariants);
  check_single_verdict(r);
  CHECK(r.stalled);
  CHECK(r.final_norm_sq >= 2.0 - 1e-6);
  REQUIRE(r.invariant_residuals.count("trace_form") == 1);
  CHECK(r.invariant_residuals.at("trace_form") <= 1e-6);
  CHECK(!r.single_direction.has_value());
}

TEST_CASE("iteration budget of one forces the inconclusive verdict") {
  const auto t = torus({{1}, {2}});
  FlowParams params;
  params.max_iterations = 1;
  params.zero_tol = 1e-12;
  const FlowReport r = flow_minimize(t, cvec({cd(1, 0), cd(1, 0)}), {}, params);
  check_single_verdict(r);
  CHECK(r.iteration_limit);
  CHECK(r.final_norm_sq > 1e-12);
}

TEST_CASE("invariant with the wrong variable count is rejected") {
  const auto t = torus({{1}, {2}});
  // Three variables against an ambient dimension of two.
  const Polynomial p = Polynomial::monomial(3, {1, 0, 0});
  CHECK_THROWS_AS(flow_minimize(t, cvec({cd(1, 0), cd(1, 0)}), {{"bad", p}}),
                  std::invalid_argument);
}

TEST_CASE("flow verdicts agree with exact membership on random torus instances") {
  std::mt19937_64 rng(777001);
  std::uniform_int_distribution<int> wcoef(-3, 3);
  int conclusive = 0, members_seen = 0, nonmembers_seen = 0;

  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const int m = 2 + static_cast<int>(rng() % 3);
    std::vector<std::vector<Int>> rows;
    for (int j = 0; j < m; ++j) {
      std::vector<Int> row(n);
      bool nonzero = false;
      do {
        for (auto& x : row) x = wcoef(rng);
        nonzero = false;
        for (auto x : row) nonzero |= (x != 0);
      } while (!nonzero);
      rows.push_back(row);
    }
    const TorusAction action = TorusAction::create(n, rows);
    std::vector<GaussRat> coords(m);
    Eigen::VectorXcd w(m);
    bool any = false;
    for (int j = 0; j < m; ++j) {
      int pick = static_cast<int>(rng() % 4);
      if (j + 1 == m && !any && pick == 0) pick = 1;  // exact membership needs v != 0
      const Int re = (pick == 0) ? 0 : static_cast<Int>(pick);
      any = any || (re != 0);
      coords[j] = GaussRat(Rat(static_cast<long>(re)), Rat(0));
      w(j) = cd(static_cast<double>(re), 0.0);
    }
    const auto cert = nilcone_member_exact(action, OrbitPoint::from_exact(coords));
    const FlowReport r = flow_minimize(CompactMatrixGroup::torus_group(action), w);
    check_single_verdict(r);
    if (r.iteration_limit) continue;
    ++conclusive;
    if (cert.member) {
      ++members_seen;
      REQUIRE(r.converged_to_zero);
    } else {
      ++nonmembers_seen;
      REQUIRE(r.stalled);
    }
  }
  CHECK(conclusive >= 18);
  CHECK(members_seen >= 3);
  CHECK(nonmembers_seen >= 3);
}
