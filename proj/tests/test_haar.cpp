#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "orbitkit/fixtures.hpp"
#include "orbitkit/haar.hpp"

using namespace orbitkit;
using cd = std::complex<double>;

namespace {

double det_defect(const Eigen::MatrixXcd& g) { return std::abs(g.determinant() - cd(1.0)); }

Eigen::MatrixXcd random_skew(int k, RandomStream& rs) {
  Eigen::MatrixXcd a(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) a(r, c) = rs.complex_normal();
  return 0.5 * (a - a.adjoint().eval());
}

}  // namespace

TEST_CASE("every emitted sample is unitary to 1e-12") {
  const std::vector<CompactMatrixGroup> groups = {
      CompactMatrixGroup::unitary_group(2),
      CompactMatrixGroup::unitary_group(4),
      CompactMatrixGroup::special_unitary_group(2),
      CompactMatrixGroup::special_orthogonal_group(3),
      CompactMatrixGroup::torus_group(TorusAction::create(2, {{1, 0}, {0, 1}, {2, -1}})),
  };
  for (const auto& g : groups) {
    RandomStream rs(SamplerState{11, 0});
    for (int i = 0; i < 100; ++i) {
      const Eigen::MatrixXcd u = haar_sample(g, rs);
      REQUIRE(unitarity_defect(u) <= 1e-12);
    }
  }
}

TEST_CASE("special kinds have unit determinant; orthogonal samples are real") {
  RandomStream rs(SamplerState{12, 0});
  const auto su3 = CompactMatrixGroup::special_unitary_group(3);
  const auto so4 = CompactMatrixGroup::special_orthogonal_group(4);
  for (int i = 0; i < 50; ++i) {
    CHECK(det_defect(haar_sample(su3, rs)) <= 1e-10);
    const Eigen::MatrixXcd r = haar_sample(so4, rs);
    CHECK(det_defect(r) <= 1e-10);
    CHECK(r.imag().cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("custom subgroups sample unitaries and flag approximate measure") {
  const auto g = CompactMatrixGroup::custom_group(su2_basis());
  CHECK(g.approximate_haar());
  RandomStream rs(SamplerState{13, 0});
  for (int i = 0; i < 50; ++i) {
    const Eigen::MatrixXcd u = haar_sample(g, rs);
    CHECK(unitarity_defect(u) <= 1e-10);
  }
  CHECK(!CompactMatrixGroup::unitary_group(2).approximate_haar());
}

TEST_CASE("matrix exponential: frozen cases") {
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(3, 3);
  CHECK((exp_skew(zero) - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-15);

  Eigen::MatrixXcd h(2, 2);
  h << cd(0.0, 1.0), cd(0.0, 0.0), cd(0.0, 0.0), cd(0.0, -1.0);
  const Eigen::MatrixXcd half_turn = exp_skew(h, 3.14159265358979323846);
  CHECK(std::abs(half_turn(0, 0) - cd(-1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(half_turn(1, 1) - cd(-1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(half_turn(0, 1)) <= 1e-12);

  // Nilpotent (non-normal) input exercises the series path.
  Eigen::MatrixXcd n(2, 2);
  n << cd(0.0), cd(1.0), cd(0.0), cd(0.0);
  const Eigen::MatrixXcd en = exp_skew(n);
  CHECK(std::abs(en(0, 0) - cd(1.0)) <= 1e-14);
  CHECK(std::abs(en(0, 1) - cd(1.0)) <= 1e-14);
  CHECK(std::abs(en(1, 0)) <= 1e-14);
  CHECK(std::abs(en(1, 1) - cd(1.0)) <= 1e-14);
}

TEST_CASE("matrix exponential: property checks") {
  RandomStream rs(SamplerState{14, 0});
  for (int i = 0; i < 25; ++i) {
    const Eigen::MatrixXcd x = random_skew(4, rs);
    const Eigen::MatrixXcd ex = exp_skew(x);
    REQUIRE(unitarity_defect(ex) <= 1e-10);
    REQUIRE((exp_skew(x) * exp_skew(x, -1.0) - Eigen::MatrixXcd::Identity(4, 4))
                .cwiseAbs()
                .maxCoeff() <= 1e-10);
  }
  // General (non-skew) argument: exp(X)exp(-X) = I still holds.
  Eigen::MatrixXcd m(3, 3);
  RandomStream rs2(SamplerState{15, 0});
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = rs2.complex_normal();
  CHECK((exp_skew(m) * exp_skew(m, -1.0) - Eigen::MatrixXcd::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
}

TEST_CASE("action: identity, torus phases, adjoint conjugation") {
  const auto torus = CompactMatrixGroup::torus_group(TorusAction::create(1, {{1}, {2}}));
  Eigen::VectorXcd v(2);
  v << cd(0.3, 0.4), cd(1.0, -0.25);

  CHECK((act(torus, Eigen::MatrixXcd::Identity(2, 2), v) - v).cwiseAbs().maxCoeff() <=
        1e-15);

  // exp(theta * X) with X = diag(i w_j) multiplies coordinate j by e^{i w_j theta}.
  const Eigen::MatrixXcd x0 = torus.lie_basis().at(0);
  const double theta = 0.83;
  const Eigen::VectorXcd rotated = act_exp(torus, x0, theta, v);
  CHECK(std::abs(rotated(0) - v(0) * std::exp(cd(0.0, theta))) <= 1e-12);
  CHECK(std::abs(rotated(1) - v(1) * std::exp(cd(0.0, 2.0 * theta))) <= 1e-12);

  const auto su2adj = su2_adjoint_fixture_group();
  Eigen::VectorXcd w(4);
  w << cd(0.0, 1.0), cd(0.0, 0.0), cd(0.0, 0.0), cd(0.0, -1.0);  // diag(i, -i)
  RandomStream rs(SamplerState{16, 0});
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXcd g = haar_sample(su2adj, rs);
    const Eigen::VectorXcd gw = act(su2adj, g, w);
    CHECK(std::abs(gw(0) + gw(3)) <= 1e-12);  // conjugation preserves the trace
    const cd tr_sq = gw(0) * gw(0) + 2.0 * gw(1) * gw(2) + gw(3) * gw(3);
    CHECK(std::abs(tr_sq - cd(-2.0)) <= 1e-12);  // and the spectrum {i, -i}
  }

  Eigen::VectorXcd wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS(act(su2adj, Eigen::MatrixXcd::Identity(2, 2), wrong),
                  std::invalid_argument);
}

TEST_CASE("identical sampler states reproduce bitwise-identical streams") {
  const auto g = CompactMatrixGroup::unitary_group(3);
  RandomStream a(SamplerState{42, 7});
  RandomStream b(SamplerState{42, 7});
  for (int i = 0; i < 5; ++i) {
    const Eigen::MatrixXcd ga = haar_sample(g, a);
    const Eigen::MatrixXcd gb = haar_sample(g, b);
    REQUIRE(ga == gb);
  }
  RandomStream c(SamplerState{42, 8});
  CHECK(haar_sample(g, c) != haar_sample(g, a));
}

TEST_CASE("entry means vanish and left translation leaves statistics invariant") {
  const auto g = CompactMatrixGroup::unitary_group(2);
  RandomStream fixed(SamplerState{99, 1});
  const Eigen::MatrixXcd h = haar_sample(g, fixed);

  const std::uint64_t n = 100000;
  KahanComplex mean_entry;
  Kahan f_plain, f_translated, f_plain_sq, f_translated_sq;
  RandomStream rs(SamplerState{99, 2});
  for (std::uint64_t i = 0; i < n; ++i) {
    const Eigen::MatrixXcd u = haar_sample(g, rs);
    mean_entry.add(u(0, 0));
    const Eigen::MatrixXcd hu = h * u;
    const double fu = (u(0, 0) * u(1, 1)).real();
    const double fhu = (hu(0, 0) * hu(1, 1)).real();
    f_plain.add(fu);
    f_translated.add(fhu);
    f_plain_sq.add(fu * fu);
    f_translated_sq.add(fhu * fhu);
  }
  const double nn = static_cast<double>(n);
  CHECK(std::abs(mean_entry.value() / nn) <= 0.02);

  const double m1 = f_plain.value() / nn, m2 = f_translated.value() / nn;
  const double var1 = std::max(0.0, f_plain_sq.value() / nn - m1 * m1);
  const double var2 = std::max(0.0, f_translated_sq.value() / nn - m2 * m2);
  const double combined_se = std::sqrt((var1 + var2) / nn);
  CHECK(std::abs(m1 - m2) <= 3.0 * combined_se + 1e-12);
}

TEST_CASE("torus samples respect the weight relations") {
  const auto torus = CompactMatrixGroup::torus_group(TorusAction::create(1, {{1}, {2}}));
  RandomStream rs(SamplerState{5, 5});
  for (int i = 0; i < 50; ++i) {
    const Eigen::MatrixXcd t = haar_sample(torus, rs);
    REQUIRE(t.rows() == 2);
    CHECK(std::abs(std::abs(t(0, 0)) - 1.0) <= 1e-14);
    CHECK(std::abs(t(1, 1) - t(0, 0) * t(0, 0)) <= 1e-13);  // weight 2 doubles the angle
    CHECK(std::abs(t(0, 1)) == 0.0);
  }
}
