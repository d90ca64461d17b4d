#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "orbitkit/group_structure.hpp"
#include "orbitkit/haar.hpp"
#include "orbitkit/polynomial.hpp"
#include "orbitkit/torus_orbit.hpp"

namespace orbitkit {

/// A torus example with its expected exact verdicts. The gallery doubles as
/// a self-test: `run_fixture_gallery` recomputes everything and compares.
struct TorusFixture {
  std::string name;
  TorusAction action;
  std::vector<GaussRat> v;
  bool expect_antisymmetric = false;
  bool expect_nilpotent = false;
  std::vector<GaussRat> expect_v_tilde;
  std::vector<int> expect_fiber_coords;
};

std::vector<TorusFixture> torus_fixture_gallery();

Eigen::VectorXcd to_vector(const std::vector<GaussRat>& coords);

/// U(2) acting on C^2; the orbit of (1,0) is the unit sphere.
CompactMatrixGroup sphere_fixture_group();
Eigen::VectorXcd sphere_fixture_vector();

/// SU(2) acting by conjugation on 2x2 matrices flattened row-major. The
/// base point is [[i,1],[0,-i]]: not in the nilpotent cone (tr of its square
/// is -2), yet its orbit carries an antisymmetric algebra (externally
/// asserted; this toolkit verifies the non-multiplicativity side).
CompactMatrixGroup su2_adjoint_fixture_group();
Eigen::VectorXcd su2_adjoint_fixture_vector();
/// tr(W^2) as a polynomial in the flattened coordinates: z1^2 + 2 z2 z3 + z4^2.
Polynomial su2_trace_form();

// Lie-algebra bases for the normalizer fixtures.
std::vector<Eigen::MatrixXcd> so3_basis();
std::vector<Eigen::MatrixXcd> so2_in_so3_basis();  // rotations about the z axis
std::vector<Eigen::MatrixXcd> su2_basis();
/// The abelian algebra of diag(i theta_1, ..., i theta_n).
std::vector<Eigen::MatrixXcd> torus_algebra_basis(int n);

// Character families and samplers for the multiplicity fixtures.
std::vector<NamedCharacter> so3_harmonic_characters(int max_ell);
std::vector<NamedCharacter> su2_spin_characters(const std::vector<int>& spins);
ElementSampler so2_in_so3_sampler();
ElementSampler su2_center_sampler();  // the two-element center {I, -I}
ElementSampler group_sampler(CompactMatrixGroup g);

struct FixtureOutcome {
  std::string name;
  bool match = false;
  std::string detail;
};

/// Recomputes every gallery fixture and compares against the encoded
/// expectations: exact torus verdicts, the defect dichotomy, the sphere
/// mean-value behaviour, and the adjoint counterexample.
std::vector<FixtureOutcome> run_fixture_gallery(std::uint64_t samples, SamplerState st);

}  // namespace orbitkit
