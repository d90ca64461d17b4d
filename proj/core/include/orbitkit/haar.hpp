#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "orbitkit/sampling.hpp"
#include "orbitkit/torus_orbit.hpp"

namespace orbitkit {

enum class GroupKind { torus, unitary, special_unitary, special_orthogonal, custom };
enum class RepKind { defining, adjoint };

/// Compact matrix group together with the representation by which it acts on
/// the ambient coordinate space. Torus elements are the diagonal matrices of
/// their action; matrix kinds act either on C^k (defining) or by conjugation
/// on k x k matrices flattened row-major to C^{k^2} (adjoint).
struct CompactMatrixGroup {
  GroupKind kind = GroupKind::unitary;
  int size = 0;  // matrix size k (torus: m, the ambient dimension)
  RepKind rep = RepKind::defining;
  std::optional<TorusAction> action;           // torus kind only
  std::vector<Eigen::MatrixXcd> custom_basis;  // custom kind: skew-Hermitian
  int word_length = 20;                        // custom sampler word length

  bool approximate_haar() const { return kind == GroupKind::custom; }
  int element_size() const { return size; }
  int ambient_dim() const;

  /// Skew-Hermitian basis of the Lie algebra (torus kind: the n diagonal
  /// matrices diag(i w_j[k]) acting on the ambient space).
  std::vector<Eigen::MatrixXcd> lie_basis() const;

  static CompactMatrixGroup torus_group(TorusAction a);
  static CompactMatrixGroup unitary_group(int k, RepKind rep = RepKind::defining);
  static CompactMatrixGroup special_unitary_group(int k, RepKind rep = RepKind::defining);
  static CompactMatrixGroup special_orthogonal_group(int k, RepKind rep = RepKind::defining);
  static CompactMatrixGroup custom_group(std::vector<Eigen::MatrixXcd> basis,
                                         int word_length = 20);
};

/// One Haar sample. Exact for the built-in kinds (QR of a Gaussian matrix
/// with phase correction, determinant correction for the special kinds,
/// angles for the torus); for custom groups a word of exp(t_k X_{j_k})
/// factors, which only approximates Haar.
Eigen::MatrixXcd haar_sample(const CompactMatrixGroup& g, RandomStream& rs);

/// Action of a group element on an ambient vector.
Eigen::VectorXcd act(const CompactMatrixGroup& g, const Eigen::MatrixXcd& elem,
                     const Eigen::VectorXcd& v);

/// Derived action of a Lie algebra element (defining: X v; adjoint: [X, V]).
Eigen::VectorXcd act_lie(const CompactMatrixGroup& g, const Eigen::MatrixXcd& X,
                         const Eigen::VectorXcd& v);

/// Action of exp(t X) in the representation (t may be complex: the
/// complexified group acts too).
Eigen::VectorXcd act_exp(const CompactMatrixGroup& g, const Eigen::MatrixXcd& X,
                         std::complex<double> t, const Eigen::VectorXcd& v);

/// exp(t X). Uses a unitary eigendecomposition when t X is skew-Hermitian or
/// Hermitian, and scaling-and-squaring with a rational (Pade) approximant
/// otherwise.
Eigen::MatrixXcd exp_skew(const Eigen::MatrixXcd& X, std::complex<double> t = 1.0);

/// max-norm of g* g - I.
double unitarity_defect(const Eigen::MatrixXcd& g);

}  // namespace orbitkit
