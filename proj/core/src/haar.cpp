#include "orbitkit/haar.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orbitkit {

namespace {

constexpr double kSkewTol = 1e-12;

bool nearly_skew_hermitian(const Eigen::MatrixXcd& x) {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  return ((x + x.adjoint()).cwiseAbs().maxCoeff()) <= kSkewTol * scale;
}

bool nearly_hermitian(const Eigen::MatrixXcd& x) {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  return ((x - x.adjoint()).cwiseAbs().maxCoeff()) <= kSkewTol * scale;
}

Eigen::MatrixXcd reshape_to_matrix(const Eigen::VectorXcd& v, int k) {
  Eigen::MatrixXcd out(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) out(r, c) = v(r * k + c);
  return out;
}

Eigen::VectorXcd flatten(const Eigen::MatrixXcd& m) {
  const int k = static_cast<int>(m.rows());
  Eigen::VectorXcd out(k * k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) out(r * k + c) = m(r, c);
  return out;
}

Eigen::MatrixXcd haar_unitary(int k, RandomStream& rs) {
  // QR of a complex Ginibre matrix; rescaling Q by the phases of diag(R)
  // makes the distribution exactly Haar.
  Eigen::MatrixXcd gin(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) gin(r, c) = rs.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gin);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < k; ++c) {
    std::complex<double> d = r(c, c);
    double a = std::abs(d);
    q.col(c) *= (a > 0) ? d / a : std::complex<double>(1.0, 0.0);
  }
  return q;
}

Eigen::MatrixXcd haar_orthogonal(int k, RandomStream& rs) {
  Eigen::MatrixXd gin(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) gin(r, c) = rs.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gin);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < k; ++c)
    if (r(c, c) < 0) q.col(c) = -q.col(c);
  return q.cast<std::complex<double>>();
}

}  // namespace

int CompactMatrixGroup::ambient_dim() const {
  if (kind == GroupKind::torus) return action->m();
  return rep == RepKind::defining ? size : size * size;
}

std::vector<Eigen::MatrixXcd> CompactMatrixGroup::lie_basis() const {
  std::vector<Eigen::MatrixXcd> basis;
  const std::complex<double> I(0.0, 1.0);
  switch (kind) {
    case GroupKind::torus: {
      // Direction e_d of the torus acts on coordinate j by i * w_j[d].
      const TorusAction& a = *action;
      for (int d = 0; d < a.n; ++d) {
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(a.m(), a.m());
        for (int j = 0; j < a.m(); ++j)
          x(j, j) = I * static_cast<double>(a.weights[j][d]);
        basis.push_back(std::move(x));
      }
      return basis;
    }
    case GroupKind::unitary:
    case GroupKind::special_unitary: {
      const int k = size;
      // Off-diagonal pairs.
      for (int r = 0; r < k; ++r) {
        for (int c = r + 1; c < k; ++c) {
          Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(k, k);
          x(r, c) = 1;
          x(c, r) = -1;
          basis.push_back(x);
          Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(k, k);
          y(r, c) = I;
          y(c, r) = I;
          basis.push_back(y);
        }
      }
      if (kind == GroupKind::unitary) {
        for (int r = 0; r < k; ++r) {
          Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(k, k);
          x(r, r) = I;
          basis.push_back(x);
        }
      } else {
        // Traceless diagonals i(E_rr - E_{r+1,r+1}).
        for (int r = 0; r + 1 < k; ++r) {
          Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(k, k);
          x(r, r) = I;
          x(r + 1, r + 1) = -I;
          basis.push_back(x);
        }
      }
      return basis;
    }
    case GroupKind::special_orthogonal: {
      const int k = size;
      for (int r = 0; r < k; ++r) {
        for (int c = r + 1; c < k; ++c) {
          Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(k, k);
          x(r, c) = 1;
          x(c, r) = -1;
          basis.push_back(x);
        }
      }
      return basis;
    }
    case GroupKind::custom:
      return custom_basis;
  }
  throw std::logic_error("unreachable");
}

CompactMatrixGroup CompactMatrixGroup::torus_group(TorusAction a) {
  CompactMatrixGroup g;
  g.kind = GroupKind::torus;
  g.size = a.m();
  g.rep = RepKind::defining;
  g.action = std::move(a);
  return g;
}

CompactMatrixGroup CompactMatrixGroup::unitary_group(int k, RepKind rep) {
  if (k < 1) throw std::invalid_argument("matrix size must be positive");
  CompactMatrixGroup g;
  g.kind = GroupKind::unitary;
  g.size = k;
  g.rep = rep;
  return g;
}

CompactMatrixGroup CompactMatrixGroup::special_unitary_group(int k, RepKind rep) {
  CompactMatrixGroup g = unitary_group(k, rep);
  g.kind = GroupKind::special_unitary;
  return g;
}

CompactMatrixGroup CompactMatrixGroup::special_orthogonal_group(int k, RepKind rep) {
  CompactMatrixGroup g = unitary_group(k, rep);
  g.kind = GroupKind::special_orthogonal;
  return g;
}

CompactMatrixGroup CompactMatrixGroup::custom_group(std::vector<Eigen::MatrixXcd> basis,
                                                    int word_length) {
  if (basis.empty()) throw std::invalid_argument("custom group needs a Lie basis");
  const int k = static_cast<int>(basis[0].rows());
  for (const auto& x : basis) {
    if (x.rows() != k || x.cols() != k)
      throw std::invalid_argument("custom basis matrices must share one square size");
    if (!nearly_skew_hermitian(x))
      throw std::invalid_argument("custom basis matrices must be skew-Hermitian");
  }
  if (word_length < 1) throw std::invalid_argument("word length must be positive");
  CompactMatrixGroup g;
  g.kind = GroupKind::custom;
  g.size = k;
  g.rep = RepKind::defining;
  g.custom_basis = std::move(basis);
  g.word_length = word_length;
  return g;
}

Eigen::MatrixXcd haar_sample(const CompactMatrixGroup& g, RandomStream& rs) {
  switch (g.kind) {
    case GroupKind::torus: {
      const TorusAction& a = *g.action;
      std::vector<double> theta(a.n);
      for (int d = 0; d < a.n; ++d) theta[d] = rs.uniform(0.0, 2.0 * std::numbers::pi);
      Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(a.m(), a.m());
      for (int j = 0; j < a.m(); ++j) {
        double ang = 0;
        for (int d = 0; d < a.n; ++d) ang += static_cast<double>(a.weights[j][d]) * theta[d];
        t(j, j) = std::polar(1.0, ang);
      }
      return t;
    }
    case GroupKind::unitary:
      return haar_unitary(g.size, rs);
    case GroupKind::special_unitary: {
      Eigen::MatrixXcd q = haar_unitary(g.size, rs);
      // Divide out the n-th root of the determinant phase: pushes Haar on
      // U(n) forward to Haar on SU(n).
      const std::complex<double> det = q.determinant();
      q *= std::polar(1.0, -std::arg(det) / g.size);
      return q;
    }
    case GroupKind::special_orthogonal: {
      Eigen::MatrixXcd q = haar_orthogonal(g.size, rs);
      if (q.determinant().real() < 0) q.col(0) = -q.col(0);
      return q;
    }
    case GroupKind::custom: {
      Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(g.size, g.size);
      for (int step = 0; step < g.word_length; ++step) {
        const std::size_t j = rs.index(g.custom_basis.size());
        const double t = rs.uniform(-std::numbers::pi, std::numbers::pi);
        w = w * exp_skew(g.custom_basis[j], t);
      }
      return w;
    }
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXcd act(const CompactMatrixGroup& g, const Eigen::MatrixXcd& elem,
                     const Eigen::VectorXcd& v) {
  if (g.kind == GroupKind::torus || g.rep == RepKind::defining) return elem * v;
  const int k = g.size;
  if (v.size() != k * k) throw std::invalid_argument("vector is not a flattened matrix");
  return flatten(elem * reshape_to_matrix(v, k) * elem.adjoint());
}

Eigen::VectorXcd act_lie(const CompactMatrixGroup& g, const Eigen::MatrixXcd& X,
                         const Eigen::VectorXcd& v) {
  if (g.kind == GroupKind::torus || g.rep == RepKind::defining) return X * v;
  const int k = g.size;
  Eigen::MatrixXcd m = reshape_to_matrix(v, k);
  return flatten(X * m - m * X);
}

Eigen::VectorXcd act_exp(const CompactMatrixGroup& g, const Eigen::MatrixXcd& X,
                         std::complex<double> t, const Eigen::VectorXcd& v) {
  if (g.kind == GroupKind::torus || g.rep == RepKind::defining)
    return exp_skew(X, t) * v;
  const int k = g.size;
  Eigen::MatrixXcd e = exp_skew(X, t);
  Eigen::MatrixXcd e_inv = exp_skew(X, -t);
  return flatten(e * reshape_to_matrix(v, k) * e_inv);
}

Eigen::MatrixXcd exp_skew(const Eigen::MatrixXcd& X, std::complex<double> t) {
  Eigen::MatrixXcd tx = t * X;
  if (nearly_skew_hermitian(tx)) {
    // tX = i H with H Hermitian.
    Eigen::MatrixXcd h = std::complex<double>(0.0, -1.0) * tx;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(h.rows());
    for (int j = 0; j < h.rows(); ++j)
      phases(j) = std::polar(1.0, es.eigenvalues()(j));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }
  if (nearly_hermitian(tx)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(tx);
    Eigen::VectorXcd vals(tx.rows());
    for (int j = 0; j < tx.rows(); ++j)
      vals(j) = std::exp(es.eigenvalues()(j));
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  }
  return tx.exp();
}

double unitarity_defect(const Eigen::MatrixXcd& g) {
  Eigen::MatrixXcd d =
      g.adjoint() * g - Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace orbitkit
