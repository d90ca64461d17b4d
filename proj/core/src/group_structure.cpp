#include "orbitkit/group_structure.hpp"

#include <cmath>
#include <stdexcept>

#include "orbitkit/numeric.hpp"

namespace orbitkit {

namespace {

constexpr double kSpanTol = 1e-10;
constexpr double kClosureTol = 1e-8;
constexpr double kRankTol = 1e-8;

/// A k x k complex matrix as a real vector of length 2 k^2 (real Lie
/// algebras are real vector spaces).
Eigen::VectorXd vec_real(const Eigen::MatrixXcd& m) {
  Eigen::VectorXd out(2 * m.size());
  Eigen::Index idx = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out(idx) = m(r, c).real();
      out(idx + m.size()) = m(r, c).imag();
      ++idx;
    }
  return out;
}

Eigen::MatrixXcd bracket(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a * b - b * a;
}

/// Orthonormal basis of the real span of the given matrices (empty matrix
/// for the zero span).
Eigen::MatrixXd orthonormal_span(const std::vector<Eigen::MatrixXcd>& basis,
                                 Eigen::Index vec_dim) {
  if (basis.empty()) return Eigen::MatrixXd(vec_dim, 0);
  Eigen::MatrixXd m(vec_dim, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    m.col(static_cast<Eigen::Index>(i)) = vec_real(basis[i]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * std::max(1.0, sv(0))) ++rank;
  return svd.matrixU().leftCols(rank);
}

double dist_to_span(const Eigen::MatrixXd& q, const Eigen::VectorXd& x) {
  if (q.cols() == 0) return x.norm();
  return (x - q * (q.transpose() * x)).norm();
}

void check_square_same_size(const std::vector<Eigen::MatrixXcd>& basis, const char* what,
                            Eigen::Index& size) {
  for (const Eigen::MatrixXcd& m : basis) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": matrices must be square");
    if (size < 0) size = m.rows();
    if (m.rows() != size)
      throw std::invalid_argument(std::string(what) + ": matrices must share one size");
  }
}

double closure_residual(const std::vector<Eigen::MatrixXcd>& basis, const Eigen::MatrixXd& q) {
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      const Eigen::VectorXd br = vec_real(bracket(basis[a], basis[b]));
      const double scale = std::max(1.0, br.norm());
      worst = std::max(worst, dist_to_span(q, br) / scale);
    }
  return worst;
}

}  // namespace

LieSubalgebraPair LieSubalgebraPair::create(std::vector<Eigen::MatrixXcd> g_basis,
                                            std::vector<Eigen::MatrixXcd> h_basis) {
  if (g_basis.empty()) throw std::invalid_argument("ambient algebra basis is empty");
  Eigen::Index size = -1;
  check_square_same_size(g_basis, "g basis", size);
  check_square_same_size(h_basis, "h basis", size);

  const Eigen::Index vec_dim = 2 * size * size;
  const Eigen::MatrixXd qg = orthonormal_span(g_basis, vec_dim);
  if (qg.cols() != static_cast<Eigen::Index>(g_basis.size()))
    throw std::invalid_argument("g basis is linearly dependent over the reals");
  const Eigen::MatrixXd qh = orthonormal_span(h_basis, vec_dim);
  if (qh.cols() != static_cast<Eigen::Index>(h_basis.size()))
    throw std::invalid_argument("h basis is linearly dependent over the reals");

  LieSubalgebraPair pair;
  for (const Eigen::MatrixXcd& h : h_basis) {
    const Eigen::VectorXd x = vec_real(h);
    pair.h_in_g_residual = std::max(pair.h_in_g_residual, dist_to_span(qg, x) / x.norm());
  }
  if (pair.h_in_g_residual > kSpanTol)
    throw std::invalid_argument("h basis does not lie in the span of the g basis");

  pair.g_closure_residual = closure_residual(g_basis, qg);
  if (pair.g_closure_residual > kClosureTol)
    throw std::invalid_argument("g basis span is not closed under the bracket");
  pair.h_closure_residual = closure_residual(h_basis, qh);
  if (pair.h_closure_residual > kClosureTol)
    throw std::invalid_argument("h basis span is not closed under the bracket");

  pair.g_basis = std::move(g_basis);
  pair.h_basis = std::move(h_basis);
  return pair;
}

NormalizerReport normalizer_subalgebra(const LieSubalgebraPair& pair) {
  const Eigen::Index size = pair.g_basis[0].rows();
  const Eigen::Index vec_dim = 2 * size * size;
  const int p = static_cast<int>(pair.g_basis.size());
  const int nh = static_cast<int>(pair.h_basis.size());

  NormalizerReport rep;
  rep.dim_g = p;
  rep.dim_h = nh;

  if (nh == 0) {
    // [x, 0] = 0 always: the normalizer of the trivial subalgebra is all of g.
    rep.dim_normalizer = p;
    rep.normalizer_basis = pair.g_basis;
    rep.condition_f_infinitesimal = (p == 0);
    return rep;
  }

  const Eigen::MatrixXd qh = orthonormal_span(pair.h_basis, vec_dim);
  Eigen::MatrixXd system(static_cast<Eigen::Index>(nh) * vec_dim, p);
  for (int a = 0; a < p; ++a)
    for (int i = 0; i < nh; ++i) {
      Eigen::VectorXd br = vec_real(bracket(pair.g_basis[static_cast<std::size_t>(a)],
                                            pair.h_basis[static_cast<std::size_t>(i)]));
      br -= qh * (qh.transpose() * br);
      system.block(static_cast<Eigen::Index>(i) * vec_dim, a, vec_dim, 1) = br;
    }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * std::max(1.0, sv(0))) ++rank;
  rep.dim_normalizer = p - static_cast<int>(rank);
  rep.condition_f_infinitesimal = (rep.dim_normalizer == rep.dim_h);

  const Eigen::MatrixXd null_basis = svd.matrixV().rightCols(p - static_cast<int>(rank));
  for (Eigen::Index c = 0; c < null_basis.cols(); ++c) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(size, size);
    for (int a = 0; a < p; ++a) x += null_basis(a, c) * pair.g_basis[static_cast<std::size_t>(a)];
    for (int i = 0; i < nh; ++i) {
      const Eigen::VectorXd br = vec_real(bracket(x, pair.h_basis[static_cast<std::size_t>(i)]));
      rep.max_residual = std::max(rep.max_residual, dist_to_span(qh, br));
    }
    rep.normalizer_basis.push_back(std::move(x));
  }
  return rep;
}

MultiplicityEstimate fixed_multiplicity(const CharacterFn& character,
                                        const ElementSampler& h_sampler,
                                        std::uint64_t samples, SamplerState st) {
  if (!character || !h_sampler) throw std::invalid_argument("character and sampler are required");
  if (samples == 0) throw std::invalid_argument("sample count must be positive");

  struct Block {
    KahanComplex sum;
    Kahan sumsq;
  };
  auto partials = run_blocks<Block>(st, samples, [&](RandomStream& rs, std::uint64_t count) {
    Block b;
    for (std::uint64_t s = 0; s < count; ++s) {
      const std::complex<double> chi = character(h_sampler(rs));
      b.sum.add(chi);
      b.sumsq.add(std::norm(chi));
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
  const std::complex<double> mean = sum.value() / n;
  MultiplicityEstimate out;
  out.estimate = mean.real();
  out.imag_residual = std::abs(mean.imag());
  if (samples >= 2) {
    double var = sumsq.value() / n - std::norm(mean);
    if (var < 0.0) var = 0.0;
    out.std_error = std::sqrt(var * n / (n - 1.0) / n);
  }
  return out;
}

GelfandReport gelfand_check(const std::vector<NamedCharacter>& family,
                            const ElementSampler& h_sampler, std::uint64_t samples,
                            double threshold, SamplerState st,
                            const ElementSampler& g_sampler) {
  if (family.empty()) throw std::invalid_argument("character family is empty");
  if (threshold < 0.0) throw std::invalid_argument("threshold must be nonnegative");

  GelfandReport rep;
  rep.threshold = threshold;
  rep.samples = samples;
  rep.multiplicity_free = true;
  // A wide counter stride keeps the per-character streams disjoint.
  constexpr std::uint64_t kStride = 1ULL << 32;
  for (std::size_t r = 0; r < family.size(); ++r) {
    const SamplerState sub{st.seed, st.counter + static_cast<std::uint64_t>(r) * kStride};
    const MultiplicityEstimate est =
        fixed_multiplicity(family[r].character, h_sampler, samples, sub);
    GelfandEntry entry;
    entry.name = family[r].name;
    entry.estimate = est.estimate;
    entry.std_error = est.std_error;
    entry.imag_residual = est.imag_residual;
    entry.violator = est.estimate > 1.0 + threshold;
    if (entry.violator) {
      rep.multiplicity_free = false;
      rep.violators.push_back(entry.name);
    }
    if (g_sampler) {
      const SamplerState norm_state{st.seed, sub.counter + kStride / 2};
      const NamedCharacter& nc = family[r];
      const CharacterFn norm_fn = [&nc](const Eigen::MatrixXcd& g) {
        return std::complex<double>(std::norm(nc.character(g)), 0.0);
      };
      const MultiplicityEstimate nrm = fixed_multiplicity(norm_fn, g_sampler, samples, norm_state);
      entry.character_norm = nrm.estimate;
      if (std::abs(nrm.estimate - 1.0) > std::max(0.1, 4.0 * nrm.std_error))
        rep.warnings.push_back("character norm of " + entry.name + " is " +
                               std::to_string(nrm.estimate) +
                               "; expected 1 for an irreducible character");
    }
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

}  // namespace orbitkit
