#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orbitkit/sampling.hpp"

namespace orbitkit {

/// A real matrix Lie algebra with a distinguished subalgebra. Both bases are
/// validated on construction: real-linear independence, h inside span(g) to
/// 1e-10 (relative), and closure of each span under the bracket to 1e-8.
struct LieSubalgebraPair {
  std::vector<Eigen::MatrixXcd> g_basis;
  std::vector<Eigen::MatrixXcd> h_basis;  // may be empty (trivial subalgebra)
  double h_in_g_residual = 0.0;
  double g_closure_residual = 0.0;
  double h_closure_residual = 0.0;

  static LieSubalgebraPair create(std::vector<Eigen::MatrixXcd> g_basis,
                                  std::vector<Eigen::MatrixXcd> h_basis);
};

struct NormalizerReport {
  int dim_g = 0;
  int dim_h = 0;
  int dim_normalizer = 0;
  /// dim_normalizer == dim_h, which makes N(H)/H finite at the level this
  /// module can see. Component groups are not examined.
  bool condition_f_infinitesimal = false;
  bool infinitesimal_only = true;
  /// max over reported basis elements x and h_i of dist([x, h_i], span h).
  double max_residual = 0.0;
  std::vector<Eigen::MatrixXcd> normalizer_basis;
};

/// Computes n = {x in g : [x, h] subset h} by a real linear system over the
/// g-basis coefficients; rank decisions use singular values with threshold
/// 1e-8.
NormalizerReport normalizer_subalgebra(const LieSubalgebraPair& pair);

using CharacterFn = std::function<std::complex<double>(const Eigen::MatrixXcd&)>;
using ElementSampler = std::function<Eigen::MatrixXcd(RandomStream&)>;

struct MultiplicityEstimate {
  double estimate = 0.0;      // real part of the character average
  double std_error = 0.0;
  double imag_residual = 0.0;  // |imaginary part|; should be noise
};

/// Dimension of the H-fixed subspace of an irreducible representation as the
/// Haar average of its character over H.
MultiplicityEstimate fixed_multiplicity(const CharacterFn& character,
                                        const ElementSampler& h_sampler,
                                        std::uint64_t samples, SamplerState st);

struct NamedCharacter {
  std::string name;
  CharacterFn character;
};

struct GelfandEntry {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double imag_residual = 0.0;
  bool violator = false;
  std::optional<double> character_norm;  // Haar average of |chi|^2 over G
};

struct GelfandReport {
  bool multiplicity_free = false;  // every estimate <= 1 + threshold
  double threshold = 0.0;
  std::uint64_t samples = 0;
  std::vector<GelfandEntry> entries;
  std::vector<std::string> violators;
  std::vector<std::string> warnings;
};

/// Multiplicity-free check over a finite, user-supplied family of characters
/// of irreducible representations. Irreducibility is trusted; when a sampler
/// for the full group is supplied, the character-norm estimate (1 for an
/// irreducible character) is reported and deviations produce a warning, not
/// a failure.
GelfandReport gelfand_check(const std::vector<NamedCharacter>& family,
                            const ElementSampler& h_sampler, std::uint64_t samples,
                            double threshold, SamplerState st,
                            const ElementSampler& g_sampler = {});

}  // namespace orbitkit
