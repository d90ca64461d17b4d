#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "orbitkit/haar.hpp"
#include "orbitkit/polynomial.hpp"

namespace orbitkit {

/// Declared verdict thresholds for the multiplicativity defect: at most
/// kDefectConsistentMax reads "antisymmetric-consistent", at least
/// kDefectRefutedMin reads "refuted", anything between is inconclusive
/// (finite sampling needs a declared gray zone).
inline constexpr double kDefectConsistentMax = 5e-3;
inline constexpr double kDefectRefutedMin = 0.05;

struct Average {
  std::complex<double> estimate{0.0, 0.0};
  double std_error = 0.0;  // sample standard deviation / sqrt(samples); 0 if exact
  bool exact = false;
};

/// Average of p over the orbit of v under the invariant measure. Monte Carlo
/// with sharded deterministic streams; the torus kind is evaluated in closed
/// form instead (a monomial averages to its value at v when its total weight
/// over supp v vanishes, to 0 otherwise) unless force_monte_carlo is set.
Average orbit_average(const CompactMatrixGroup& g, const Eigen::VectorXcd& v,
                      const Polynomial& p, std::uint64_t samples, SamplerState st,
                      bool force_monte_carlo = false);

struct MonomialStats {
  std::vector<Int> exponent;
  std::complex<double> estimate{0.0, 0.0};
  double std_error = 0.0;
};

struct NilconeNumericReport {
  bool consistent = false;  // every |estimate| <= max(tolerance, 4 * std_error)
  std::vector<MonomialStats> averages;
  std::vector<Int> worst_exponent;  // largest |estimate| / allowance
  double worst_ratio = 0.0;
  std::uint64_t samples = 0;
  int degree_bound = 0;
  double tolerance = 0.0;
  bool exact = false;
};

/// Estimates the orbit averages of every monomial of degree 1..degree_bound
/// and checks them against zero: consistency with membership of v in the
/// common zero set of the invariant polynomials.
NilconeNumericReport nilcone_test_numeric(const CompactMatrixGroup& g,
                                          const Eigen::VectorXcd& v, int degree_bound,
                                          std::uint64_t samples, double tolerance,
                                          SamplerState st, std::size_t monomial_cap = 5000,
                                          bool force_monte_carlo = false);

struct DefectReport {
  double defect = 0.0;  // max over pairs |mu(z^{a+b}) - mu(z^a) mu(z^b)|
  std::vector<Int> pair_a, pair_b;
  double defect_std_error = 0.0;  // first-order error of the attaining pair
  std::vector<MonomialStats> averages;  // all monomials up to 2 * degree_bound
  Eigen::VectorXcd fixed_point;         // average of g . v
  std::vector<double> fixed_point_se;
  std::uint64_t samples = 0;
  int degree_bound = 0;
  bool exact = false;
};

/// Multiplicativity defect of the orbit-averaging functional on monomials up
/// to degree_bound. All three averages of every pair share one sample stream
/// (common random numbers).
DefectReport multiplicativity_defect(const CompactMatrixGroup& g,
                                     const Eigen::VectorXcd& v, int degree_bound,
                                     std::uint64_t samples, SamplerState st,
                                     std::size_t monomial_cap = 5000,
                                     bool force_monte_carlo = false);

struct FixedPointReport {
  double max_residual = 0.0;  // max |mu(z^c) - z^c(fixed_point)|
  std::vector<Int> worst_exponent;
  Eigen::VectorXcd fixed_point;
  std::uint64_t samples = 0;
  bool exact = false;
};

/// Consistency between monomial averages and evaluation at the estimated
/// invariant point (the average of g . v).
FixedPointReport fixed_point_consistency(const CompactMatrixGroup& g,
                                         const Eigen::VectorXcd& v, int degree_bound,
                                         std::uint64_t samples, SamplerState st,
                                         std::size_t monomial_cap = 5000,
                                         bool force_monte_carlo = false);

}  // namespace orbitkit
