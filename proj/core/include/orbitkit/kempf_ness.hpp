#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitkit/haar.hpp"
#include "orbitkit/numeric.hpp"
#include "orbitkit/polynomial.hpp"

namespace orbitkit {

struct FlowParams {
  double armijo_c = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
  int max_iterations = 10000;
  double zero_tol = 1e-6;  // on the squared norm
  double grad_tol = 1e-8;
};

struct FlowReport {
  double initial_norm_sq = 0.0;
  double final_norm_sq = 0.0;
  int iterations = 0;
  // Exactly one of the three verdict flags is set.
  bool converged_to_zero = false;  // final_norm_sq <= zero_tol
  // Stall: norm_sq > zero_tol while the gradient dropped below grad_tol, or
  // the line search can no longer decrease the norm in double precision
  // (see diagnostic).
  bool stalled = false;
  bool iteration_limit = false;
  double gradient_norm = 0.0;
  std::vector<double> norm_sq_trace;  // squared norm after each accepted step
  std::map<std::string, double> invariant_residuals;  // max |p(w_t) - p(v)|
  std::string diagnostic;  // set when the line search underflows
  // For torus actions with a strict destabilizing functional: a single
  // direction xi with <w_j, xi> >= 1 on supp v, so e^{it xi} v -> 0 along
  // one parameter subgroup. Convergence of the iterated flow only shows
  // 0 lies in the closure of the complexified orbit; this certificate is
  // the stronger single-direction statement when it exists.
  std::optional<std::vector<Rat>> single_direction;
  Eigen::VectorXcd final_point;
};

/// First variation of the squared norm along the complexified directions:
/// component k is d/dt |exp(i t X_k) w|^2 at t = 0 = 2 Re(i <X_k w, w>).
/// Torus actions use the equivalent per-coordinate weight formula
/// -2 sum_j w_j[k] |w_j|^2 directly.
Eigen::VectorXd moment_gradient(const CompactMatrixGroup& g, const Eigen::VectorXcd& w);

/// Norm-minimizing descent along the non-compact directions exp(i t xi),
/// xi in the Lie algebra, with Armijo backtracking. Reaching zero is
/// numerical evidence that v degenerates to 0 in the closure of the
/// complexified orbit; stalling at positive norm is evidence of a minimal
/// vector. The supplied invariants are polynomials constant on the
/// complexified orbit in exact arithmetic; their drift along the computed
/// trajectory is reported as a numerics diagnostic.
FlowReport flow_minimize(const CompactMatrixGroup& g, const Eigen::VectorXcd& v,
                         const std::vector<NamedPolynomial>& invariants = {},
                         const FlowParams& params = {});

}  // namespace orbitkit
