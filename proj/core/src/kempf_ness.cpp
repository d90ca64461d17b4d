#include "orbitkit/kempf_ness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "orbitkit/lattice_cone.hpp"
#include "orbitkit/torus_orbit.hpp"

namespace orbitkit {

namespace {

constexpr double kMinStep = 1e-18;
constexpr double kMaxStep = 1e9;

// Near a positive minimum the achievable decrease per step is ~g^2/Hessian,
// which drops below one ulp of the norm while the gradient is still around
// sqrt(eps)*norm_sq — often above grad_tol. Accepted steps then dither on
// rounding noise. Treat a run of consecutive sub-ulp decreases as a stall.
constexpr int kNoProgressWindow = 20;
constexpr double kNoProgressRel = 64.0 * std::numeric_limits<double>::epsilon();

Eigen::VectorXd torus_gradient(const TorusAction& a, const Eigen::VectorXcd& w) {
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(a.n);
  for (int j = 0; j < a.m(); ++j) {
    const double mod2 = std::norm(w(j));
    for (int d = 0; d < a.n; ++d)
      grad(d) -= 2.0 * static_cast<double>(a.weights[j][d]) * mod2;
  }
  return grad;
}

/// exp(i t xi) on a torus orbit scales coordinate j by exp(-t <w_j, xi>).
Eigen::VectorXcd torus_step(const TorusAction& a, const Eigen::VectorXd& xi, double t,
                            const Eigen::VectorXcd& w) {
  Eigen::VectorXcd out = w;
  for (int j = 0; j < a.m(); ++j) {
    double pairing = 0.0;
    for (int d = 0; d < a.n; ++d) pairing += static_cast<double>(a.weights[j][d]) * xi(d);
    out(j) *= std::exp(-t * pairing);
  }
  return out;
}

}  // namespace

Eigen::VectorXd moment_gradient(const CompactMatrixGroup& g, const Eigen::VectorXcd& w) {
  if (w.size() != g.ambient_dim())
    throw std::invalid_argument("vector dimension does not match the group action");
  if (g.kind == GroupKind::torus) return torus_gradient(*g.action, w);

  const std::vector<Eigen::MatrixXcd> basis = g.lie_basis();
  if (basis.empty()) throw std::invalid_argument("group provides no Lie algebra basis");
  Eigen::VectorXd grad(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Eigen::VectorXcd aw = act_lie(g, basis[k], w);
    double s = 0.0;
    for (Eigen::Index j = 0; j < w.size(); ++j)
      s += (std::complex<double>(0.0, 1.0) * aw(j) * std::conj(w(j))).real();
    grad(static_cast<Eigen::Index>(k)) = 2.0 * s;
  }
  return grad;
}

FlowReport flow_minimize(const CompactMatrixGroup& g, const Eigen::VectorXcd& v,
                         const std::vector<NamedPolynomial>& invariants,
                         const FlowParams& params) {
  if (v.size() != g.ambient_dim())
    throw std::invalid_argument("vector dimension does not match the group action");
  if (params.max_iterations < 1)
    throw std::invalid_argument("iteration limit must be at least 1");
  for (const NamedPolynomial& inv : invariants)
    if (inv.p.vars != g.ambient_dim())
      throw std::invalid_argument("invariant variable count does not match the action");

  FlowReport rep;
  const bool torus = g.kind == GroupKind::torus;
  std::vector<Eigen::MatrixXcd> basis;
  if (!torus) {
    basis = g.lie_basis();
    if (basis.empty()) throw std::invalid_argument("group provides no Lie algebra basis");
  }

  if (torus && v.squaredNorm() > 0.0) {
    const WeightSemigroup spec = orbit_spectrum(
        *g.action, OrbitPoint::from_doubles({v.data(), v.data() + v.size()}));
    rep.single_direction = strict_positive_functional(spec);
  }

  std::vector<std::complex<double>> base_values;
  for (const NamedPolynomial& inv : invariants) {
    base_values.push_back(inv.p.eval(v));
    rep.invariant_residuals[inv.name] = 0.0;
  }

  Eigen::VectorXcd w = v;
  double f = w.squaredNorm();
  rep.initial_norm_sq = f;
  rep.norm_sq_trace.push_back(f);
  double step = params.initial_step;
  int no_progress = 0;

  for (;;) {
    if (f <= params.zero_tol) {
      rep.converged_to_zero = true;
      break;
    }
    if (rep.iterations >= params.max_iterations) {
      rep.iteration_limit = true;
      break;
    }
    const Eigen::VectorXd grad = moment_gradient(g, w);
    const double gnorm = grad.norm();
    rep.gradient_norm = gnorm;
    if (gnorm <= params.grad_tol) {
      rep.stalled = true;
      break;
    }
    const Eigen::VectorXd dir = -grad / gnorm;  // unit descent direction
    Eigen::MatrixXcd X;
    if (!torus) {
      X = Eigen::MatrixXcd::Zero(basis[0].rows(), basis[0].cols());
      for (std::size_t k = 0; k < basis.size(); ++k)
        X += dir(static_cast<Eigen::Index>(k)) * basis[k];
    }

    double t = step;
    bool accepted = false;
    Eigen::VectorXcd w_t;
    double f_t = f;
    while (t >= kMinStep) {
      w_t = torus ? torus_step(*g.action, dir, t, w) : act_exp(g, X, {0.0, t}, w);
      f_t = w_t.squaredNorm();
      // Armijo: the directional derivative along dir is -gnorm.
      if (f_t <= f - params.armijo_c * t * gnorm) {
        accepted = true;
        break;
      }
      t *= params.shrink;
    }
    if (!accepted) {
      rep.stalled = true;
      rep.diagnostic = "line search underflow: no decrease above step 1e-18";
      break;
    }
    no_progress = (f - f_t <= kNoProgressRel * f) ? no_progress + 1 : 0;
    w = w_t;
    f = f_t;
    step = std::min(t * 2.0, kMaxStep);
    ++rep.iterations;
    rep.norm_sq_trace.push_back(f);
    for (std::size_t i = 0; i < invariants.size(); ++i) {
      const double r = std::abs(invariants[i].p.eval(w) - base_values[i]);
      double& slot = rep.invariant_residuals[invariants[i].name];
      if (r > slot) slot = r;
    }
    if (no_progress >= kNoProgressWindow && f > params.zero_tol) {
      rep.stalled = true;
      rep.diagnostic = "no numerical progress: decreases stayed below machine precision";
      break;
    }
  }

  rep.final_norm_sq = f;
  rep.final_point = w;
  rep.gradient_norm = moment_gradient(g, w).norm();
  return rep;
}

}  // namespace orbitkit
