// Acceptance gate: one [PASS]/[FAIL] line per criterion. Every criterion
// runs even after earlier failures; the exit code is the failure count.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbitkit/fixtures.hpp"
#include "orbitkit/group_structure.hpp"
#include "orbitkit/kempf_ness.hpp"
#include "orbitkit/lattice_cone.hpp"
#include "orbitkit/measure_mult.hpp"
#include "orbitkit/torus_orbit.hpp"

using namespace orbitkit;
using cd = std::complex<double>;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Failure(msg);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

/// All exponent vectors over `vars` variables of total degree <= bound.
std::vector<std::vector<Int>> exponents_up_to(int vars, int bound) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(vars, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == vars) {
      out.push_back(cur);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      cur[pos] = d;
      rec(pos + 1, left - d);
    }
    cur[pos] = 0;
  };
  rec(0, bound);
  return out;
}

bool support_inside(const std::vector<Int>& c, const std::vector<int>& support,
                    int dim) {
  std::vector<bool> in(dim, false);
  for (int j : support) in[j] = true;
  for (int j = 0; j < dim; ++j)
    if (c[j] > 0 && !in[j]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// 1. Exact antisymmetry test against the brute-force enumeration oracle.

std::string criterion_pointedness_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(9001);
  std::uniform_int_distribution<int> entry(-5, 5);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int count = 1 + static_cast<int>(rng() % 6);
    std::vector<WeightVector> gens;
    Int max_entry = 1;
    for (int i = 0; i < count; ++i) {
      WeightVector g(n);
      for (auto& x : g) {
        x = entry(rng);
        max_entry = std::max(max_entry, std::abs(x));
      }
      gens.push_back(std::move(g));
    }
    const auto s = WeightSemigroup::from_generators(n, gens);
    const bool fast = is_antisymmetric_semigroup(s);

    const auto enumerated = semigroup_enumerate(s, 4 * max_entry, 5'000'000);
    bool oracle = true;
    for (std::size_t i = 0; i < enumerated.size() && oracle; ++i) {
      const WeightVector w = enumerated.at(i);
      bool zero = true;
      for (Int x : w) zero &= (x == 0);
      if (zero) continue;
      WeightVector neg(w.size());
      for (std::size_t j = 0; j < w.size(); ++j) neg[j] = -w[j];
      if (enumerated.contains(neg)) oracle = false;
    }
    require(fast == oracle, "disagreement on trial " + std::to_string(trial) +
                                " (exact=" + std::to_string(fast) +
                                ", oracle=" + std::to_string(oracle) + ")");
    ++checked;
  }
  const double dt = seconds_since(t0);
  require(dt <= 60.0, "oracle comparison took " + fmt(dt) + "s (budget 60s)");
  return "100/100 random weight systems agree with the enumeration oracle (" +
         fmt(dt) + "s)";
}

// ---------------------------------------------------------------------------
// 2. Numeric defect verdict vs exact verdict on the torus gallery.

std::string criterion_defect_matches_exact() {
  const auto fixtures = torus_fixture_gallery();
  int matched = 0, total = 0;
  for (const auto& f : fixtures) {
    ++total;
    const auto report = analyze(f.action, OrbitPoint::from_exact(f.v));
    const auto g = CompactMatrixGroup::torus_group(f.action);
    const auto defect = multiplicativity_defect(g, to_vector(f.v), 2, 100000,
                                                SamplerState{2100, 0});
    std::string verdict = "inconclusive";
    if (defect.defect <= kDefectConsistentMax) verdict = "antisymmetric-consistent";
    else if (defect.defect >= kDefectRefutedMin) verdict = "refuted";
    const std::string expected =
        report.antisymmetric ? "antisymmetric-consistent" : "refuted";
    require(verdict == expected, f.name + ": numeric verdict '" + verdict +
                                     "' but exact analysis says '" + expected + "'");
    ++matched;
  }
  require(total == 5, "expected five torus fixtures, found " + std::to_string(total));
  return std::to_string(matched) + "/" + std::to_string(total) +
         " torus fixtures: numeric defect verdict equals the exact verdict";
}

// ---------------------------------------------------------------------------
// 3. The sphere orbit is multiplicative at 1e5 samples.

std::string criterion_sphere_multiplicative() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = multiplicativity_defect(sphere_fixture_group(),
                                           sphere_fixture_vector(), 3, 100000,
                                           SamplerState{1400, 0});
  require(rep.defect <= 5e-3,
          "defect " + fmt(rep.defect) + " exceeds 5e-3");
  const double fp = rep.fixed_point.norm();
  require(fp <= 5e-3, "fixed point norm " + fmt(fp) + " exceeds 5e-3");
  const double dt = seconds_since(t0);
  require(dt <= 30.0, "took " + fmt(dt) + "s (budget 30s)");
  return "defect " + fmt(rep.defect) + ", fixed-point norm " + fmt(fp) + " (" +
         fmt(dt) + "s)";
}

// ---------------------------------------------------------------------------
// 4. The adjoint orbit refutes multiplicativity via its quadratic invariant.

std::string criterion_adjoint_counterexample() {
  const auto g = su2_adjoint_fixture_group();
  const Eigen::VectorXcd v = su2_adjoint_fixture_vector();
  const auto nil = nilcone_test_numeric(g, v, 2, 100000, 5e-3, SamplerState{1500, 0});

  cd combo(0.0, 0.0);
  int found = 0;
  for (const auto& s : nil.averages) {
    if (s.exponent == std::vector<Int>{2, 0, 0, 0} ||
        s.exponent == std::vector<Int>{0, 0, 0, 2}) {
      combo += s.estimate;
      ++found;
    } else if (s.exponent == std::vector<Int>{0, 1, 1, 0}) {
      combo += 2.0 * s.estimate;
      ++found;
    }
  }
  require(found == 3, "quadratic invariant terms missing from the average table");
  require(std::abs(combo - cd(-2.0, 0.0)) <= 0.02,
          "invariant average " + fmt(combo.real()) + " not within 0.02 of -2");
  require(!nil.consistent, "membership test unexpectedly consistent");

  const auto defect =
      multiplicativity_defect(g, v, 2, 100000, SamplerState{1501, 0});
  require(defect.defect >= kDefectRefutedMin,
          "defect " + fmt(defect.defect) + " below the refutation threshold");
  return "invariant average " + fmt(combo.real()) + ", defect " +
         fmt(defect.defect);
}

// ---------------------------------------------------------------------------
// 5. Flow verdicts agree with exact membership; the adjoint flow stalls.

std::string criterion_flow_agreement() {
  std::mt19937_64 rng(1600);
  std::uniform_int_distribution<int> wcoef(-3, 3);
  int conclusive = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const int m = 2 + static_cast<int>(rng() % 3);
    std::vector<WeightVector> rows;
    for (int j = 0; j < m; ++j) {
      WeightVector row(n);
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
    for (int j = 0; j < m; ++j) {
      const Int re = static_cast<Int>(rng() % 4);
      coords[j] = GaussRat(Rat(static_cast<long>(re)), Rat(0));
      w(j) = cd(static_cast<double>(re), 0.0);
    }
    const auto cert = nilcone_member_exact(action, OrbitPoint::from_exact(coords));
    const auto flow = flow_minimize(CompactMatrixGroup::torus_group(action), w);
    if (flow.iteration_limit) continue;
    ++conclusive;
    if (cert.member)
      require(flow.converged_to_zero,
              "trial " + std::to_string(trial) + ": member did not flow to zero");
    else
      require(flow.stalled,
              "trial " + std::to_string(trial) + ": non-member did not stall");
  }
  require(conclusive >= 45, "only " + std::to_string(conclusive) +
                                "/50 flows conclusive within the iteration budget");

  const std::vector<NamedPolynomial> invariants = {{"trace_form", su2_trace_form()}};
  const auto flow = flow_minimize(su2_adjoint_fixture_group(),
                                  su2_adjoint_fixture_vector(), invariants);
  require(flow.stalled, "adjoint flow did not stall");
  require(flow.final_norm_sq >= 2.0 - 1e-6,
          "final squared norm " + fmt(flow.final_norm_sq) + " below 2 - 1e-6");
  require(flow.invariant_residuals.at("trace_form") <= 1e-6,
          "trace form drifted by " + fmt(flow.invariant_residuals.at("trace_form")));
  return std::to_string(conclusive) +
         "/50 conclusive, all agree; adjoint flow stalls at norm^2 " +
         fmt(flow.final_norm_sq);
}

// ---------------------------------------------------------------------------
// 6. Exact averaging identities on the torus gallery.

std::string criterion_exact_average_identities() {
  const auto fixtures = torus_fixture_gallery();
  std::mt19937_64 rng(1700);
  long monomials_checked = 0, pairs_checked = 0;
  for (const auto& f : fixtures) {
    const OrbitPoint v = OrbitPoint::from_exact(f.v);
    const auto r = analyze(f.action, v);
    const int m = f.action.m();
    const GaussRat zero;

    // Exact orbit average of every monomial equals the monomial at v_tilde
    // on the antisymmetric fixtures.
    if (r.antisymmetric) {
      for (const auto& c : exponents_up_to(m, 6)) {
        std::vector<Int> total(f.action.n, 0);
        for (int j = 0; j < m; ++j)
          for (int d = 0; d < f.action.n; ++d) total[d] += c[j] * f.action.weights[j][d];
        bool weight_zero = true;
        for (Int x : total) weight_zero &= (x == 0);
        const GaussRat mu = weight_zero ? monomial_eval_exact(v, c) : zero;
        require(mu == monomial_eval_exact(r.v_tilde, c),
                f.name + ": orbit average of " + exponent_key(c) +
                    " differs from the value at v~");
        ++monomials_checked;
      }
    }

    // Fiber averaging sends z^c to its value at v_tilde on every fixture.
    for (const auto& c : exponents_up_to(m, 6)) {
      if (!support_inside(c, r.v.support(), m)) continue;
      require(fiber_average_exact(r, c) == monomial_eval_exact(r.v_tilde, c),
              f.name + ": fiber average of " + exponent_key(c) + " is off");
      ++monomials_checked;
    }

    // The averaging map is multiplicative on monomials (image nonzero rules).
    const auto small = exponents_up_to(m, 4);
    for (const auto& a : small) {
      if (!support_inside(a, r.v.support(), m)) continue;
      for (const auto& b : small) {
        if (!support_inside(b, r.v.support(), m)) continue;
        std::vector<Int> ab(m);
        for (int j = 0; j < m; ++j) ab[j] = a[j] + b[j];
        const auto ia = alpha_on_monomial(r, a);
        const auto ib = alpha_on_monomial(r, b);
        const auto iab = alpha_on_monomial(r, ab);
        if (!ia.zero && !ib.zero) {
          require(!iab.zero, f.name + ": product image of " + exponent_key(a) +
                                 " and " + exponent_key(b) + " collapsed to zero");
          require(iab.exponent == ab, f.name + ": product image has wrong exponent");
        } else {
          require(iab.zero, f.name + ": image of " + exponent_key(ab) +
                                " should vanish with its factor");
        }
        ++pairs_checked;
      }
    }

    // Inner hull samples stay inside the outer hull test.
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    std::uniform_real_distribution<double> scale(0.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> theta(f.action.n), xi(f.action.n);
      const double u = scale(rng);
      for (int d = 0; d < f.action.n; ++d) {
        theta[d] = angle(rng);
        xi[d] = u * to_double(r.xi_star[d]);
      }
      const OrbitPoint z = hull_inner_sample(f.action, v, theta, xi);
      const auto verdict = hull_outer_membership(f.action, v, z, 1e-10);
      require(verdict.member, f.name + ": inner sample " + std::to_string(i) +
                                  " rejected by the outer test (" +
                                  verdict.violated_constraint + ")");
    }
  }
  return std::to_string(monomials_checked) + " exact averages, " +
         std::to_string(pairs_checked) + " homomorphism pairs, 5000 hull samples";
}

// ---------------------------------------------------------------------------
// 7. Infinitesimal finiteness condition on the normalizer fixtures.

std::string criterion_normalizer() {
  const auto so = normalizer_subalgebra(
      LieSubalgebraPair::create(so3_basis(), so2_in_so3_basis()));
  require(so.condition_f_infinitesimal, "so(3)/so(2) failed the condition");
  require(so.max_residual <= 1e-8, "so(3)/so(2) residual too large");

  const auto su = normalizer_subalgebra(
      LieSubalgebraPair::create(su2_basis(), su2_basis()));
  require(su.condition_f_infinitesimal, "su(2)/su(2) failed the condition");
  require(su.max_residual <= 1e-8, "su(2)/su(2) residual too large");

  const auto torus = normalizer_subalgebra(
      LieSubalgebraPair::create(torus_algebra_basis(3), {}));
  require(!torus.condition_f_infinitesimal,
          "the trivial subalgebra of a torus passed the condition");
  return "so(3)/so(2) yes, su(2)/su(2) yes, torus/trivial no";
}

// ---------------------------------------------------------------------------
// 8. Multiplicity estimates on the two classical pairs.

std::string criterion_multiplicities() {
  const auto rep = gelfand_check(so3_harmonic_characters(4), so2_in_so3_sampler(),
                                 100000, 0.05, SamplerState{1800, 0});
  require(rep.entries.size() == 5, "expected five harmonic characters");
  double worst = 0.0;
  for (const auto& e : rep.entries) {
    worst = std::max(worst, std::abs(e.estimate - 1.0));
    require(std::abs(e.estimate - 1.0) <= 0.05,
            e.name + ": estimate " + fmt(e.estimate) + " not within 0.05 of 1");
  }
  require(rep.multiplicity_free, "harmonic family not recognized as multiplicity free");

  const auto spin = su2_spin_characters({1});
  const auto est = fixed_multiplicity(spin[0].character, su2_center_sampler(), 100000,
                                      SamplerState{1801, 0});
  require(std::abs(est.estimate - 3.0) <= 0.1,
          "spin=1 center multiplicity " + fmt(est.estimate) + " not within 0.1 of 3");
  return "harmonics within " + fmt(worst) + " of 1; center multiplicity " +
         fmt(est.estimate);
}

// ---------------------------------------------------------------------------
// 9. CLI runs are reproducible bit for bit (modulo wall time).

std::string criterion_cli_reproducible() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "orbitkit_acceptance";
  fs::create_directories(dir);

  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name);
    out << text;
    return (dir / name).string();
  };
  const std::string sphere = write("sphere.cfg",
                                   "[group]\nkind = unitary\nsize = 2\n"
                                   "[vector]\nv = (1,0) (0,0)\nexact = false\n");
  const std::string torus = write("torus.cfg",
                                  "[group]\nkind = torus\nweights = (1,0) (-1,0) (0,1)\n"
                                  "[vector]\nv = (1,0) (1,0) (1,0)\n");
  const std::string norm = write("norm.cfg", "[normalizer]\npair = so3-so2\n");
  const std::string gelf = write("gelf.cfg",
                                 "[gelfand]\nfamily = so3-so2\nmax_ell = 2\n"
                                 "[run]\nsamples = 20000\nseed = 3\n");

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"torus-analyze", torus},
      {"orbit-defect --seed 7 --samples 20000", sphere},
      {"orbit-flow", sphere},
      {"group-check-f", norm},
      {"group-gelfand", gelf},
  };
  int compared = 0;
  for (const auto& [args, cfgpath] : runs) {
    nlohmann::json docs[2];
    for (int i = 0; i < 2; ++i) {
      const std::string out = (dir / ("out" + std::to_string(i) + ".json")).string();
      const std::string cmd = std::string(ORBITKIT_CLI_PATH) + " " + args + " -c " +
                              cfgpath + " --json " + out + " > /dev/null";
      require(std::system(cmd.c_str()) == 0, "command failed: " + cmd);
      std::ifstream in(out);
      require(static_cast<bool>(in), "missing report file " + out);
      docs[i] = nlohmann::json::parse(in);
      docs[i]["provenance"].erase("wall_time_ms");
    }
    require(docs[0] == docs[1],
            "reports differ between identical runs of '" + args + "'");
    ++compared;
  }
  return std::to_string(compared) + " commands re-run with identical output";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::string (*)()>> criteria = {
      {"exact antisymmetry vs enumeration oracle", criterion_pointedness_oracle},
      {"numeric defect verdict matches exact verdict", criterion_defect_matches_exact},
      {"sphere orbit multiplicative at 1e5 samples", criterion_sphere_multiplicative},
      {"adjoint orbit refuted via its invariant", criterion_adjoint_counterexample},
      {"flow verdicts agree with exact membership", criterion_flow_agreement},
      {"exact averaging identities on the gallery", criterion_exact_average_identities},
      {"normalizer finiteness condition", criterion_normalizer},
      {"multiplicity estimates on classical pairs", criterion_multiplicities},
      {"CLI reports reproducible", criterion_cli_reproducible},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, fn] = criteria[i];
    std::string line;
    try {
      const std::string detail = fn();
      line = "[PASS] criterion " + std::to_string(i + 1) + ": " + name;
      if (!detail.empty()) line += " — " + detail;
    } catch (const std::exception& e) {
      ++failures;
      line = "[FAIL] criterion " + std::to_string(i + 1) + ": " + name + " — " +
             e.what();
    }
    std::cout << line << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures;
}
