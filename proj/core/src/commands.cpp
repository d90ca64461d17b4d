#include "orbitkit/commands.hpp"

#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "orbitkit/fixtures.hpp"
#include "orbitkit/group_structure.hpp"
#include "orbitkit/haar.hpp"
#include "orbitkit/kempf_ness.hpp"
#include "orbitkit/measure_mult.hpp"
#include "orbitkit/report.hpp"
#include "orbitkit/torus_orbit.hpp"

namespace orbitkit {

namespace {

using nlohmann::json;

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json config_echo(const Config& cfg) {
  json obj = json::object();
  for (const std::string& s : cfg.sections()) {
    json sec = json::object();
    for (const auto& [key, value] : cfg.items(s)) sec[key] = value;
    obj[s] = std::move(sec);
  }
  return obj;
}

json complex_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

json cvec_json(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
  return a;
}

json dvec_json(const std::vector<double>& v) { return json(v); }

json int_rows_json(const std::vector<WeightVector>& rows) {
  json a = json::array();
  for (const WeightVector& r : rows) a.push_back(json(r));
  return a;
}

json lattice_json(const LatticeBasis& b) {
  json rows = json::array();
  for (const auto& row : b.rows) {
    json r = json::array();
    for (const mpz_class& x : row) r.push_back(x.get_str());
    rows.push_back(std::move(r));
  }
  return rows;
}

json rat_vec_json(const std::vector<Rat>& xs) {
  json a = json::array();
  for (const Rat& x : xs) a.push_back(rat_to_string(x));
  return a;
}

json orbit_point_json(const OrbitPoint& p) {
  json o;
  json approx = json::array();
  for (const std::complex<double>& z : p.approx) approx.push_back(complex_json(z));
  o["approx"] = std::move(approx);
  if (p.is_exact()) {
    json exact = json::array();
    for (const GaussRat& g : *p.exact)
      exact.push_back(json::array({rat_to_string(g.re), rat_to_string(g.im)}));
    o["exact"] = std::move(exact);
  } else {
    o["exact"] = nullptr;
  }
  return o;
}

json averages_json(const std::vector<MonomialStats>& averages) {
  json o = json::object();
  for (const MonomialStats& s : averages)
    o[exponent_key(s.exponent)] = json{{"estimate", complex_json(s.estimate)},
                                       {"std_error", s.std_error}};
  return o;
}

json envelope(const std::string& command, const json& cfg_echo, const json& verdicts,
              const Provenance& prov, const std::vector<std::string>& warnings) {
  json e;
  e["schema_version"] = kSchemaVersion;
  e["command"] = command;
  e["config"] = cfg_echo;
  e["provenance"] = json{{"seed", prov.seed},
                         {"samples", prov.samples},
                         {"threads", prov.threads},
                         {"wall_time_ms", prov.wall_time_ms},
                         {"approximate_haar", prov.approximate_haar}};
  e["verdicts"] = verdicts;
  e["warnings"] = warnings;
  return e;
}

void finalize(CommandResult& result, const json& env) {
  result.json_text = env.dump(2) + "\n";
}

template <class Fn>
CommandResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    CommandResult r;
    r.exit_code = 2;
    r.error = e.what();
    return r;
  } catch (const ResourceLimitError& e) {
    CommandResult r;
    r.exit_code = 2;
    r.error = e.what();
    return r;
  } catch (const std::invalid_argument& e) {
    CommandResult r;
    r.exit_code = 2;
    r.error = e.what();
    return r;
  } catch (const std::domain_error& e) {
    CommandResult r;
    r.exit_code = 2;
    r.error = e.what();
    return r;
  }
}

TorusAction torus_action_from_config(const Config& cfg) {
  const std::vector<WeightVector> weights = cfg.get_weights("group", "weights");
  return TorusAction::create(static_cast<int>(weights.front().size()), weights);
}

CompactMatrixGroup group_from_config(const Config& cfg) {
  const std::string kind = cfg.get_string("group", "kind");
  if (kind == "torus") return CompactMatrixGroup::torus_group(torus_action_from_config(cfg));

  RepKind rep = RepKind::defining;
  const std::string rep_name = cfg.get_string_or("group", "representation", "defining");
  if (rep_name == "adjoint")
    rep = RepKind::adjoint;
  else if (rep_name != "defining")
    throw ConfigError(cfg.source(), cfg.line_of("group", "representation"),
                      "unknown representation '" + rep_name + "'");

  if (kind == "custom") {
    const std::string path = cfg.get_string("group", "lie_basis_file");
    const int word_length = static_cast<int>(cfg.get_int_or("group", "word_length", 20));
    return CompactMatrixGroup::custom_group(parse_matrix_list(path), word_length);
  }

  const int size = static_cast<int>(cfg.get_int("group", "size"));
  if (kind == "unitary") return CompactMatrixGroup::unitary_group(size, rep);
  if (kind == "special_unitary") return CompactMatrixGroup::special_unitary_group(size, rep);
  if (kind == "special_orthogonal")
    return CompactMatrixGroup::special_orthogonal_group(size, rep);
  throw ConfigError(cfg.source(), cfg.line_of("group", "kind"),
                    "unknown group kind '" + kind + "'");
}

std::uint64_t pick_samples(const Config& cfg, const CliOverrides& ov) {
  if (ov.samples) return *ov.samples;
  return cfg.get_u64_or("run", "samples", 100000);
}

std::uint64_t pick_seed(const Config& cfg, const CliOverrides& ov) {
  if (ov.seed) return *ov.seed;
  return cfg.get_u64_or("run", "seed", 0);
}

int pick_degree_bound(const Config& cfg, const CliOverrides& ov, int fallback) {
  if (ov.degree_bound) return *ov.degree_bound;
  return static_cast<int>(cfg.get_int_or("run", "degree_bound", fallback));
}

/// tr(W^2) = sum_{r,c} W_rc W_cr over the flattened adjoint coordinates.
Polynomial adjoint_trace_form(int k) {
  Polynomial p(k * k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      std::vector<Int> e(static_cast<std::size_t>(k) * k, 0);
      e[static_cast<std::size_t>(r) * k + c] += 1;
      e[static_cast<std::size_t>(c) * k + r] += 1;
      p.add_term(e, 1.0);
    }
  return p;
}

}  // namespace

CommandResult run_torus_analyze(const Config& cfg, const CliOverrides& ov) {
  return guarded([&]() {
    Timer timer;
    const std::string kind = cfg.get_string_or("group", "kind", "torus");
    if (kind != "torus")
      throw ConfigError(cfg.source(), 0, "torus-analyze requires [group] kind = torus");
    const TorusAction action = torus_action_from_config(cfg);

    OrbitPoint v = cfg.get_bool_or("vector", "exact", true)
                       ? OrbitPoint::from_exact(cfg.get_exact_vector("vector", "v"))
                       : OrbitPoint::from_doubles([&]() {
                           const Eigen::VectorXcd raw = cfg.get_complex_vector("vector", "v");
                           return std::vector<std::complex<double>>(raw.data(),
                                                                    raw.data() + raw.size());
                         }());
    if (v.dim() != action.m())
      throw ConfigError(cfg.source(), cfg.line_of("vector", "v"),
                        "vector length does not match the number of weights");

    const FibrationReport rep = analyze(action, v);

    json verdict;
    verdict["antisymmetric"] = rep.antisymmetric;
    verdict["nilpotent"] = rep.nilpotent;
    verdict["spectrum_generators"] = int_rows_json(rep.spectrum.generators);
    verdict["zero_weight_present"] = rep.spectrum.zero_generator_present;
    verdict["lineality_rank"] = rep.lineality.rank();
    verdict["lineality_basis"] = lattice_json(rep.lineality);
    verdict["xi_star"] = rat_vec_json(rep.xi_star);
    verdict["v_tilde"] = orbit_point_json(rep.v_tilde);
    verdict["base_coords"] = json(rep.base_coords);
    verdict["fiber_coords"] = json(rep.fiber_coords);
    json relations = json::array();
    for (const HullRelation& r : rep.hull_relations)
      relations.push_back(json{{"a", json(r.first)}, {"b", json(r.second)}});
    verdict["hull_relations"] = std::move(relations);

    std::vector<std::string> warnings = rep.warnings;
    try {
      const NilconeCertificate nc = nilcone_member_exact(action, v);
      json nil;
      nil["member"] = nc.member;
      nil["functional"] = nc.functional ? rat_vec_json(*nc.functional) : json(nullptr);
      nil["invariant_monomial"] =
          nc.invariant_monomial ? json(*nc.invariant_monomial) : json(nullptr);
      verdict["nilcone"] = std::move(nil);
    } catch (const std::invalid_argument& e) {
      verdict["nilcone"] = json{{"refused", true}, {"reason", e.what()}};
      warnings.push_back(std::string("nilcone test refused: ") + e.what());
    }

    Provenance prov;
    prov.seed = pick_seed(cfg, ov);
    prov.samples = 0;  // exact analysis, no sampling
    prov.threads = env_thread_count();
    prov.wall_time_ms = timer.ms();

    CommandResult result;
    std::ostringstream summary;
    summary << "torus-analyze: antisymmetric=" << (rep.antisymmetric ? "true" : "false")
            << " nilpotent=" << (rep.nilpotent ? "true" : "false")
            << " lineality_rank=" << rep.lineality.rank()
            << " fiber_coords=" << rep.fiber_coords.size();
    result.summary = summary.str();
    finalize(result, envelope("torus-analyze", config_echo(cfg),
                              json{{"torus_orbit", verdict}}, prov, warnings));
    return result;
  });
}

CommandResult run_orbit_defect(const Config& cfg, const CliOverrides& ov) {
  return guarded([&]() {
    Timer timer;
    const CompactMatrixGroup group = group_from_config(cfg);
    const Eigen::VectorXcd v = cfg.get_complex_vector("vector", "v");
    const int degree_bound = pick_degree_bound(cfg, ov, 2);
    const std::uint64_t samples = pick_samples(cfg, ov);
    const std::uint64_t seed = pick_seed(cfg, ov);
    const bool force_mc = cfg.get_bool_or("run", "force_monte_carlo", false);
    const std::size_t cap =
        static_cast<std::size_t>(cfg.get_u64_or("run", "monomial_cap", 5000));
    const double consistent_max =
        cfg.get_double_or("run", "consistent_threshold", kDefectConsistentMax);
    const double refuted_min = cfg.get_double_or("run", "refuted_threshold", kDefectRefutedMin);

    const DefectReport defect = multiplicativity_defect(group, v, degree_bound, samples,
                                                        SamplerState{seed, 0}, cap, force_mc);
    const FixedPointReport fp = fixed_point_consistency(
        group, v, degree_bound, samples, SamplerState{seed, 1ULL << 40}, cap, force_mc);

    std::string verdict_name;
    if (defect.defect <= consistent_max)
      verdict_name = "antisymmetric-consistent";
    else if (defect.defect >= refuted_min)
      verdict_name = "refuted";
    else
      verdict_name = "inconclusive";

    json verdict;
    verdict["defect"] = defect.defect;
    verdict["defect_std_error"] = defect.defect_std_error;
    verdict["defect_pair"] = json{{"a", json(defect.pair_a)}, {"b", json(defect.pair_b)}};
    verdict["verdict"] = verdict_name;
    verdict["thresholds"] =
        json{{"consistent_max", consistent_max}, {"refuted_min", refuted_min}};
    verdict["samples"] = defect.samples;
    verdict["degree_bound"] = defect.degree_bound;
    verdict["exact"] = defect.exact;
    verdict["fixed_point"] = cvec_json(defect.fixed_point);
    verdict["fixed_point_std_error"] = dvec_json(defect.fixed_point_se);
    verdict["fixed_point_norm"] = defect.fixed_point.norm();
    verdict["fixed_point_max_residual"] = fp.max_residual;
    verdict["fixed_point_worst_exponent"] = exponent_key(fp.worst_exponent);
    verdict["averages"] = averages_json(defect.averages);

    std::vector<std::string> warnings;
    if (group.approximate_haar())
      warnings.push_back("custom subgroup sampler only approximates the invariant measure");

    Provenance prov;
    prov.seed = seed;
    prov.samples = defect.exact ? 0 : samples;
    prov.threads = env_thread_count();
    prov.approximate_haar = group.approximate_haar();
    prov.wall_time_ms = timer.ms();

    CommandResult result;
    std::ostringstream summary;
    summary << "orbit-defect: verdict=" << verdict_name << " defect=" << defect.defect
            << " fixed_point_norm=" << defect.fixed_point.norm()
            << (defect.exact ? " (exact torus averages)" : "");
    result.summary = summary.str();
    if (verdict_name == "inconclusive" && ov.strict) result.exit_code = 3;
    finalize(result, envelope("orbit-defect", config_echo(cfg),
                              json{{"measure_mult", verdict}}, prov, warnings));
    return result;
  });
}

CommandResult run_orbit_flow(const Config& cfg, const CliOverrides& ov) {
  return guarded([&]() {
    Timer timer;
    const CompactMatrixGroup group = group_from_config(cfg);
    const Eigen::VectorXcd v = cfg.get_complex_vector("vector", "v");

    FlowParams params;
    params.armijo_c = cfg.get_double_or("run", "armijo_c", params.armijo_c);
    params.shrink = cfg.get_double_or("run", "shrink", params.shrink);
    params.initial_step = cfg.get_double_or("run", "initial_step", params.initial_step);
    params.max_iterations =
        static_cast<int>(cfg.get_int_or("run", "max_iterations", params.max_iterations));
    params.zero_tol = cfg.get_double_or("run", "zero_tol", params.zero_tol);
    params.grad_tol = cfg.get_double_or("run", "grad_tol", params.grad_tol);

    std::vector<NamedPolynomial> invariants;
    if (cfg.get_bool_or("flow", "conserve_trace_form", false)) {
      if (group.rep != RepKind::adjoint)
        throw ConfigError(cfg.source(), cfg.line_of("flow", "conserve_trace_form"),
                          "trace form conservation requires the adjoint representation");
      invariants.push_back({"trace_form", adjoint_trace_form(group.element_size())});
    }

    const FlowReport flow = flow_minimize(group, v, invariants, params);

    std::string verdict_name;
    if (flow.converged_to_zero)
      verdict_name = "degenerates-to-zero";
    else if (flow.stalled)
      verdict_name = "minimal-vector";
    else
      verdict_name = "inconclusive";

    json verdict;
    verdict["initial_norm_sq"] = flow.initial_norm_sq;
    verdict["final_norm_sq"] = flow.final_norm_sq;
    verdict["iterations"] = flow.iterations;
    verdict["converged_to_zero"] = flow.converged_to_zero;
    verdict["stalled"] = flow.stalled;
    verdict["iteration_limit"] = flow.iteration_limit;
    verdict["gradient_norm"] = flow.gradient_norm;
    verdict["verdict"] = verdict_name;
    verdict["zero_tol"] = params.zero_tol;
    verdict["grad_tol"] = params.grad_tol;
    verdict["diagnostic"] = flow.diagnostic;
    verdict["invariant_residuals"] = json(flow.invariant_residuals);
    verdict["single_direction"] =
        flow.single_direction ? rat_vec_json(*flow.single_direction) : json(nullptr);
    verdict["norm_sq_trace"] = json(flow.norm_sq_trace);
    verdict["final_point"] = cvec_json(flow.final_point);

    std::vector<std::string> warnings;
    warnings.push_back(
        "reaching zero shows 0 in the closure of the complexified orbit; the "
        "single_direction certificate, when present, is the stronger one-parameter statement");
    if (group.approximate_haar())
      warnings.push_back("custom subgroup sampler only approximates the invariant measure");

    Provenance prov;
    prov.seed = pick_seed(cfg, ov);
    prov.samples = 0;  // deterministic descent, no sampling
    prov.threads = env_thread_count();
    prov.approximate_haar = group.approximate_haar();
    prov.wall_time_ms = timer.ms();

    CommandResult result;
    std::ostringstream summary;
    summary << "orbit-flow: verdict=" << verdict_name
            << " final_norm_sq=" << flow.final_norm_sq << " iterations=" << flow.iterations;
    result.summary = summary.str();
    if (verdict_name == "inconclusive" && ov.strict) result.exit_code = 3;
    finalize(result, envelope("orbit-flow", config_echo(cfg), json{{"kempf_ness", verdict}},
                              prov, warnings));
    return result;
  });
}

CommandResult run_group_check_f(const Config& cfg, const CliOverrides& ov) {
  return guarded([&]() {
    Timer timer;
    const std::string pair_name = cfg.get_string("normalizer", "pair");
    LieSubalgebraPair pair = [&]() {
      if (pair_name == "so3-so2")
        return LieSubalgebraPair::create(so3_basis(), so2_in_so3_basis());
      if (pair_name == "su2-su2") return LieSubalgebraPair::create(su2_basis(), su2_basis());
      if (pair_name == "torus-trivial") {
        const int n = static_cast<int>(cfg.get_int_or("normalizer", "torus_rank", 3));
        if (n < 1)
          throw ConfigError(cfg.source(), cfg.line_of("normalizer", "torus_rank"),
                            "torus rank must be positive");
        return LieSubalgebraPair::create(torus_algebra_basis(n), {});
      }
      if (pair_name == "custom") {
        std::vector<Eigen::MatrixXcd> g_basis =
            parse_matrix_list(cfg.get_string("normalizer", "g_basis_file"));
        std::vector<Eigen::MatrixXcd> h_basis;
        if (cfg.has("normalizer", "h_basis_file"))
          h_basis = parse_matrix_list(cfg.get_string("normalizer", "h_basis_file"));
        return LieSubalgebraPair::create(std::move(g_basis), std::move(h_basis));
      }
      throw ConfigError(cfg.source(), cfg.line_of("normalizer", "pair"),
                        "unknown pair '" + pair_name + "'");
    }();

    const NormalizerReport rep = normalizer_subalgebra(pair);

    json verdict;
    verdict["pair"] = pair_name;
    verdict["dim_g"] = rep.dim_g;
    verdict["dim_h"] = rep.dim_h;
    verdict["dim_normalizer"] = rep.dim_normalizer;
    verdict["condition_F_infinitesimal"] = rep.condition_f_infinitesimal;
    verdict["infinitesimal_only"] = rep.infinitesimal_only;
    verdict["max_residual"] = rep.max_residual;
    verdict["validation"] = json{{"h_in_g_residual", pair.h_in_g_residual},
                                 {"g_closure_residual", pair.g_closure_residual},
                                 {"h_closure_residual", pair.h_closure_residual}};

    std::vector<std::string> warnings;
    warnings.push_back(
        "condition (F) is checked at the Lie algebra level only; extra components of the "
        "normalizer are invisible here");

    Provenance prov;
    prov.seed = pick_seed(cfg, ov);
    prov.samples = 0;
    prov.threads = env_thread_count();
    prov.wall_time_ms = timer.ms();

    CommandResult result;
    std::ostringstream summary;
    summary << "group-check-f: pair=" << pair_name << " dim_g=" << rep.dim_g
            << " dim_h=" << rep.dim_h << " dim_normalizer=" << rep.dim_normalizer
            << " condition_F_infinitesimal="
            << (rep.condition_f_infinitesimal ? "true" : "false");
    result.summary = summary.str();
    finalize(result, envelope("group-check-f", config_echo(cfg),
                              json{{"group_structure", verdict}}, prov, warnings));
    return result;
  });
}

CommandResult run_group_gelfand(const Config& cfg, const CliOverrides& ov) {
  return guarded([&]() {
    Timer timer;
    const std::string family_name = cfg.get_string("gelfand", "family");
    const std::uint64_t samples = pick_samples(cfg, ov);
    const std::uint64_t seed = pick_seed(cfg, ov);
    const double threshold = cfg.get_double_or("gelfand", "threshold", 0.1);
    const bool check_irreducible = cfg.get_bool_or("gelfand", "check_irreducible", false);

    auto parse_spins = [&](const std::string& fallback) {
      const std::string text = cfg.get_string_or("gelfand", "spins", fallback);
      std::istringstream in(text);
      std::vector<int> spins;
      int j = 0;
      while (in >> j) {
        if (j < 0 || j > 50)
          throw ConfigError(cfg.source(), cfg.line_of("gelfand", "spins"),
                            "spins must lie in [0, 50]");
        spins.push_back(j);
      }
      if (!in.eof() || spins.empty())
        throw ConfigError(cfg.source(),
                          cfg.has("gelfand", "spins") ? cfg.line_of("gelfand", "spins") : 0,
                          "spins must be a space-separated list of integers");
      return spins;
    };

    std::vector<NamedCharacter> family;
    ElementSampler h_sampler;
    ElementSampler g_sampler;
    if (family_name == "so3-so2") {
      const int max_ell = static_cast<int>(cfg.get_int_or("gelfand", "max_ell", 4));
      if (max_ell < 0 || max_ell > 50)
        throw ConfigError(cfg.source(), cfg.line_of("gelfand", "max_ell"),
                          "max_ell must lie in [0, 50]");
      family = so3_harmonic_characters(max_ell);
      h_sampler = so2_in_so3_sampler();
      g_sampler = group_sampler(CompactMatrixGroup::special_orthogonal_group(3));
    } else if (family_name == "su2-center") {
      family = su2_spin_characters(parse_spins("1 2"));
      h_sampler = su2_center_sampler();
      g_sampler = group_sampler(CompactMatrixGroup::special_unitary_group(2));
    } else if (family_name == "su2-full") {
      family = su2_spin_characters(parse_spins("0 1 2"));
      h_sampler = group_sampler(CompactMatrixGroup::special_unitary_group(2));
      g_sampler = group_sampler(CompactMatrixGroup::special_unitary_group(2));
    } else {
      throw ConfigError(cfg.source(), cfg.line_of("gelfand", "family"),
                        "unknown family '" + family_name + "'");
    }

    const GelfandReport rep =
        gelfand_check(family, h_sampler, samples, threshold, SamplerState{seed, 0},
                      check_irreducible ? g_sampler : ElementSampler{});

    json entries = json::array();
    for (const GelfandEntry& e : rep.entries) {
      json entry;
      entry["name"] = e.name;
      entry["estimate"] = e.estimate;
      entry["std_error"] = e.std_error;
      entry["imag_residual"] = e.imag_residual;
      entry["violator"] = e.violator;
      entry["character_norm"] = e.character_norm ? json(*e.character_norm) : json(nullptr);
      entries.push_back(std::move(entry));
    }

    json verdict;
    verdict["family"] = family_name;
    verdict["multiplicity_free"] = rep.multiplicity_free;
    verdict["threshold"] = rep.threshold;
    verdict["samples"] = rep.samples;
    verdict["entries"] = std::move(entries);
    verdict["violators"] = json(rep.violators);

    std::vector<std::string> warnings = rep.warnings;
    warnings.push_back("irreducibility of the supplied character family is trusted");

    Provenance prov;
    prov.seed = seed;
    prov.samples = samples;
    prov.threads = env_thread_count();
    prov.wall_time_ms = timer.ms();

    CommandResult result;
    std::ostringstream summary;
    summary << "group-gelfand: family=" << family_name << " multiplicity_free="
            << (rep.multiplicity_free ? "true" : "false") << " violators=" << rep.violators.size();
    result.summary = summary.str();
    finalize(result, envelope("group-gelfand", config_echo(cfg),
                              json{{"group_structure", verdict}}, prov, warnings));
    return result;
  });
}

CommandResult run_fixtures(const CliOverrides& ov) {
  return guarded([&]() {
    Timer timer;
    const std::uint64_t samples = ov.samples ? *ov.samples : 100000;
    const std::uint64_t seed = ov.seed ? *ov.seed : 0;

    const std::vector<FixtureOutcome> outcomes =
        run_fixture_gallery(samples, SamplerState{seed, 0});
    bool all_match = true;
    json results = json::array();
    std::ostringstream summary;
    summary << "fixtures: gallery of " << outcomes.size() << " examples\n";
    for (const FixtureOutcome& o : outcomes) {
      all_match = all_match && o.match;
      results.push_back(json{{"name", o.name}, {"match", o.match}, {"detail", o.detail}});
      summary << (o.match ? "  [ok]       " : "  [MISMATCH] ") << o.name << ": " << o.detail
              << "\n";
    }
    summary << (all_match ? "all fixtures match their expected verdicts"
                          : "FIXTURE MISMATCH: see details above");

    json verdict;
    verdict["all_match"] = all_match;
    verdict["results"] = std::move(results);

    Provenance prov;
    prov.seed = seed;
    prov.samples = samples;
    prov.threads = env_thread_count();
    prov.wall_time_ms = timer.ms();

    CommandResult result;
    result.summary = summary.str();
    result.exit_code = all_match ? 0 : 1;
    finalize(result, envelope("fixtures", json::object(), json{{"fixtures", verdict}}, prov,
                              {}));
    return result;
  });
}

}  // namespace orbitkit
