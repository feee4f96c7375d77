#pragma once

// Scenario-driven pipeline: generate the class, adapt from samples, meter
// both solvers (or compute the closed forms in analytic mode), audit the
// catalyst conditions, and assemble the energy and law reports.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catalab/adaptation.hpp"
#include "catalab/laws.hpp"
#include "catalab/serialize.hpp"
#include "catalab/solvers.hpp"
#include "catalab/substrate.hpp"
#include "catalab/thermo.hpp"

namespace catalab {

inline constexpr int kScenarioSchemaVersion = 1;
inline constexpr const char* kVersionString = "catalab 0.1.0";

struct Scenario {
  std::string name;
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t class_seed = 0;
  std::size_t m = 0;
  std::uint64_t adapt_seed = 0;
  double temperature_kelvin = 300.0;
  double overhead_exec = 1.0;
  double overhead_adapt = 1.0;
  double tau_s = 1.0;
  LawConfig law;
  std::size_t instances = 1;
  std::vector<std::size_t> ladder;
  std::uint64_t bench_seed = 0;
  bool analytic_only = false;
  SolverKind solver = SolverKind::catalytic;
  std::size_t cache_entries = 0;
  IntelligenceScore intelligence = IntelligenceScore::unit();

  PhysicalConfig physical() const {
    PhysicalConfig cfg;
    cfg.temperature_kelvin = temperature_kelvin;
    cfg.overhead_exec = overhead_exec;
    cfg.overhead_adapt = overhead_adapt;
    return cfg;
  }
};

namespace detail {

inline void ensure_keys(const Json& j, std::initializer_list<const char*> keys,
                        const std::string& where) {
  if (!j.is_object()) throw error("scenario: " + where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys)
      if (key == k) known = true;
    if (!known)
      throw error("scenario: unknown field '" + key + "' in " + where);
  }
}

}  // namespace detail

/// Strict scenario parser: unknown fields are errors, the schema is
/// versioned, and defaults are resolved here so the echoed configuration is
/// complete.
inline Scenario scenario_from_json(const Json& j) {
  detail::ensure_keys(j,
                      {"schema_version", "name", "class", "adaptation",
                       "physics", "law", "benchmark", "mode", "intelligence"},
                      "scenario");
  if (!j.contains("schema_version") ||
      j.at("schema_version").get<int>() != kScenarioSchemaVersion)
    throw error("scenario: missing or unsupported schema_version");

  Scenario sc;
  sc.name = j.at("name").get<std::string>();

  const Json& cls = j.at("class");
  detail::ensure_keys(cls, {"n", "d", "seed"}, "class");
  sc.n = cls.at("n").get<std::size_t>();
  sc.d = cls.at("d").get<std::size_t>();
  sc.class_seed = cls.at("seed").get<std::uint64_t>();

  const Json& ad = j.at("adaptation");
  detail::ensure_keys(ad, {"m", "seed"}, "adaptation");
  sc.m = ad.at("m").get<std::size_t>();
  sc.adapt_seed = ad.at("seed").get<std::uint64_t>();

  const Json& ph = j.at("physics");
  detail::ensure_keys(
      ph, {"temperature_kelvin", "overhead_exec", "overhead_adapt", "tau_s"},
      "physics");
  sc.temperature_kelvin = ph.at("temperature_kelvin").get<double>();
  sc.overhead_exec = ph.at("overhead_exec").get<double>();
  sc.overhead_adapt = ph.at("overhead_adapt").get<double>();
  sc.tau_s = ph.value("tau_s", 1.0);

  sc.law = LawConfig::for_dimension(sc.n);
  if (j.contains("law")) {
    const Json& lw = j.at("law");
    detail::ensure_keys(
        lw, {"c_u_bits", "eta_bits", "delta", "header_overhead_bits"}, "law");
    sc.law.c_u_bits = lw.value("c_u_bits", sc.law.c_u_bits);
    sc.law.eta_threshold_bits = lw.value("eta_bits", sc.law.eta_threshold_bits);
    sc.law.delta_threshold = lw.value("delta", sc.law.delta_threshold);
    sc.law.header_overhead_bits =
        lw.value("header_overhead_bits", sc.law.header_overhead_bits);
  }

  const Json& bm = j.at("benchmark");
  detail::ensure_keys(bm, {"instances", "ladder", "seed"}, "benchmark");
  sc.instances = bm.at("instances").get<std::size_t>();
  sc.ladder = bm.at("ladder").get<std::vector<std::size_t>>();
  sc.bench_seed = bm.at("seed").get<std::uint64_t>();

  if (j.contains("mode")) {
    const Json& md = j.at("mode");
    detail::ensure_keys(md, {"analytic_only", "solver", "cache_entries"},
                        "mode");
    sc.analytic_only = md.value("analytic_only", false);
    const std::string solver = md.value("solver", std::string("catalytic"));
    if (solver == "catalytic")
      sc.solver = SolverKind::catalytic;
    else if (solver == "cached")
      sc.solver = SolverKind::cached;
    else
      throw error("scenario: unknown solver '" + solver + "'");
    sc.cache_entries = md.value("cache_entries", std::size_t{0});
  }

  if (j.contains("intelligence")) {
    const Json& in = j.at("intelligence");
    detail::ensure_keys(in, {"weights", "proficiencies"}, "intelligence");
    const auto w = in.at("weights").get<std::vector<double>>();
    const auto p = in.at("proficiencies").get<std::vector<double>>();
    if (w.size() != p.size())
      throw error("scenario: weights/proficiencies length mismatch");
    std::vector<std::pair<double, double>> terms;
    for (std::size_t i = 0; i < w.size(); ++i) terms.emplace_back(w[i], p[i]);
    sc.intelligence = IntelligenceScore::make(std::move(terms));
  }

  // guards
  if (sc.d > sc.n) throw error("scenario: d exceeds n");
  if (sc.law.c_u_bits < 0 || sc.law.eta_threshold_bits < 0 ||
      sc.law.delta_threshold < 0 || sc.law.header_overhead_bits < 0)
    throw error("scenario: law thresholds must be non-negative");
  if (sc.n > kEnumerationGuard && !sc.analytic_only)
    throw guard_error("scenario: n > " +
                      std::to_string(kEnumerationGuard) +
                      " requires analytic_only mode");
  if (!(sc.temperature_kelvin > 0))
    throw error("scenario: temperature must be positive");
  if (sc.overhead_exec < 1.0 || sc.overhead_adapt < 1.0)
    throw error("scenario: overhead factors must be >= 1");
  if (!(sc.tau_s > 0)) throw error("scenario: tau must be positive");
  if (sc.instances == 0 && !sc.analytic_only)
    throw error("scenario: desk-scale runs need at least one instance");
  if (sc.solver == SolverKind::cached &&
      (sc.analytic_only || sc.cache_entries == 0))
    throw error("scenario: cached mode needs desk scale and cache_entries");
  for (std::size_t i = 0; i + 1 < sc.ladder.size(); ++i)
    if (sc.ladder[i] >= sc.ladder[i + 1])
      throw error("scenario: ladder sizes must be strictly increasing");
  return sc;
}

inline Json to_json(const Scenario& sc) {
  Json j;
  j["schema_version"] = kScenarioSchemaVersion;
  j["name"] = sc.name;
  j["class"] = Json{{"n", sc.n}, {"d", sc.d}, {"seed", sc.class_seed}};
  j["adaptation"] = Json{{"m", sc.m}, {"seed", sc.adapt_seed}};
  j["physics"] = Json{{"temperature_kelvin", sc.temperature_kelvin},
                      {"overhead_exec", sc.overhead_exec},
                      {"overhead_adapt", sc.overhead_adapt},
                      {"tau_s", sc.tau_s}};
  j["law"] = Json{{"c_u_bits", sc.law.c_u_bits},
                  {"eta_bits", sc.law.eta_threshold_bits},
                  {"delta", sc.law.delta_threshold},
                  {"header_overhead_bits", sc.law.header_overhead_bits}};
  j["benchmark"] = Json{{"instances", sc.instances},
                        {"ladder", sc.ladder},
                        {"seed", sc.bench_seed}};
  j["mode"] = Json{
      {"analytic_only", sc.analytic_only},
      {"solver", sc.solver == SolverKind::catalytic ? "catalytic" : "cached"},
      {"cache_entries", sc.cache_entries}};
  Json weights = Json::array(), profs = Json::array();
  for (const auto& [w, p] : sc.intelligence.terms) {
    weights.push_back(w);
    profs.push_back(p);
  }
  j["intelligence"] = Json{{"weights", weights}, {"proficiencies", profs}};
  return j;
}

struct AdaptationSummary {
  std::size_t m = 0;
  std::size_t hull_dim = 0;
  bool recovered = false;
  std::uint64_t residual_bits = 0;
  std::int64_t info_data_bits = 0;
  std::int64_t residual_formula_bits = 0;
};

/// Closed-form figures in the conventions back-of-envelope estimates use
/// (per-query op counts 2^n and 2^d, without the per-candidate factor n).
struct ClosedFormFigures {
  double e_baseline_query_j = 0;
  double e_catalytic_query_j = 0;
  double adapt_floor_formula_j = 0;
};

struct RunReport {
  Scenario scenario;
  std::string class_descriptor;  // codeword form scheme_id:hex(bits):bitlen
  CostMeter meter_baseline;
  CostMeter meter_catalytic;
  CostMeter meter_adapt;
  SpeedupReport speedup;  // per-query counts under the declared cost model
  AdaptationSummary adaptation;
  CatalystReport catalyst;
  EnergyReport energy;
  std::optional<ClosedFormFigures> closed_form;
  double charged_adapt_j = 0;
  double coupling_floor_j = 0;
  double coupling_slack_j = 0;
  std::vector<std::string> violations;
  std::string version = kVersionString;
};

/// End-to-end pipeline for one scenario.
inline RunReport run_scenario(const Scenario& sc) {
  RunReport rep;
  rep.scenario = sc;
  const PhysicalConfig cfg = sc.physical();

  const AffineSubspace V =
      AffineSubspace::random(sc.n, sc.d, sc.class_seed);
  const AffineSubspace& sigma = V;
  rep.class_descriptor = encode_class_descriptor(V).to_string();

  // adaptation from samples
  const SampleSet samples = draw_samples(V, sc.m, sc.adapt_seed);
  const AdaptationResult adapt =
      adapt_from_samples(samples, V, rep.meter_adapt);
  rep.adaptation = AdaptationSummary{
      sc.m,
      adapt.hull_dim,
      adapt.recovered.has_value(),
      adapt.residual_bits,
      adapt.info_data_bits,
      formula_residual_bits(sc.n, sc.d, sc.m)};

  // deployment evidence
  AuditEvidence ev;
  ev.matched_intelligence = true;
  SubstrateDesc desc = SubstrateDesc::of_subspace(V);
  double n_base_query = 0, n_cat_query = 0;

  if (sc.analytic_only) {
    n_base_query = std::ldexp(double(sc.n), int(sc.n));
    n_cat_query = std::ldexp(double(sc.n), int(sc.d));
    const double gamma = std::ldexp(1.0, int(sc.n) - int(sc.d));
    const std::size_t tasks = std::max<std::size_t>(1, sc.instances);
    for (std::size_t i = 0; i < tasks; ++i)
      ev.task_counts.emplace_back(n_base_query, n_cat_query);
    for (const std::size_t s : sc.ladder)
      ev.ladder.push_back(LadderPoint{s, gamma});
    ev.delta_k_cycle = 0;  // the substrate is only read, never updated
  } else if (sc.solver == SolverKind::catalytic) {
    for (std::size_t i = 0; i < sc.instances; ++i) {
      const InstanceSpec inst = make_instance(V, mix_seed(sc.bench_seed, i));
      CostMeter mb, mc;
      const auto base = solve_baseline(inst, mb);
      std::vector<BitVec> cat;
      bool matched = true;
      try {
        cat = solve_catalytic(inst, V, mc);
      } catch (const class_mismatch_error&) {
        matched = false;
      }
      if (matched) matched = base == cat;
      if (!matched) ev.matched_intelligence = false;
      ev.task_counts.emplace_back(double(mb.exec_irrev_bits),
                                  double(mc.exec_irrev_bits));
      rep.meter_baseline = merge(rep.meter_baseline, mb);
      rep.meter_catalytic = merge(rep.meter_catalytic, mc);
    }
    ev.ladder = transfer_check(V, sc.ladder, sc.bench_seed);
    const SubstrateDesc desc_after = SubstrateDesc::of_subspace(V);
    ev.delta_k_cycle =
        desc == desc_after
            ? 0.0
            : double(khat_cond(Encodable{desc}, Encodable{desc_after}).bits);
    n_base_query = double(rep.meter_baseline.exec_irrev_bits) /
                   double(sc.instances);
    n_cat_query = double(rep.meter_catalytic.exec_irrev_bits) /
                  double(sc.instances);
  } else {
    // cached pseudo-catalyst: the audited task set is the stored instances
    Cache cache;
    std::vector<InstanceSpec> stored;
    for (std::size_t i = 0; i < sc.cache_entries; ++i) {
      stored.push_back(make_instance(V, mix_seed(sc.bench_seed, i)));
      CostMeter scratch;
      cache.store(stored.back(), solve_baseline(stored.back(), scratch));
    }
    for (const auto& inst : stored) {
      CostMeter mb, mc;
      const auto base = solve_baseline(inst, mb);
      const auto hit = solve_cached(inst, cache, mc);
      if (!(base == hit)) ev.matched_intelligence = false;
      ev.task_counts.emplace_back(double(mb.exec_irrev_bits),
                                  double(mc.exec_irrev_bits));
      rep.meter_baseline = merge(rep.meter_baseline, mb);
      rep.meter_catalytic = merge(rep.meter_catalytic, mc);
    }
    ev.ladder = transfer_check(V, sc.ladder, sc.bench_seed, SolverKind::cached,
                               sc.cache_entries);
    ev.delta_k_cycle = 0;  // the table is fixed; lookups do not modify it
    desc = SubstrateDesc::of_cache(cache.table());
    n_base_query = double(rep.meter_baseline.exec_irrev_bits) /
                   double(stored.size());
    n_cat_query = double(rep.meter_catalytic.exec_irrev_bits) /
                  double(stored.size());
  }

  rep.speedup = speedup(n_base_query, n_cat_query);
  rep.catalyst = audit_catalyst(ev, desc, sigma, sc.law);

  // energy accounting
  const double c_u = double(sc.law.c_u_bits);
  const double info_data = double(std::max<std::int64_t>(
      0, rep.adaptation.info_data_bits));
  EnergyReport& e = rep.energy;
  e.landauer_c_j = landauer_cost(cfg);
  e.floor_exec_j = energy_floor(cfg, n_cat_query, Substrate::exec);
  const WpiResult w =
      wpi(e.floor_exec_j, sc.tau_s, sc.intelligence, e.floor_exec_j);
  e.wpi_w = w.phi;
  e.wpi_floor_w = *w.phi_floor;
  e.restore_floor_j = restoration_floor(cfg, rep.catalyst.delta_k_cycle);
  e.adapt_floor_j =
      adaptation_floor(cfg, double(rep.catalyst.mu_bits), info_data, c_u);
  const double e_base_query = energy_floor(cfg, n_base_query, Substrate::exec);
  e.breakeven_count = breakeven(cfg, rep.speedup.gamma, info_data, c_u,
                                e_base_query, e.restore_floor_j);
  e.tau_s = sc.tau_s;

  // coupling of charged erasures to the measured speed-up
  rep.charged_adapt_j = energy_floor(
      cfg, double(rep.meter_adapt.adapt_erase_bits), Substrate::adapt);
  rep.coupling_floor_j =
      coupling_adapt_floor(cfg, rep.speedup.gamma, info_data, c_u);
  rep.coupling_slack_j = rep.charged_adapt_j - rep.coupling_floor_j;

  if (sc.analytic_only) {
    ClosedFormFigures pf;
    pf.e_baseline_query_j =
        energy_floor(cfg, std::ldexp(1.0, int(sc.n)), Substrate::exec);
    pf.e_catalytic_query_j =
        energy_floor(cfg, std::ldexp(1.0, int(sc.d)), Substrate::exec);
    pf.adapt_floor_formula_j = energy_floor(
        cfg, double(rep.adaptation.residual_formula_bits), Substrate::adapt);
    rep.closed_form = pf;
  }

  // law violations (theorem-shaped failures only)
  if (!ev.matched_intelligence) rep.violations.push_back("matched_intelligence");
  if (!sc.analytic_only && sc.solver == SolverKind::catalytic) {
    const double expected = std::ldexp(1.0, int(sc.n) - int(sc.d));
    if (rep.speedup.gamma != expected)
      rep.violations.push_back("cost_model_gamma");
  }
  if (rep.catalyst.verdict == Verdict::CATALYST &&
      rep.catalyst.slack_bits < 0)
    rep.violations.push_back("selectivity_bound");
  if (rep.coupling_slack_j < -1e-12 * std::max(1.0, rep.coupling_floor_j))
    rep.violations.push_back("coupling_adapt");
  if (e.wpi_floor_w > e.wpi_w * (1 + 1e-12))
    rep.violations.push_back("wpi_floor");
  return rep;
}

inline Json to_json(const RunReport& r) {
  Json j;
  j["version"] = r.version;
  j["scenario"] = to_json(r.scenario);
  j["class_descriptor"] = r.class_descriptor;
  j["meters"] = Json{{"baseline", to_json(r.meter_baseline)},
                     {"catalytic", to_json(r.meter_catalytic)},
                     {"adaptation", to_json(r.meter_adapt)}};
  j["speedup"] = to_json(r.speedup);
  j["adaptation"] = Json{
      {"m", r.adaptation.m},
      {"hull_dim", r.adaptation.hull_dim},
      {"recovered", r.adaptation.recovered},
      {"residual_bits", r.adaptation.residual_bits},
      {"info_data_bits", r.adaptation.info_data_bits},
      {"residual_formula_bits", r.adaptation.residual_formula_bits}};
  j["catalyst"] = to_json(r.catalyst);
  j["energy"] = to_json(r.energy);
  if (r.closed_form) {
    j["closed_form_figures"] =
        Json{{"e_baseline_query_j", r.closed_form->e_baseline_query_j},
             {"e_catalytic_query_j", r.closed_form->e_catalytic_query_j},
             {"adapt_floor_formula_j", r.closed_form->adapt_floor_formula_j}};
  }
  j["coupling"] = Json{{"charged_adapt_j", r.charged_adapt_j},
                       {"floor_j", r.coupling_floor_j},
                       {"slack_j", r.coupling_slack_j}};
  j["violations"] = r.violations;
  return j;
}

/// gamma_ladder.csv body.
inline std::string ladder_to_csv(const std::vector<LadderPoint>& ladder) {
  std::string out = "size,gamma\n";
  for (const auto& p : ladder)
    out += std::to_string(p.size) + "," + Json(p.gamma).dump() + "\n";
  return out;
}

/// energy.csv body: one metric per row.
inline std::string energy_to_csv(const RunReport& r) {
  std::string out = "metric,value\n";
  const auto row = [&out](const std::string& k, const Json& v) {
    out += k + "," + v.dump() + "\n";
  };
  const Json e = to_json(r.energy);
  for (const auto& [k, v] : e.items()) row(k, v);
  if (r.closed_form) {
    row("closed_form_e_baseline_query_j", Json(r.closed_form->e_baseline_query_j));
    row("closed_form_e_catalytic_query_j", Json(r.closed_form->e_catalytic_query_j));
    row("adapt_floor_formula_j", Json(r.closed_form->adapt_floor_formula_j));
  }
  row("charged_adapt_j", Json(r.charged_adapt_j));
  row("coupling_floor_j", Json(r.coupling_floor_j));
  row("coupling_slack_j", Json(r.coupling_slack_j));
  return out;
}

}  // namespace catalab
