// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here, in code.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "catalab/catalab.hpp"

using namespace catalab;

namespace {

int g_failures = 0;

void criterion(const std::string& label, bool ok) {
  std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", label.c_str());
  if (!ok) ++g_failures;
}

bool within_rel(double value, double reference, double tol) {
  return std::abs(value - reference) <= tol * std::abs(reference);
}

Scenario load_scenario(const std::string& name) {
  std::ifstream in(std::string(CATALAB_SCENARIO_DIR) + "/" + name);
  Json j;
  in >> j;
  return scenario_from_json(j);
}

PhysicalConfig flagship_cfg() {
  PhysicalConfig cfg;
  cfg.temperature_kelvin = 300.0;
  cfg.overhead_exec = 1e9;
  cfg.overhead_adapt = 1e9;
  return cfg;
}

}  // namespace

// 1. Landauer constant at room temperature, 0.5%.
static void criterion_1() {
  PhysicalConfig cfg;
  criterion("1. landauer_cost(300 K) = 2.871e-21 J within 0.5%",
            within_rel(landauer_cost(cfg), 2.871e-21, 0.005));
}

// 2. Reference energy reproduction in analytic mode.
static void criterion_2() {
  const auto cfg = flagship_cfg();
  const bool base_ok = within_rel(
      energy_floor(cfg, std::ldexp(1.0, 100), Substrate::exec), 3.6e18, 0.02);
  const bool cat_ok = within_rel(
      energy_floor(cfg, std::ldexp(1.0, 10), Substrate::exec), 3e-9, 0.05);
  const bool adapt_ok = within_rel(
      energy_floor(cfg, 700.0, Substrate::adapt), 2e-9, 0.05);

  const RunReport rep = run_scenario(load_scenario("flagship_100_10_m5.json"));
  const bool closed_form_ok =
      rep.closed_form.has_value() &&
      within_rel(rep.closed_form->e_baseline_query_j, 3.6e18, 0.02) &&
      within_rel(rep.closed_form->e_catalytic_query_j, 3e-9, 0.05) &&
      within_rel(rep.closed_form->adapt_floor_formula_j, 2e-9, 0.05);
  // constructive residual within the documented +-n band of the 700-bit figure
  const bool band_ok =
      rep.adaptation.residual_formula_bits == 700 &&
      std::abs(double(rep.adaptation.residual_bits) - 700.0) <= 100.0;
  criterion(
      "2. analytic n=100 d=10 F=1e9: baseline 3.6e18 J (2%), catalytic 3e-9 J "
      "(5%), adaptation 2e-9 J (5%), residual within +-n of 700",
      base_ok && cat_ok && adapt_ok && closed_form_ok && band_ok);
}

// 3. Break-even: 0 with m >= d+1; NO_HORIZON at gamma = 1.
static void criterion_3() {
  const RunReport rep = run_scenario(load_scenario("flagship_100_10.json"));
  const bool zero_ok = rep.energy.breakeven_count.has_horizon &&
                       rep.energy.breakeven_count.count == 0.0;
  const auto nh = breakeven(flagship_cfg(), 1.0, 0, 0, 1.0, 0.0);
  criterion("3. break-even 0 at m >= d+1; gamma = 1 gives NO_HORIZON",
            zero_ok && !nh.has_horizon);
}

// 4. Exact measured speed-up and matched intelligence on 100 random desks.
static void criterion_4() {
  Rng rng(20240817);
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const std::size_t n = 2 + rng.index(15);  // 2..16
    const std::size_t d = rng.index(n + 1);
    const auto V = AffineSubspace::random(n, d, rng.word());
    const auto inst = make_instance(V, rng.word());
    CostMeter mb, mc;
    const auto base = solve_baseline(inst, mb);
    const auto cat = solve_catalytic(inst, V, mc);
    if (base != cat) ok = false;
    if (double(mb.exec_irrev_bits) / double(mc.exec_irrev_bits) !=
        std::ldexp(1.0, int(n) - int(d)))
      ok = false;
  }
  criterion("4. 100 random n<=16 scenarios: gamma = 2^(n-d) exactly, "
            "identical solution sets",
            ok);
}

// 5. Selectivity law with positive slack everywhere; analytic slack ~1010.
static void criterion_5() {
  Rng rng(5150);
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const std::size_t n = 2 + rng.index(15);
    const std::size_t d = rng.index(n + 1);
    const auto V = AffineSubspace::random(n, d, rng.word());
    const auto mu =
        mutual_info(Encodable{V}, Encodable{SubstrateDesc::of_subspace(V)});
    const auto check = check_selectivity(std::ldexp(1.0, int(n) - int(d)),
                                         double(mu.bits),
                                         LawConfig::for_dimension(n));
    if (!check.holds || !(check.slack_bits > 0)) ok = false;
  }
  const RunReport rep = run_scenario(load_scenario("flagship_100_10.json"));
  const bool slack_ok = std::abs(rep.catalyst.slack_bits - 1010.0) <= 100.0;
  criterion("5. log2(gamma) <= mu + c_U with positive slack on all scenarios; "
            "analytic slack within 100 bits of 1010",
            ok && slack_ok);
}

// 6. Composition: 20 nested triples multiply exactly and refine.
static void criterion_6() {
  Rng rng(660);
  bool ok = true;
  const LawConfig base_cfg;
  (void)base_cfg;
  for (int trial = 0; trial < 20 && ok; ++trial) {
    const std::size_t n = 6 + rng.index(11);  // 6..16
    const std::size_t d_w = 2 + rng.index(n - 2);
    const std::size_t d = 1 + rng.index(d_w);
    const auto W = AffineSubspace::random(n, d_w, rng.word());
    std::vector<BitVec> rows;
    Gf2Basis probe(n);
    while (probe.dim() < d) {
      BitVec cand(n);
      for (std::size_t j = 0; j < d_w; ++j)
        if (rng.coin()) cand ^= W.rows()[j];
      if (cand.any() && probe.insert(cand)) rows.push_back(cand);
    }
    const AffineSubspace V(n, rows, W.offset());

    const auto inst = make_instance(V, rng.word());
    CostMeter m0, m1, m2;
    const auto s0 = solve_baseline(inst, m0);
    const auto s1 = solve_within(inst, W, m1, SubspacePolicy::filter);
    const auto s2 = solve_catalytic(inst, V, m2);
    if (s0 != s1 || s0 != s2) ok = false;

    StageReport st1{double(m0.exec_irrev_bits), double(m1.exec_irrev_bits),
                    SubstrateDesc::of_subspace(W)};
    StageReport st2{double(m1.exec_irrev_bits), double(m2.exec_irrev_bits),
                    st1.desc.extended_with(DescLayer{V})};
    try {
      const auto comp = compose(st1, st2, V, LawConfig::for_dimension(n));
      if (!comp.refinement.refines || !comp.multiplicative_exact) ok = false;
      if (comp.gamma_composite != comp.gamma1 * comp.gamma2) ok = false;
      if (!comp.max_bound_holds) ok = false;
    } catch (const error&) {
      ok = false;
    }
  }
  criterion("6. 20 nested-subspace chains: gamma_composite = gamma1*gamma2 "
            "exactly, refinement holds",
            ok);
}

// 7. Cache falsifier versus the subspace solver on the same ladder.
static void criterion_7() {
  const RunReport cache = run_scenario(load_scenario("cache_falsifier.json"));
  bool decreasing = cache.catalyst.ladder.size() == 5;
  for (std::size_t i = 0; i + 1 < cache.catalyst.ladder.size(); ++i)
    if (!(cache.catalyst.ladder[i].gamma >
          cache.catalyst.ladder[i + 1].gamma))
      decreasing = false;
  const bool toward_one = decreasing &&
                          cache.catalyst.ladder.back().gamma < 1.5 &&
                          cache.catalyst.ladder.back().gamma >= 1.0;
  const bool cache_rejected =
      cache.catalyst.verdict == Verdict::NOT_CATALYST;

  // the subspace solver audited on the same ladder sizes and class
  Scenario cat = load_scenario("cache_falsifier.json");
  cat.name = "falsifier_catalytic";
  cat.solver = SolverKind::catalytic;
  cat.cache_entries = 0;
  cat.m = 5;
  const RunReport sub = run_scenario(cat);
  criterion("7. 5-rung ladder: cache gamma strictly decreasing toward 1 and "
            "NOT_CATALYST; subspace solver CATALYST",
            toward_one && cache_rejected &&
                sub.catalyst.verdict == Verdict::CATALYST);
}

// 8. Catalytic machine: exhaustive AND check, fuzz on both rings, zero
// restoration deltas.
static void criterion_8() {
  const auto f = Formula::mul(Formula::variable(0), Formula::variable(1));
  const auto p = compile_formula(f);
  bool and_ok = true;
  for (std::uint64_t x = 0; x < 4 && and_ok; ++x) {
    const std::vector<std::uint64_t> inputs{x & 1, (x >> 1) & 1};
    for (std::uint64_t a = 0; a < 8 && and_ok; ++a) {
      const MachineState init{1, {a & 1, (a >> 1) & 1, (a >> 2) & 1}};
      CostMeter m;
      const auto res = run(p, inputs, init, m);
      if (res.final_state.aux[0] != (init.aux[0] ^ (inputs[0] & inputs[1])))
        and_ok = false;
      if (res.final_state.aux[1] != init.aux[1] ||
          res.final_state.aux[2] != init.aux[2])
        and_ok = false;
      const auto cyc = run_cycle(p, inputs, init, m);
      if (!(cyc.final_state == init)) and_ok = false;
      if (restoration_delta(init, cyc.final_state) != 0) and_ok = false;
    }
  }
  const bool fuzz_gf2 = fuzz_vm(10000, 3, 8, 1, 881) == 0;
  const bool fuzz_w16 = fuzz_vm(10000, 3, 8, 16, 882) == 0;
  PhysicalConfig cfg;
  const bool floor_ok = restoration_floor(cfg, 0) == 0.0;
  criterion("8. VM: 32-case AND check, 1e4 fuzz on GF(2) and mod 2^16 with "
            "zero failures, restoration floor 0 J",
            and_ok && fuzz_gf2 && fuzz_w16 && floor_ok);
}

// 9. Adaptation monotonicity along nested sample sequences.
static void criterion_9() {
  Rng rng(99099);
  bool ok = true;
  for (int trial = 0; trial < 20 && ok; ++trial) {
    const std::size_t n = 3 + rng.index(14);  // 3..16
    const std::size_t d = 1 + rng.index(n);
    const auto V = AffineSubspace::random(n, d, rng.word());
    const auto all = draw_samples(V, d + 2, rng.word());
    const std::int64_t khat_sigma = std::int64_t(khat(Encodable{V}).bits);
    std::uint64_t prev = ~std::uint64_t{0};
    bool reached = false;
    for (std::size_t m = 0; m <= d + 2 && ok; ++m) {
      const SampleSet prefix{
          n, {all.points.begin(), all.points.begin() + long(m)}};
      CostMeter meter;
      const auto res = adapt_from_samples(prefix, V, meter);
      if (res.residual_bits > prev) ok = false;
      prev = res.residual_bits;
      if (!reached && res.hull_dim == d) {
        reached = true;
        if (res.residual_bits > 8) ok = false;  // header-only at full hull
      }
      // charged erasures respect the installed-information inequality
      const std::int64_t mu =
          installed_info_bits(SubstrateDesc::of_subspace(V), V);
      const std::int64_t lower = mu - res.info_data_bits;  // c_U = 0
      if (std::int64_t(meter.adapt_erase_bits) < lower) ok = false;
      if (res.info_data_bits + std::int64_t(res.residual_bits) != khat_sigma)
        ok = false;
    }
  }
  criterion("9. residual non-increasing along nested samples, header-only at "
            "full hull, charged erasures respect the erasure bound",
            ok);
}

static int run_all() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}

int main() { return run_all(); }
