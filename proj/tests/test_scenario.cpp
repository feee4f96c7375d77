#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "catalab/scenario.hpp"

using namespace catalab;
using Catch::Matchers::WithinRel;

namespace {

Json desk_json() {
  return Json::parse(R"({
    "schema_version": 1,
    "name": "desk",
    "class": {"n": 12, "d": 4, "seed": 11},
    "adaptation": {"m": 6, "seed": 22},
    "physics": {"temperature_kelvin": 300.0, "overhead_exec": 1.0,
                "overhead_adapt": 1.0, "tau_s": 1.0},
    "benchmark": {"instances": 2, "ladder": [2, 4, 8], "seed": 33}
  })");
}

}  // namespace

TEST_CASE("scenario parsing: defaults, guards, strictness") {
  const Scenario sc = scenario_from_json(desk_json());
  CHECK(sc.n == 12);
  CHECK(sc.law.eta_threshold_bits == 12);  // default eta = n
  CHECK(sc.law.c_u_bits == 0);
  CHECK(sc.intelligence.value() == 1.0);

  Json unknown = desk_json();
  unknown["frobnicate"] = 1;
  CHECK_THROWS_AS(scenario_from_json(unknown), error);

  Json nested_unknown = desk_json();
  nested_unknown["class"]["extra"] = 1;
  CHECK_THROWS_AS(scenario_from_json(nested_unknown), error);

  Json no_version = desk_json();
  no_version.erase("schema_version");
  CHECK_THROWS_AS(scenario_from_json(no_version), error);

  Json big_n = desk_json();
  big_n["class"]["n"] = 100;
  big_n["class"]["d"] = 10;
  CHECK_THROWS_AS(scenario_from_json(big_n), guard_error);
  big_n["mode"] = Json{{"analytic_only", true}};
  CHECK_NOTHROW(scenario_from_json(big_n));

  Json bad_ladder = desk_json();
  bad_ladder["benchmark"]["ladder"] = Json::array({4, 2});
  CHECK_THROWS_AS(scenario_from_json(bad_ladder), error);

  Json bad_overhead = desk_json();
  bad_overhead["physics"]["overhead_exec"] = 0.5;
  CHECK_THROWS_AS(scenario_from_json(bad_overhead), error);
}

TEST_CASE("desk run: exact speed-up, catalyst verdict, no violations") {
  const Scenario sc = scenario_from_json(desk_json());
  const RunReport rep = run_scenario(sc);
  CHECK(rep.speedup.gamma == 256.0);  // 2^(12-4)
  CHECK(rep.catalyst.verdict == Verdict::CATALYST);
  CHECK(rep.violations.empty());
  CHECK(rep.meter_baseline.exec_irrev_bits ==
        2 * (std::uint64_t(1) << 12) * 12);
  CHECK(rep.meter_catalytic.exec_irrev_bits ==
        2 * (std::uint64_t(1) << 4) * 12);
  // charged adaptation erasures match the constructive residual
  CHECK(rep.meter_adapt.adapt_erase_bits == rep.adaptation.residual_bits);
  // coupling inequality holds with reported slack
  CHECK(rep.coupling_slack_j >= 0);
  // energy block wired from the catalytic per-query floor
  const PhysicalConfig cfg = sc.physical();
  CHECK_THAT(rep.energy.floor_exec_j,
             WithinRel(energy_floor(cfg, std::ldexp(12.0, 4), Substrate::exec),
                       1e-12));
  CHECK(rep.energy.wpi_floor_w <= rep.energy.wpi_w);
  CHECK(rep.energy.restore_floor_j == 0.0);
  REQUIRE(rep.energy.breakeven_count.has_horizon);
  CHECK(rep.energy.breakeven_count.count == 0.0);
}

TEST_CASE("deterministic reports: identical scenario, identical bytes") {
  const Scenario sc = scenario_from_json(desk_json());
  const std::string a = to_json(run_scenario(sc)).dump(2);
  const std::string b = to_json(run_scenario(sc)).dump(2);
  CHECK(a == b);
}

TEST_CASE("analytic flagship: floors, slack, and break-even of the big class") {
  Json j = desk_json();
  j["name"] = "analytic";
  j["class"] = Json{{"n", 100}, {"d", 10}, {"seed", 42}};
  j["adaptation"] = Json{{"m", 11}, {"seed", 5}};
  j["physics"] = Json{{"temperature_kelvin", 300.0},
                      {"overhead_exec", 1e9},
                      {"overhead_adapt", 1e9},
                      {"tau_s", 1.0}};
  j["benchmark"] = Json{{"instances", 4},
                        {"ladder", Json::array({10, 20, 40, 80, 160})},
                        {"seed", 9}};
  j["mode"] = Json{{"analytic_only", true}};
  const RunReport rep = run_scenario(scenario_from_json(j));

  CHECK(rep.speedup.gamma == std::ldexp(1.0, 90));
  CHECK(rep.catalyst.verdict == Verdict::CATALYST);
  CHECK(rep.violations.empty());
  REQUIRE(rep.closed_form.has_value());
  CHECK_THAT(rep.closed_form->e_baseline_query_j, WithinRel(3.6e18, 0.02));
  CHECK_THAT(rep.closed_form->e_catalytic_query_j, WithinRel(3e-9, 0.05));
  REQUIRE(rep.energy.breakeven_count.has_horizon);
  CHECK(rep.energy.breakeven_count.count == 0.0);
  CHECK(rep.energy.adapt_floor_j < 1e-10);  // data fully determines the class
  CHECK_THAT(rep.catalyst.slack_bits, WithinRel(1010.0, 0.05));

  // m = 5 variant: closed-form adaptation floor and residual band
  j["name"] = "analytic_m5";
  j["adaptation"] = Json{{"m", 5}, {"seed", 5}};
  const RunReport rep5 = run_scenario(scenario_from_json(j));
  REQUIRE(rep5.closed_form.has_value());
  CHECK_THAT(rep5.closed_form->adapt_floor_formula_j, WithinRel(2e-9, 0.05));
  CHECK(rep5.adaptation.residual_formula_bits == 700);
  const double constructive = double(rep5.adaptation.residual_bits);
  CHECK(std::abs(constructive - 700.0) <= 100.0);  // +-n band
}

TEST_CASE("cached falsifier scenario: NOT_CATALYST, ladder decays, exit clean") {
  Json j = desk_json();
  j["name"] = "cache";
  j["class"] = Json{{"n", 12}, {"d", 4}, {"seed", 21}};
  j["adaptation"] = Json{{"m", 0}, {"seed", 3}};
  j["benchmark"] = Json{{"instances", 4},
                        {"ladder", Json::array({4, 8, 16, 32, 64})},
                        {"seed", 17}};
  j["mode"] = Json{{"analytic_only", false},
                   {"solver", "cached"},
                   {"cache_entries", 4}};
  const RunReport rep = run_scenario(scenario_from_json(j));
  CHECK(rep.catalyst.verdict == Verdict::NOT_CATALYST);
  CHECK(rep.catalyst.failing.find("selectivity") != std::string::npos);
  CHECK(rep.catalyst.mu_bits == 0);
  for (std::size_t i = 0; i + 1 < rep.catalyst.ladder.size(); ++i)
    CHECK(rep.catalyst.ladder[i].gamma > rep.catalyst.ladder[i + 1].gamma);
  CHECK(rep.catalyst.ladder.back().gamma < 1.5);
  // falsification is an expected outcome, not a law violation
  CHECK(rep.violations.empty());
}

TEST_CASE("report JSON carries the documented field names") {
  const RunReport rep = run_scenario(scenario_from_json(desk_json()));
  const Json j = to_json(rep);
  for (const char* key :
       {"landauer_c_j", "floor_exec_j", "wpi_w", "wpi_floor_w",
        "restore_floor_j", "adapt_floor_j", "breakeven_count", "tau_s"})
    CHECK(j["energy"].contains(key));
  for (const char* key : {"verdict", "gamma", "mu_bits", "eta_bits",
                          "delta_k_cycle", "ladder", "slack_bits"})
    CHECK(j["catalyst"].contains(key));
  for (const char* key : {"n_exec_bits", "n_adapt_bits", "cycles"})
    CHECK(j["meters"]["baseline"].contains(key));
  CHECK(j["energy"]["breakeven_count"].is_number_unsigned());

  // gamma = 1 edge: d = n gives NO_HORIZON as the string form
  Json flat = desk_json();
  flat["name"] = "flat";
  flat["class"] = Json{{"n", 6}, {"d", 6}, {"seed", 2}};
  const RunReport frep = run_scenario(scenario_from_json(flat));
  CHECK_FALSE(frep.energy.breakeven_count.has_horizon);
  CHECK(to_json(frep)["energy"]["breakeven_count"] == Json("no_horizon"));
}

TEST_CASE("csv emitters") {
  const RunReport rep = run_scenario(scenario_from_json(desk_json()));
  const std::string ladder = ladder_to_csv(rep.catalyst.ladder);
  CHECK(ladder.rfind("size,gamma\n", 0) == 0);
  CHECK(std::count(ladder.begin(), ladder.end(), '\n') ==
        long(rep.catalyst.ladder.size()) + 1);
  const std::string energy = energy_to_csv(rep);
  CHECK(energy.find("landauer_c_j,") != std::string::npos);
  CHECK(energy.find("coupling_slack_j,") != std::string::npos);
}
