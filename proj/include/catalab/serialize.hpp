#pragma once

// JSON/CSV forms for reports and generated artifacts. Field names and layouts
// are part of the tool's external interface; emission uses ordered JSON so a
// rerun of the same scenario reproduces reports byte-for-byte.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "catalab/affine.hpp"
#include "catalab/instances.hpp"
#include "catalab/laws.hpp"
#include "catalab/meter.hpp"
#include "catalab/thermo.hpp"

namespace catalab {

using Json = nlohmann::ordered_json;

inline Json to_json(const CostMeter& m) {
  Json j;
  j["n_exec_bits"] = m.exec_irrev_bits;
  j["n_adapt_bits"] = m.adapt_erase_bits;
  j["cycles"] = m.cycles;
  return j;
}

inline Json breakeven_to_json(const Breakeven& b) {
  if (!b.has_horizon) return Json("no_horizon");
  if (b.count <= 9.007199254740992e15) return Json(std::uint64_t(b.count));
  return Json(b.count);
}

inline Json to_json(const EnergyReport& e) {
  Json j;
  j["landauer_c_j"] = e.landauer_c_j;
  j["floor_exec_j"] = e.floor_exec_j;
  j["wpi_w"] = e.wpi_w;
  j["wpi_floor_w"] = e.wpi_floor_w;
  j["restore_floor_j"] = e.restore_floor_j;
  j["adapt_floor_j"] = e.adapt_floor_j;
  j["breakeven_count"] = breakeven_to_json(e.breakeven_count);
  j["tau_s"] = e.tau_s;
  return j;
}

inline Json to_json(const SpeedupReport& s) {
  Json j;
  j["n_baseline_bits"] = s.n_baseline_bits;
  j["n_catalytic_bits"] = s.n_catalytic_bits;
  j["gamma"] = s.gamma;
  j["barrier_baseline"] = s.barrier_baseline;
  j["barrier_catalytic"] = s.barrier_catalytic;
  return j;
}

inline Json to_json(const std::vector<LadderPoint>& ladder) {
  Json arr = Json::array();
  for (const auto& p : ladder) {
    Json r;
    r["size"] = p.size;
    r["gamma"] = p.gamma;
    arr.push_back(std::move(r));
  }
  return arr;
}

inline Json to_json(const CatalystReport& c) {
  Json j;
  j["verdict"] = c.verdict == Verdict::CATALYST ? "CATALYST" : "NOT_CATALYST";
  j["gamma"] = c.gamma;
  j["mu_bits"] = c.mu_bits;
  j["eta_bits"] = c.eta_bits;
  j["delta_k_cycle"] = c.delta_k_cycle;
  j["ladder"] = to_json(c.ladder);
  j["slack_bits"] = c.slack_bits;
  if (!c.failing.empty()) j["failing"] = c.failing;
  return j;
}

inline Json to_json(const AffineSubspace& V, std::uint64_t seed = 0) {
  Json j;
  j["n"] = V.n();
  j["d"] = V.dim();
  Json rows = Json::array();
  for (const auto& r : V.rows()) rows.push_back(r.to_hex());
  j["basis"] = std::move(rows);
  j["offset"] = V.offset().to_hex();
  j["seed"] = seed;
  return j;
}

inline AffineSubspace subspace_from_json(const Json& j) {
  const std::size_t n = j.at("n").get<std::size_t>();
  std::vector<BitVec> rows;
  for (const auto& h : j.at("basis"))
    rows.push_back(BitVec::from_hex(h.get<std::string>(), n));
  return AffineSubspace(n, rows,
                        BitVec::from_hex(j.at("offset").get<std::string>(), n));
}

inline Json to_json(const InstanceSpec& inst) {
  Json j;
  j["n"] = inst.n;
  j["aux_count"] = inst.aux_count;
  Json cs = Json::array();
  for (const auto& c : inst.constraints) {
    Json cj;
    cj["vars"] = c.vars;
    cj["target"] = c.target ? 1 : 0;
    cs.push_back(std::move(cj));
  }
  j["constraints"] = std::move(cs);
  j["seed"] = inst.presentation_seed;
  return j;
}

inline InstanceSpec instance_from_json(const Json& j) {
  InstanceSpec inst;
  inst.n = j.at("n").get<std::size_t>();
  inst.aux_count = j.at("aux_count").get<std::size_t>();
  for (const auto& cj : j.at("constraints")) {
    ParityConstraint c;
    c.vars = cj.at("vars").get<std::vector<std::uint32_t>>();
    c.target = cj.at("target").get<int>() != 0;
    inst.constraints.push_back(std::move(c));
  }
  inst.presentation_seed = j.value("seed", std::uint64_t{0});
  return inst;
}

inline Json to_json(const SampleSet& s, std::uint64_t seed = 0) {
  Json j;
  j["n"] = s.n;
  j["m"] = s.points.size();
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(p.to_hex());
  j["points"] = std::move(pts);
  j["seed"] = seed;
  return j;
}

inline SampleSet samples_from_json(const Json& j) {
  SampleSet s;
  s.n = j.at("n").get<std::size_t>();
  for (const auto& h : j.at("points"))
    s.points.push_back(BitVec::from_hex(h.get<std::string>(), s.n));
  return s;
}

/// Sorted hex list export for solution sets.
inline std::string solutions_to_csv(std::vector<BitVec> solutions) {
  std::sort(solutions.begin(), solutions.end(), value_less);
  std::string out = "assignment_hex\n";
  for (const auto& s : solutions) {
    out += s.to_hex();
    out += '\n';
  }
  return out;
}

}  // namespace catalab
