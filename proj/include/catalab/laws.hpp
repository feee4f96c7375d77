#pragma once

// Executable checks of the theorem-shaped claims: the selectivity bound,
// refinement monotonicity, catalyst qualification, composition, and the
// coupling of adaptation cost to speed-up. All description-length inputs are
// constructive codec estimates, so each check reports slack rather than
// asserting exact equality.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "catalab/affine.hpp"
#include "catalab/bits.hpp"
#include "catalab/encoding.hpp"
#include "catalab/errors.hpp"
#include "catalab/meter.hpp"
#include "catalab/substrate.hpp"
#include "catalab/thermo.hpp"

namespace catalab {

/// Thresholds and machine constants for law checks. header_overhead is the
/// operational O(log n) term and doubles as the bounded-reconfiguration
/// tolerance; eta/delta are the existence constants of the catalyst
/// definition, fixed per scenario.
struct LawConfig {
  std::int64_t c_u_bits = 0;
  std::int64_t eta_threshold_bits = 1;
  double delta_threshold = 0.5;
  std::int64_t header_overhead_bits = 32;

  /// Defaults for dimension-n scenarios: eta = n (one offset's worth of
  /// structure), header_overhead = two integer headers at magnitude n.
  static LawConfig for_dimension(std::size_t n) {
    LawConfig cfg;
    cfg.eta_threshold_bits = std::int64_t(n);
    cfg.header_overhead_bits = 2 * std::int64_t(uint_code_length(n) + 1);
    return cfg;
  }
};

struct SelectivityCheck {
  bool holds = false;
  double slack_bits = 0;  // mu + c_u - log2(gamma)
};

/// Selectivity bound: log2(gamma) <= mu + c_u.
inline SelectivityCheck check_selectivity(double gamma, double mu_bits,
                                          const LawConfig& cfg) {
  if (!(gamma > 0)) throw error("check_selectivity: gamma must be > 0");
  const double lg = std::log2(gamma);
  const double slack = mu_bits + double(cfg.c_u_bits) - lg;
  return SelectivityCheck{slack >= 0, slack};
}

struct RefinementCheck {
  bool refines = false;
  bool monotone = false;
  std::uint64_t residual_bits = 0;  // khat_cond(coarse | fine)
  std::int64_t mi_fine_bits = 0;
  std::int64_t mi_coarse_bits = 0;
};

/// Refinement: the coarse description reconstructs from the fine one within
/// header overhead; monotonicity compares their mutual information with the
/// scenario's class descriptor.
inline RefinementCheck check_refinement(const SubstrateDesc& coarse,
                                        const SubstrateDesc& fine,
                                        const AffineSubspace& sigma,
                                        const LawConfig& cfg) {
  RefinementCheck rc;
  rc.residual_bits = khat_cond(Encodable{coarse}, Encodable{fine}).bits;
  rc.refines =
      rc.residual_bits <= std::uint64_t(std::max<std::int64_t>(
                              0, cfg.header_overhead_bits));
  rc.mi_fine_bits = mutual_info(Encodable{fine}, Encodable{sigma}).bits;
  rc.mi_coarse_bits = mutual_info(Encodable{coarse}, Encodable{sigma}).bits;
  rc.monotone = rc.mi_fine_bits >= rc.mi_coarse_bits - cfg.c_u_bits;
  return rc;
}

/// Installed-information estimate of a substrate about a class descriptor:
/// khat(sigma) - khat_cond(sigma | desc), clamped at zero. Serves as both
/// the mu and eta figure (the codecs certify the same compression).
inline std::int64_t installed_info_bits(const SubstrateDesc& desc,
                                        const AffineSubspace& sigma) {
  return mutual_info(Encodable{sigma}, Encodable{desc}).bits;
}

enum class Verdict { CATALYST, NOT_CATALYST };

/// Audit outcome for the three catalyst conditions.
struct CatalystReport {
  bool pathway_opening = false;
  bool bounded_reconfiguration = false;
  bool selectivity = false;
  double gamma = 0;          // deployment speed-up over the audited tasks
  double gamma_liminf = 0;   // weakest ladder rung: the transfer evidence
  std::int64_t mu_bits = 0;
  std::int64_t eta_bits = 0;
  double delta_k_cycle = 0;
  std::vector<LadderPoint> ladder;
  double slack_bits = 0;     // selectivity-law slack at gamma_liminf
  Verdict verdict = Verdict::NOT_CATALYST;
  std::string failing;       // comma-separated failed conditions
};

/// Measured evidence the audit consumes. Counts are doubles so analytic
/// scenarios (n beyond the enumeration guard) can feed closed-form figures;
/// desk scenarios fill them from meters exactly.
struct AuditEvidence {
  std::vector<std::pair<double, double>> task_counts;  // (baseline, catalytic)
  std::vector<LadderPoint> ladder;
  double delta_k_cycle = 0;
  bool matched_intelligence = false;
};

inline CatalystReport audit_catalyst(const AuditEvidence& ev,
                                     const SubstrateDesc& substrate,
                                     const AffineSubspace& sigma,
                                     const LawConfig& cfg) {
  if (!ev.matched_intelligence)
    throw audit_error("audit_catalyst: intelligence not matched");
  if (ev.task_counts.empty())
    throw audit_error("audit_catalyst: no task runs supplied");

  CatalystReport rep;
  rep.ladder = ev.ladder;
  rep.delta_k_cycle = ev.delta_k_cycle;

  rep.pathway_opening = true;
  double base_total = 0, cat_total = 0;
  for (const auto& [nb, nc] : ev.task_counts) {
    if (!(nb > 0) || !(nc > 0))
      throw audit_error("audit_catalyst: non-positive op count");
    if (!(nc < nb)) rep.pathway_opening = false;
    base_total += nb;
    cat_total += nc;
  }
  rep.gamma = base_total / cat_total;

  rep.bounded_reconfiguration =
      ev.delta_k_cycle <= double(cfg.header_overhead_bits);

  rep.mu_bits = installed_info_bits(substrate, sigma);
  rep.eta_bits = rep.mu_bits;
  bool transfer = !ev.ladder.empty();
  rep.gamma_liminf = rep.gamma;
  if (!ev.ladder.empty()) {
    rep.gamma_liminf = ev.ladder.front().gamma;
    for (const auto& rung : ev.ladder)
      rep.gamma_liminf = std::min(rep.gamma_liminf, rung.gamma);
    for (const auto& rung : ev.ladder)
      if (!(rung.gamma >= 1.0 + cfg.delta_threshold)) transfer = false;
  }
  rep.selectivity = transfer && rep.eta_bits >= cfg.eta_threshold_bits;

  rep.slack_bits =
      check_selectivity(rep.gamma_liminf, double(rep.mu_bits), cfg).slack_bits;

  if (rep.pathway_opening && rep.bounded_reconfiguration && rep.selectivity) {
    rep.verdict = Verdict::CATALYST;
  } else {
    rep.verdict = Verdict::NOT_CATALYST;
    std::vector<std::string> failed;
    if (!rep.pathway_opening) failed.push_back("pathway_opening");
    if (!rep.bounded_reconfiguration)
      failed.push_back("bounded_reconfiguration");
    if (!rep.selectivity) failed.push_back("selectivity");
    for (std::size_t i = 0; i < failed.size(); ++i)
      rep.failing += (i ? "," : "") + failed[i];
  }
  return rep;
}

// ---------------------------------------------------------------------------
// composition

/// One catalytic stage measured against its reference system.
struct StageReport {
  double n_ref_bits = 0;  // irreversible ops of the stage's reference
  double n_cat_bits = 0;  // irreversible ops of the stage's system
  SubstrateDesc desc;
};

struct CompositeReport {
  double gamma1 = 0;
  double gamma2 = 0;
  double gamma_composite = 0;
  bool multiplicative_holds = false;  // gamma_composite >= gamma1 * gamma2
  bool multiplicative_exact = false;  // equality under the declared cost model
  std::int64_t eta1_bits = 0;
  std::int64_t eta2_bits = 0;
  std::int64_t eta_composite_bits = 0;
  std::int64_t overlap_bits = 0;      // eta1 + eta2 - eta_comp, double-counted
  bool max_bound_holds = false;       // eta_comp >= max(eta1, eta2) - c_u
  bool additive_asserted = false;     // independence probe passed
  bool additive_holds = false;        // eta_comp >= eta1 + eta2 - c_u - slop
  RefinementCheck refinement;
};

/// Composes two stages sharing a class. Requires stage2's substrate to refine
/// stage1's; gamma telescopes from the meters, and the eta bounds are checked
/// from the codec estimates. The additive eta bound is asserted only when the
/// conditional-independence probe certifies that stage2's description adds
/// nothing about stage1's beyond what the class descriptor already gives.
inline CompositeReport compose(const StageReport& stage1,
                               const StageReport& stage2,
                               const AffineSubspace& sigma,
                               const LawConfig& cfg) {
  CompositeReport cr;
  cr.refinement = check_refinement(stage1.desc, stage2.desc, sigma, cfg);
  if (!cr.refinement.refines)
    throw error("compose: stage2 substrate does not refine stage1");

  if (!(stage1.n_ref_bits > 0) || !(stage1.n_cat_bits > 0) ||
      !(stage2.n_ref_bits > 0) || !(stage2.n_cat_bits > 0))
    throw error("compose: non-positive op counts");
  cr.gamma1 = stage1.n_ref_bits / stage1.n_cat_bits;
  cr.gamma2 = stage2.n_ref_bits / stage2.n_cat_bits;
  cr.gamma_composite = stage1.n_ref_bits / stage2.n_cat_bits;
  const double product = cr.gamma1 * cr.gamma2;
  cr.multiplicative_holds = cr.gamma_composite >= product * (1 - 1e-12);
  cr.multiplicative_exact =
      std::abs(cr.gamma_composite - product) <= product * 1e-12;

  cr.eta1_bits = installed_info_bits(stage1.desc, sigma);
  cr.eta2_bits = installed_info_bits(stage2.desc, sigma);
  cr.eta_composite_bits = cr.eta2_bits;  // the composite deploys stage2
  cr.max_bound_holds =
      cr.eta_composite_bits >=
      std::max(cr.eta1_bits, cr.eta2_bits) - cfg.c_u_bits;

  // Independence probe via the conditional-codec residuals: the overlap
  // estimate eta1 + eta2 - eta_composite counts the bits the two stages
  // certify about sigma twice. When it stays within the machine constant
  // plus header slop, the stages' contributions are disjoint and the
  // additive bound follows arithmetically; otherwise only the max bound
  // is asserted.
  cr.overlap_bits = cr.eta1_bits + cr.eta2_bits - cr.eta_composite_bits;
  cr.additive_asserted =
      cr.overlap_bits <= cfg.c_u_bits + cfg.header_overhead_bits;
  if (cr.additive_asserted)
    cr.additive_holds =
        cr.eta_composite_bits >= cr.eta1_bits + cr.eta2_bits -
                                     cfg.c_u_bits - cfg.header_overhead_bits;
  return cr;
}

}  // namespace catalab
