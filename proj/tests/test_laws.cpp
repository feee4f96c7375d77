#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "catalab/adaptation.hpp"
#include "catalab/laws.hpp"
#include "catalab/solvers.hpp"

using namespace catalab;
using Catch::Matchers::WithinAbs;

namespace {

AffineSubspace nested_inside(const AffineSubspace& W, std::size_t d,
                             Rng& rng) {
  std::vector<BitVec> rows;
  Gf2Basis probe(W.n());
  while (probe.dim() < d) {
    BitVec cand(W.n());
    for (std::size_t j = 0; j < W.dim(); ++j)
      if (rng.coin()) cand ^= W.rows()[j];
    if (cand.any() && probe.insert(cand)) rows.push_back(cand);
  }
  return AffineSubspace(W.n(), rows, W.offset());
}

}  // namespace

TEST_CASE("check_selectivity: reference slack, trivial, violation") {
  LawConfig cfg;
  cfg.c_u_bits = 0;
  // log2 gamma = 90, mu = 1100 -> holds with slack 1010
  const auto big = check_selectivity(std::ldexp(1.0, 90), 1100, cfg);
  CHECK(big.holds);
  CHECK_THAT(big.slack_bits, WithinAbs(1010.0, 1e-9));

  CHECK(check_selectivity(1.0, 0, cfg).holds);  // gamma 1 holds for any mu
  const auto bad = check_selectivity(2.0, 0, cfg);
  CHECK_FALSE(bad.holds);
  CHECK_THAT(bad.slack_bits, WithinAbs(-1.0, 1e-12));
  CHECK_THROWS_AS(check_selectivity(0.0, 1, cfg), error);
}

TEST_CASE("check_refinement: layered extension, identity, independence") {
  Rng rng(42);
  const auto sigma = AffineSubspace::random(14, 5, 3);
  const LawConfig cfg = LawConfig::for_dimension(14);

  const SubstrateDesc coarse = SubstrateDesc::of_subspace(
      AffineSubspace::random(14, 8, 4));
  const SubstrateDesc fine = coarse.extended_with(DescLayer{sigma});
  const auto rc = check_refinement(coarse, fine, sigma, cfg);
  CHECK(rc.refines);
  CHECK(rc.monotone);
  CHECK(rc.residual_bits <= std::uint64_t(cfg.header_overhead_bits));

  const auto self = check_refinement(coarse, coarse, sigma, cfg);
  CHECK(self.refines);
  CHECK(self.monotone);

  // independent random descriptions do not refine each other
  const SubstrateDesc other = SubstrateDesc::of_subspace(
      AffineSubspace::random(14, 8, 99));
  const auto rx = check_refinement(coarse, other, sigma, cfg);
  CHECK_FALSE(rx.refines);
  CHECK(rx.residual_bits > std::uint64_t(cfg.header_overhead_bits));
}

TEST_CASE("audit: subspace solver qualifies, cache and identity do not") {
  const std::size_t n = 16, d = 6;
  const auto V = AffineSubspace::random(n, d, 7);
  const LawConfig cfg = LawConfig::for_dimension(n);

  AuditEvidence good;
  good.matched_intelligence = true;
  for (int i = 0; i < 3; ++i)
    good.task_counts.emplace_back(std::ldexp(double(n), int(n)),
                                  std::ldexp(double(n), int(d)));
  good.ladder = transfer_check(V, {2, 4, 8}, 5);
  good.delta_k_cycle = 0;
  const auto rep =
      audit_catalyst(good, SubstrateDesc::of_subspace(V), V, cfg);
  CHECK(rep.verdict == Verdict::CATALYST);
  CHECK(rep.pathway_opening);
  CHECK(rep.bounded_reconfiguration);
  CHECK(rep.selectivity);
  CHECK(rep.gamma == 1024.0);
  CHECK(rep.mu_bits >= std::int64_t(n * d + n));
  CHECK(rep.slack_bits > 0);

  // cache pseudo-catalyst on a growing ladder: selectivity fails
  const auto Vc = AffineSubspace::random(10, 3, 11);
  Cache cache;
  std::vector<InstanceSpec> stored;
  for (int i = 0; i < 4; ++i) {
    stored.push_back(make_instance(Vc, mix_seed(21, std::uint64_t(i))));
    CostMeter scratch;
    cache.store(stored.back(), solve_baseline(stored.back(), scratch));
  }
  AuditEvidence cached;
  cached.matched_intelligence = true;
  for (const auto& inst : stored) {
    CostMeter mb, mc;
    solve_baseline(inst, mb);
    solve_cached(inst, cache, mc);
    cached.task_counts.emplace_back(double(mb.exec_irrev_bits),
                                    double(mc.exec_irrev_bits));
  }
  cached.ladder =
      transfer_check(Vc, {4, 8, 16, 32}, 21, SolverKind::cached, 4);
  cached.delta_k_cycle = 0;
  const auto crep = audit_catalyst(
      cached, SubstrateDesc::of_cache(cache.table()), Vc,
      LawConfig::for_dimension(10));
  CHECK(crep.verdict == Verdict::NOT_CATALYST);
  CHECK_FALSE(crep.selectivity);
  CHECK(crep.failing.find("selectivity") != std::string::npos);
  CHECK(crep.mu_bits == 0);  // no registered route from a cache to the class

  // baseline audited against itself: pathway opening fails (gamma = 1)
  AuditEvidence self;
  self.matched_intelligence = true;
  self.task_counts.emplace_back(1024.0, 1024.0);
  self.ladder = {{1, 1.0}, {2, 1.0}};
  const auto srep =
      audit_catalyst(self, SubstrateDesc::of_subspace(V), V, cfg);
  CHECK(srep.verdict == Verdict::NOT_CATALYST);
  CHECK_FALSE(srep.pathway_opening);
  CHECK(srep.gamma == 1.0);
  CHECK(srep.failing.find("pathway_opening") != std::string::npos);

  // intelligence mismatch refuses the audit
  AuditEvidence mismatch = good;
  mismatch.matched_intelligence = false;
  CHECK_THROWS_AS(
      audit_catalyst(mismatch, SubstrateDesc::of_subspace(V), V, cfg),
      audit_error);
}

TEST_CASE("audit soundness: cache rejected on every ladder with >= 4 rungs") {
  Rng rng(3141);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 8 + rng.index(4);
    const auto V = AffineSubspace::random(n, 2 + rng.index(3), rng.word());
    const std::size_t k = 4;
    const auto ladder = transfer_check(V, {k, 2 * k, 4 * k, 8 * k, 16 * k},
                                       rng.word(), SolverKind::cached, k);
    REQUIRE(ladder.size() >= 4);
    bool fails_transfer = false;
    for (const auto& rung : ladder)
      if (rung.gamma < 1.5) fails_transfer = true;
    CHECK(fails_transfer);
  }
}

TEST_CASE("compose: nested subspaces multiply exactly") {
  Rng rng(606);
  const std::size_t n = 16, d_w = 10, d = 6;
  const auto W = AffineSubspace::random(n, d_w, 5);
  const auto V = nested_inside(W, d, rng);
  REQUIRE(is_subspace_of(V, W));
  const LawConfig cfg = LawConfig::for_dimension(n);

  const auto inst = make_instance(V, 17);
  CostMeter m0, m1, m2;
  const auto base = solve_baseline(inst, m0);
  const auto via_w = solve_within(inst, W, m1, SubspacePolicy::filter);
  const auto via_v = solve_catalytic(inst, V, m2);
  REQUIRE(base == via_w);
  REQUIRE(base == via_v);

  StageReport s1{double(m0.exec_irrev_bits), double(m1.exec_irrev_bits),
                 SubstrateDesc::of_subspace(W)};
  StageReport s2{double(m1.exec_irrev_bits), double(m2.exec_irrev_bits),
                 s1.desc.extended_with(DescLayer{V})};
  const auto comp = compose(s1, s2, V, cfg);
  CHECK(comp.gamma1 == 64.0);
  CHECK(comp.gamma2 == 16.0);
  CHECK(comp.gamma_composite == 1024.0);
  CHECK(comp.multiplicative_holds);
  CHECK(comp.multiplicative_exact);
  CHECK(comp.max_bound_holds);
  CHECK(comp.refinement.refines);
  // nested chains share structure: the additive bound must not be asserted
  CHECK_FALSE(comp.additive_asserted);

  // identity stage composes neutrally
  StageReport id{double(m2.exec_irrev_bits), double(m2.exec_irrev_bits),
                 s2.desc};
  const auto neutral = compose(s2, id, V, cfg);
  CHECK(neutral.gamma2 == 1.0);
  CHECK(neutral.gamma_composite == neutral.gamma1);

  // refinement failure is an error
  StageReport unrelated{16.0, 8.0, SubstrateDesc::of_subspace(
                                       AffineSubspace::random(n, d_w, 99))};
  CHECK_THROWS_AS(compose(unrelated, s1, V, cfg), error);
}

TEST_CASE("compose: composite adaptation floor from concatenated samples") {
  Rng rng(707);
  const auto W = AffineSubspace::random(12, 8, 2);
  const auto V = nested_inside(W, 4, rng);
  const LawConfig cfg = LawConfig::for_dimension(12);

  StageReport s1{std::ldexp(12.0, 12), std::ldexp(12.0, 8),
                 SubstrateDesc::of_subspace(W)};
  StageReport s2{std::ldexp(12.0, 8), std::ldexp(12.0, 4),
                 s1.desc.extended_with(DescLayer{V})};
  const auto comp = compose(s1, s2, V, cfg);

  const SampleSet d_tot = draw_samples(V, 6, 9);
  const auto info =
      mutual_info(Encodable{V}, Encodable{d_tot});
  PhysicalConfig phys;
  const double floor = adaptation_floor(phys, double(comp.eta_composite_bits),
                                        double(info.bits),
                                        double(cfg.c_u_bits));
  CHECK(floor >= 0);
  // charged erasures for installing V from the samples dominate the floor
  CostMeter meter;
  const auto res = adapt_from_samples(d_tot, V, meter);
  const double charged =
      energy_floor(phys, double(res.residual_bits), Substrate::adapt);
  CHECK(charged >= floor - 1e-21);
}

TEST_CASE("compose: additive bound asserted only for disjoint contributions") {
  Rng rng(909);
  const auto sigma = AffineSubspace::random(10, 4, 1);
  const LawConfig cfg = LawConfig::for_dimension(10);

  // stage 1 carries nothing about sigma (a raw payload); stage 2 adds the
  // class structure on top: contributions are disjoint, additive asserted
  SubstrateDesc d1;
  d1.layers.emplace_back(rng.bitvec(40));
  const SubstrateDesc d2 = d1.extended_with(DescLayer{sigma});
  StageReport s1{1024.0, 1000.0, d1};
  StageReport s2{1000.0, 64.0, d2};
  const auto comp = compose(s1, s2, sigma, cfg);
  CHECK(comp.eta1_bits == 0);
  CHECK(comp.overlap_bits <= cfg.header_overhead_bits);
  CHECK(comp.additive_asserted);
  CHECK(comp.additive_holds);
}

TEST_CASE("selectivity law holds on every desk-scale scenario") {
  Rng rng(1111);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(15);
    const std::size_t d = rng.index(n + 1);
    const auto V = AffineSubspace::random(n, d, rng.word());
    const double gamma = std::ldexp(1.0, int(n) - int(d));
    const auto mu =
        mutual_info(Encodable{V}, Encodable{SubstrateDesc::of_subspace(V)});
    const auto check = check_selectivity(gamma, double(mu.bits),
                                         LawConfig::for_dimension(n));
    REQUIRE(check.holds);
    REQUIRE(check.slack_bits > 0);
  }
}
