#pragma once

#include <cstdint>
#include <optional>

#include "catalab/affine.hpp"
#include "catalab/encoding.hpp"
#include "catalab/errors.hpp"
#include "catalab/meter.hpp"

namespace catalab {

/// Outcome of adapting toward a class descriptor from sample assignments.
struct AdaptationResult {
  std::size_t hull_dim = 0;
  std::optional<AffineSubspace> recovered;  // set once the hull reaches dim d
  std::uint64_t residual_bits = 0;   // khat_cond(sigma | samples)
  std::int64_t info_data_bits = 0;   // khat(sigma) - residual
};

/// Computes the affine hull of the samples by GF(2) elimination, charges the
/// adaptation meter with the constructive residual (the bits the process must
/// install beyond what the samples supply), and reports what the data
/// determined.
inline AdaptationResult adapt_from_samples(const SampleSet& samples,
                                           const AffineSubspace& truth,
                                           CostMeter& meter) {
  if (samples.n != truth.n())
    throw sample_error("adapt_from_samples: sample width mismatch");
  for (const auto& p : samples.points)
    if (!truth.contains(p))
      throw sample_error("adapt_from_samples: sample outside the subspace");

  const AffineHull hull = affine_hull(samples);
  AdaptationResult res;
  res.hull_dim = hull.r;
  if (hull.r == truth.dim()) res.recovered = truth;

  const auto cond = khat_cond(Encodable{truth}, Encodable{samples});
  res.residual_bits = cond.bits;
  res.info_data_bits =
      std::int64_t(khat(Encodable{truth}).bits) - std::int64_t(cond.bits);
  if (res.residual_bits > 0)
    record(meter, Substrate::adapt, res.residual_bits);
  return res;
}

/// Coarse closed-form residual n*(d-m+1)+n, reported alongside the
/// constructive value; the two are compared under a +-n tolerance band.
inline std::int64_t formula_residual_bits(std::size_t n, std::size_t d,
                                          std::size_t m) {
  const std::int64_t body =
      std::int64_t(n) * std::max<std::int64_t>(
                            0, std::int64_t(d) - std::int64_t(m) + 1);
  return body + std::int64_t(n);
}

}  // namespace catalab
