#pragma once

#include <cmath>
#include <cstdint>

#include "catalab/errors.hpp"

namespace catalab {

enum class Substrate { exec, adapt };

/// Counters of irreversible bit-operations, split by substrate role.
/// Counters only increase while a run is in flight; cross-context
/// aggregation goes through merge (component-wise sum).
struct CostMeter {
  std::uint64_t exec_irrev_bits = 0;
  std::uint64_t adapt_erase_bits = 0;
  std::uint64_t cycles = 0;

  bool operator==(const CostMeter&) const = default;
};

inline void record(CostMeter& m, Substrate role, std::uint64_t bits) {
  if (bits == 0) throw error("record: bits must be positive");
  if (role == Substrate::exec)
    m.exec_irrev_bits += bits;
  else
    m.adapt_erase_bits += bits;
}

inline CostMeter merge(const CostMeter& a, const CostMeter& b) {
  return CostMeter{a.exec_irrev_bits + b.exec_irrev_bits,
                   a.adapt_erase_bits + b.adapt_erase_bits,
                   a.cycles + b.cycles};
}

/// Speed-up and logarithmic barrier between two metered op counts.
struct SpeedupReport {
  double n_baseline_bits = 0;
  double n_catalytic_bits = 0;
  double gamma = 0;
  double barrier_baseline = 0;
  double barrier_catalytic = 0;
};

inline SpeedupReport speedup(double n_baseline, double n_catalytic) {
  if (!(n_baseline > 0) || !(n_catalytic > 0))
    throw error("speedup: counts must be positive");
  SpeedupReport r;
  r.n_baseline_bits = n_baseline;
  r.n_catalytic_bits = n_catalytic;
  r.gamma = n_baseline / n_catalytic;
  r.barrier_baseline = std::log2(n_baseline);
  r.barrier_catalytic = std::log2(n_catalytic);
  return r;
}

/// One rung of a class-augmentation ladder: benchmark size and measured gamma.
struct LadderPoint {
  std::size_t size = 0;
  double gamma = 0;
};

}  // namespace catalab
