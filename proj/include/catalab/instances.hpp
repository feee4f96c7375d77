#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "catalab/affine.hpp"
#include "catalab/bits.hpp"
#include "catalab/errors.hpp"

namespace catalab {

/// Parity constraint: xor of the named variables equals target.
/// After decomposition every constraint has support size <= 3; indices
/// below n are primary variables, indices >= n are chaining auxiliaries.
struct ParityConstraint {
  std::vector<std::uint32_t> vars;
  bool target = false;

  bool operator==(const ParityConstraint&) const = default;
};

/// Width-<=3 parity system whose solutions, projected to the first n
/// variables, are exactly one affine subspace; every solution extends
/// uniquely to the auxiliary variables.
struct InstanceSpec {
  std::size_t n = 0;
  std::size_t aux_count = 0;
  std::vector<ParityConstraint> constraints;
  std::uint64_t presentation_seed = 0;

  std::size_t var_count() const { return n + aux_count; }

  /// Structural equality; the presentation seed is provenance, not content.
  bool operator==(const InstanceSpec& o) const {
    return n == o.n && aux_count == o.aux_count && constraints == o.constraints;
  }
};

namespace detail {

/// Basis of the orthogonal complement of V's row space. With the basis in
/// RREF, one kernel vector per free column: k_f[f] = 1 and k_f[pivot_j] =
/// row_j[f].
inline std::vector<BitVec> parity_check_rows(const AffineSubspace& V) {
  const std::size_t n = V.n();
  const auto& pivots = V.basis().pivots();
  const auto& rows = V.basis().rows();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<BitVec> kernel;
  kernel.reserve(n - V.dim());
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVec h(n);
    h.set(f, true);
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (rows[j].get(f)) h.set(pivots[j], true);
    kernel.push_back(std::move(h));
  }
  return kernel;
}

}  // namespace detail

/// Builds a randomized width-<=3 presentation of "x in V". The parity-check
/// form is mixed by invertible row operations keyed to the seed, then each
/// wide parity is chained through auxiliary variables.
inline InstanceSpec make_instance(const AffineSubspace& V, std::uint64_t seed) {
  const std::size_t n = V.n();
  InstanceSpec inst;
  inst.n = n;
  inst.presentation_seed = seed;

  std::vector<BitVec> rows = detail::parity_check_rows(V);
  std::vector<bool> targets;
  targets.reserve(rows.size());
  for (const auto& h : rows) targets.push_back(h.dot(V.offset()));

  Rng rng(mix_seed(seed, 0x1257a3));
  const std::size_t m = rows.size();
  if (m >= 2) {
    for (std::size_t t = 0; t < 2 * m; ++t) {
      const std::size_t i = rng.index(m);
      std::size_t j = rng.index(m - 1);
      if (j >= i) ++j;
      rows[i] ^= rows[j];
      targets[i] = targets[i] != targets[j];
    }
    for (std::size_t i = m; i-- > 1;) {
      const std::size_t j = rng.index(i + 1);
      std::swap(rows[i], rows[j]);
      const bool t = targets[i];
      targets[i] = targets[j];
      targets[j] = t;
    }
  }

  std::uint32_t next_aux = std::uint32_t(n);
  for (std::size_t c = 0; c < rows.size(); ++c) {
    std::vector<std::uint32_t> support;
    for (std::size_t i = 0; i < n; ++i)
      if (rows[c].get(i)) support.push_back(std::uint32_t(i));
    const std::size_t w = support.size();
    if (w == 0) continue;  // mixing keeps rows nonzero; defensive skip
    if (w <= 3) {
      inst.constraints.push_back({support, targets[c]});
      continue;
    }
    // chain: a_0 = s_0 ^ s_1, a_k = a_{k-1} ^ s_{k+1}, tail of width 3
    std::uint32_t prev = next_aux++;
    inst.constraints.push_back({{support[0], support[1], prev}, false});
    for (std::size_t k = 2; k + 2 < w; ++k) {
      const std::uint32_t cur = next_aux++;
      inst.constraints.push_back({{prev, support[k], cur}, false});
      prev = cur;
    }
    inst.constraints.push_back({{prev, support[w - 2], support[w - 1]},
                                targets[c]});
  }
  inst.aux_count = next_aux - n;
  return inst;
}

/// Attempts to extend a primary assignment to the auxiliaries. Chain
/// constraints determine each auxiliary exactly once, in emission order;
/// constraints with no unknowns are checked. Returns the full assignment
/// when x extends to a satisfying one.
inline std::optional<BitVec> extend_assignment(const InstanceSpec& inst,
                                               const BitVec& x) {
  if (x.size() != inst.n) throw error("extend_assignment: size mismatch");
  BitVec full(inst.var_count());
  for (std::size_t i = 0; i < inst.n; ++i) full.set(i, x.get(i));
  std::vector<signed char> aux_known(inst.aux_count, 0);
  for (const auto& c : inst.constraints) {
    bool sum = c.target;
    int unknown = -1;
    for (auto v : c.vars) {
      if (v < inst.n) {
        sum = sum != full.get(v);
      } else {
        const std::size_t a = v - inst.n;
        if (aux_known[a]) {
          sum = sum != full.get(v);
        } else {
          if (unknown >= 0) throw error("extend_assignment: malformed chain");
          unknown = int(v);
        }
      }
    }
    if (unknown < 0) {
      if (sum) return std::nullopt;  // violated constraint
    } else {
      full.set(std::size_t(unknown), sum);
      aux_known[std::size_t(unknown) - inst.n] = 1;
    }
  }
  return full;
}

inline bool satisfies(const InstanceSpec& inst, const BitVec& x) {
  return extend_assignment(inst, x).has_value();
}

}  // namespace catalab
