#pragma once

#include <variant>
#include <vector>

#include "catalab/affine.hpp"
#include "catalab/instances.hpp"

namespace catalab {

/// Snapshot of a finite answer table: stored instance/answer pairs.
struct CacheEntry {
  InstanceSpec instance;
  std::vector<BitVec> answers;  // sorted by value

  bool operator==(const CacheEntry&) const = default;
};

struct CacheTable {
  std::vector<CacheEntry> entries;

  bool operator==(const CacheTable&) const = default;
};

/// One layer of a substrate description.
using DescLayer = std::variant<AffineSubspace, CacheTable, BitVec>;

/// Layered substrate description. A description refines another when the
/// other's layer list is a prefix of its own; the codecs exploit exactly
/// that structure.
struct SubstrateDesc {
  std::vector<DescLayer> layers;

  static SubstrateDesc of_subspace(const AffineSubspace& V) {
    SubstrateDesc d;
    d.layers.emplace_back(V);
    return d;
  }

  static SubstrateDesc of_cache(const CacheTable& t) {
    SubstrateDesc d;
    d.layers.emplace_back(t);
    return d;
  }

  /// The receiver's layers plus one more.
  SubstrateDesc extended_with(DescLayer layer) const {
    SubstrateDesc d = *this;
    d.layers.push_back(std::move(layer));
    return d;
  }

  bool operator==(const SubstrateDesc&) const = default;
};

/// True when `coarse` is a layer-prefix of `fine`.
inline bool is_layer_prefix(const SubstrateDesc& coarse,
                            const SubstrateDesc& fine) {
  if (coarse.layers.size() > fine.layers.size()) return false;
  for (std::size_t i = 0; i < coarse.layers.size(); ++i)
    if (!(coarse.layers[i] == fine.layers[i])) return false;
  return true;
}

}  // namespace catalab
