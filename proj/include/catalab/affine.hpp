#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "catalab/bits.hpp"
#include "catalab/errors.hpp"

namespace catalab {

inline constexpr std::size_t kEnumerationGuard = 28;

/// Affine subspace of {0,1}^n over GF(2): offset + span(basis).
/// Stored canonically (basis in reduced row echelon form, offset reduced to
/// zero on every pivot column), so equal point sets compare equal memberwise
/// and the descriptor codec is automatically canonical.
class AffineSubspace {
 public:
  AffineSubspace(std::size_t n, const std::vector<BitVec>& basis_rows,
                 const BitVec& offset)
      : n_(n), basis_(n) {
    for (const auto& r : basis_rows) {
      if (r.size() != n) throw error("AffineSubspace: row size mismatch");
      if (!basis_.insert(r))
        throw error("AffineSubspace: dependent basis rows");
    }
    if (offset.size() != n) throw error("AffineSubspace: offset size mismatch");
    offset_ = basis_.reduce(offset);
  }

  static AffineSubspace random(std::size_t n, std::size_t d,
                               std::uint64_t seed) {
    if (d > n) throw error("AffineSubspace::random: d > n");
    Rng rng(mix_seed(seed, 0xa11fef));
    std::vector<BitVec> rows;
    Gf2Basis probe(n);
    while (probe.dim() < d) {
      BitVec v = rng.bitvec(n);
      if (probe.insert(v)) rows.push_back(std::move(v));
    }
    return AffineSubspace(n, rows, rng.bitvec(n));
  }

  std::size_t n() const { return n_; }
  std::size_t dim() const { return basis_.dim(); }
  const Gf2Basis& basis() const { return basis_; }
  const std::vector<BitVec>& rows() const { return basis_.rows(); }
  const BitVec& offset() const { return offset_; }

  bool contains(const BitVec& x) const {
    if (x.size() != n_) return false;
    return basis_.contains(x ^ offset_);
  }

  /// Point reached from the offset by the basis combination in `combo`
  /// (bit j selects canonical row j). Requires dim <= 64.
  BitVec point_from_combo(std::uint64_t combo) const {
    BitVec p = offset_;
    for (std::size_t j = 0; j < basis_.dim(); ++j)
      if ((combo >> j) & 1u) p ^= basis_.rows()[j];
    return p;
  }

  /// All 2^d points, in combination-counter order.
  std::vector<BitVec> enumerate() const {
    if (dim() > kEnumerationGuard)
      throw guard_error("AffineSubspace::enumerate: dimension guard exceeded");
    std::vector<BitVec> pts;
    pts.reserve(std::size_t(1) << dim());
    for (std::uint64_t c = 0; c < (std::uint64_t(1) << dim()); ++c)
      pts.push_back(point_from_combo(c));
    return pts;
  }

  bool operator==(const AffineSubspace& o) const {
    return n_ == o.n_ && basis_ == o.basis_ && offset_ == o.offset_;
  }

 private:
  std::size_t n_;
  Gf2Basis basis_;
  BitVec offset_;
};

/// True when every point of `inner` lies in `outer`.
inline bool is_subspace_of(const AffineSubspace& inner,
                           const AffineSubspace& outer) {
  if (inner.n() != outer.n()) return false;
  for (const auto& r : inner.rows())
    if (!outer.basis().contains(r)) return false;
  return outer.basis().contains(inner.offset() ^ outer.offset());
}

/// Adaptation input: m assignments, each a point of some subspace.
struct SampleSet {
  std::size_t n = 0;
  std::vector<BitVec> points;

  std::size_t m() const { return points.size(); }
  bool operator==(const SampleSet&) const = default;
};

inline SampleSet draw_samples(const AffineSubspace& V, std::size_t m,
                              std::uint64_t seed) {
  if (V.dim() > 64) throw guard_error("draw_samples: dimension > 64");
  Rng rng(mix_seed(seed, 0x5a3d1e));
  SampleSet s{V.n(), {}};
  s.points.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    s.points.push_back(V.point_from_combo(rng.bits(unsigned(V.dim()))));
  return s;
}

/// Affine hull of a sample set: anchor point plus the span of differences.
/// Deterministic: the anchor is the first point and the direction basis is
/// the canonical RREF of the differences.
struct AffineHull {
  std::size_t r = 0;  // hull dimension
  std::optional<BitVec> anchor;
  Gf2Basis directions;
};

inline AffineHull affine_hull(const SampleSet& s) {
  AffineHull h;
  h.directions = Gf2Basis(s.n);
  if (s.points.empty()) return h;
  h.anchor = s.points.front();
  for (std::size_t i = 1; i < s.points.size(); ++i)
    h.directions.insert(s.points[i] ^ *h.anchor);
  h.r = h.directions.dim();
  return h;
}

}  // namespace catalab
