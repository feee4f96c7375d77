#pragma once

// Explicit self-delimiting codecs. Every estimate produced here is the exact
// bit length of a concrete codeword this registry can emit and decode, so all
// description-length figures are constructive upper bounds by construction.
//
// Unconditional schemes encode an object from scratch. Conditional schemes
// encode only the residual needed to rebuild the object from a `given`
// object; each one is a small set of routes, selected by a self-delimiting
// route header, and the encoder picks the shortest applicable route. Route 0
// is always a verbatim replay of the unconditional encoding, which keeps
// every conditional estimate within one header of the unconditional one.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "catalab/affine.hpp"
#include "catalab/bits.hpp"
#include "catalab/errors.hpp"
#include "catalab/instances.hpp"
#include "catalab/substrate.hpp"

namespace catalab {

// Scheme tags. Unconditional schemes are the object-kind ids; a conditional
// scheme id packs the (object, given) kind pair.
inline constexpr std::uint8_t kSchemeUint = 1;
inline constexpr std::uint8_t kSchemeBits = 2;
inline constexpr std::uint8_t kSchemeSubspace = 3;
inline constexpr std::uint8_t kSchemeSamples = 4;
inline constexpr std::uint8_t kSchemeInstance = 5;
inline constexpr std::uint8_t kSchemeCache = 6;
inline constexpr std::uint8_t kSchemeDesc = 7;
inline constexpr std::uint8_t kSchemeCondBase = 16;
inline constexpr std::uint8_t kSchemeCondJoint = 80;

using Encodable = std::variant<BitVec, AffineSubspace, SampleSet, InstanceSpec,
                               CacheTable, SubstrateDesc>;

inline std::uint8_t object_kind(const Encodable& x) {
  switch (x.index()) {
    case 0: return kSchemeBits;
    case 1: return kSchemeSubspace;
    case 2: return kSchemeSamples;
    case 3: return kSchemeInstance;
    case 4: return kSchemeCache;
    case 5: return kSchemeDesc;
  }
  throw codec_error("object_kind: bad variant");
}

inline std::uint8_t cond_scheme(const Encodable& x, const Encodable& given) {
  return std::uint8_t(kSchemeCondBase + 8 * x.index() + int(given.index()));
}

struct Codeword {
  BitVec bits;
  std::uint8_t scheme_id = 0;

  std::size_t length() const { return bits.size(); }

  /// Report form: scheme_id:hex(bits):bitlen.
  std::string to_string() const {
    return std::to_string(int(scheme_id)) + ":" + bits.to_hex() + ":" +
           std::to_string(bits.size());
  }
};

struct ComplexityEstimate {
  enum class Kind { unconditional, conditional };
  std::uint64_t bits = 0;
  Kind kind = Kind::unconditional;
  std::uint8_t method = 0;
  bool fallback = false;  // conditional request served by the unconditional bound
};

struct MutualInfoEstimate {
  std::int64_t bits = 0;
  std::string x_id;
  std::string y_id;
};

// ---------------------------------------------------------------------------
// plain integer codec

inline Codeword encode_uint(std::uint64_t k) {
  BitWriter w;
  w.put_uint(k);
  return Codeword{w.take(), kSchemeUint};
}

inline std::uint64_t decode_uint(const Codeword& cw) {
  BitReader r(cw.bits);
  const std::uint64_t k = r.get_uint();
  if (!r.exhausted()) throw codec_error("decode_uint: trailing bits");
  return k;
}

// ---------------------------------------------------------------------------
// unconditional bodies

namespace codec {

inline void write_bits_body(BitWriter& w, const BitVec& v) {
  w.put_uint(v.size());
  w.put_vec(v);
}

inline BitVec read_bits_body(BitReader& r) {
  const std::uint64_t n = r.get_uint();
  return r.get_vec(std::size_t(n));
}

inline void write_subspace_body(BitWriter& w, const AffineSubspace& V) {
  w.put_uint(V.n());
  w.put_uint(V.dim());
  for (const auto& row : V.rows()) w.put_vec(row);
  w.put_vec(V.offset());
}

inline AffineSubspace read_subspace_body(BitReader& r) {
  const std::size_t n = std::size_t(r.get_uint());
  const std::size_t d = std::size_t(r.get_uint());
  std::vector<BitVec> rows;
  rows.reserve(d);
  for (std::size_t i = 0; i < d; ++i) rows.push_back(r.get_vec(n));
  BitVec offset = r.get_vec(n);
  return AffineSubspace(n, rows, offset);
}

inline void write_samples_body(BitWriter& w, const SampleSet& s) {
  w.put_uint(s.n);
  w.put_uint(s.points.size());
  for (const auto& p : s.points) w.put_vec(p);
}

inline SampleSet read_samples_body(BitReader& r) {
  SampleSet s;
  s.n = std::size_t(r.get_uint());
  const std::size_t m = std::size_t(r.get_uint());
  s.points.reserve(m);
  for (std::size_t i = 0; i < m; ++i) s.points.push_back(r.get_vec(s.n));
  return s;
}

inline void write_instance_body(BitWriter& w, const InstanceSpec& inst) {
  w.put_uint(inst.n);
  w.put_uint(inst.aux_count);
  w.put_uint(inst.constraints.size());
  for (const auto& c : inst.constraints) {
    w.put_uint(c.vars.size());
    for (auto v : c.vars) w.put_uint(v);
    w.put(c.target);
  }
}

inline InstanceSpec read_instance_body(BitReader& r) {
  InstanceSpec inst;
  inst.n = std::size_t(r.get_uint());
  inst.aux_count = std::size_t(r.get_uint());
  const std::size_t nc = std::size_t(r.get_uint());
  inst.constraints.reserve(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    ParityConstraint c;
    const std::size_t w = std::size_t(r.get_uint());
    c.vars.reserve(w);
    for (std::size_t j = 0; j < w; ++j)
      c.vars.push_back(std::uint32_t(r.get_uint()));
    c.target = r.get();
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

inline void write_cache_body(BitWriter& w, const CacheTable& t) {
  w.put_uint(t.entries.size());
  for (const auto& e : t.entries) {
    write_instance_body(w, e.instance);
    w.put_uint(e.answers.size());
    for (const auto& a : e.answers) w.put_vec(a);
  }
}

inline CacheTable read_cache_body(BitReader& r) {
  CacheTable t;
  const std::size_t k = std::size_t(r.get_uint());
  t.entries.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    CacheEntry e;
    e.instance = read_instance_body(r);
    const std::size_t na = std::size_t(r.get_uint());
    e.answers.reserve(na);
    for (std::size_t j = 0; j < na; ++j)
      e.answers.push_back(r.get_vec(e.instance.n));
    t.entries.push_back(std::move(e));
  }
  return t;
}

inline constexpr std::uint64_t kLayerSubspace = 0;
inline constexpr std::uint64_t kLayerCache = 1;
inline constexpr std::uint64_t kLayerBits = 2;

inline void write_layer_body(BitWriter& w, const DescLayer& layer) {
  if (const auto* V = std::get_if<AffineSubspace>(&layer)) {
    w.put_uint(kLayerSubspace);
    write_subspace_body(w, *V);
  } else if (const auto* t = std::get_if<CacheTable>(&layer)) {
    w.put_uint(kLayerCache);
    write_cache_body(w, *t);
  } else {
    w.put_uint(kLayerBits);
    write_bits_body(w, std::get<BitVec>(layer));
  }
}

inline DescLayer read_layer_body(BitReader& r) {
  const std::uint64_t tag = r.get_uint();
  switch (tag) {
    case kLayerSubspace: return read_subspace_body(r);
    case kLayerCache: return read_cache_body(r);
    case kLayerBits: return read_bits_body(r);
  }
  throw codec_error("read_layer_body: unknown layer tag");
}

inline void write_desc_body(BitWriter& w, const SubstrateDesc& d) {
  w.put_uint(d.layers.size());
  for (const auto& layer : d.layers) write_layer_body(w, layer);
}

inline SubstrateDesc read_desc_body(BitReader& r) {
  SubstrateDesc d;
  const std::size_t k = std::size_t(r.get_uint());
  d.layers.reserve(k);
  for (std::size_t i = 0; i < k; ++i) d.layers.push_back(read_layer_body(r));
  return d;
}

inline void write_object_body(BitWriter& w, const Encodable& x) {
  std::visit(
      [&w](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BitVec>)
          write_bits_body(w, v);
        else if constexpr (std::is_same_v<T, AffineSubspace>)
          write_subspace_body(w, v);
        else if constexpr (std::is_same_v<T, SampleSet>)
          write_samples_body(w, v);
        else if constexpr (std::is_same_v<T, InstanceSpec>)
          write_instance_body(w, v);
        else if constexpr (std::is_same_v<T, CacheTable>)
          write_cache_body(w, v);
        else
          write_desc_body(w, v);
      },
      x);
}

inline Encodable read_object_body(std::uint8_t kind, BitReader& r) {
  switch (kind) {
    case kSchemeBits: return read_bits_body(r);
    case kSchemeSubspace: return read_subspace_body(r);
    case kSchemeSamples: return read_samples_body(r);
    case kSchemeInstance: return read_instance_body(r);
    case kSchemeCache: return read_cache_body(r);
    case kSchemeDesc: return read_desc_body(r);
  }
  throw codec_error("read_object_body: unknown scheme");
}

}  // namespace codec

inline Codeword encode_object(const Encodable& x) {
  BitWriter w;
  codec::write_object_body(w, x);
  return Codeword{w.take(), object_kind(x)};
}

inline Encodable decode_object(const Codeword& cw) {
  BitReader r(cw.bits);
  Encodable x = codec::read_object_body(cw.scheme_id, r);
  if (!r.exhausted()) throw codec_error("decode_object: trailing bits");
  return x;
}

/// Class-descriptor codec: header(n) | header(d) | d*n basis bits | n offset
/// bits, basis rows in canonical order.
inline Codeword encode_class_descriptor(const AffineSubspace& V) {
  return encode_object(Encodable{V});
}

// ---------------------------------------------------------------------------
// conditional routes

namespace codec {

// Route ids are per (x, given) pair, ordered cheapest-header-first: the
// structural routes take the low ids and a verbatim replay of the
// unconditional encoding is always the highest id, so a fully determined
// object costs only a short route header.

struct Candidate {
  std::uint64_t route;
  BitWriter payload;

  std::size_t total() const {
    return std::size_t(uint_code_length(route)) + payload.size();
  }
};

inline BitVec seal(std::vector<Candidate>& cands) {
  if (cands.empty()) throw codec_error("conditional codec: no route");
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (cands[i].total() < cands[best].total()) best = i;
  BitWriter w;
  w.put_uint(cands[best].route);
  w.put_vec(cands[best].payload.take());
  return w.take();
}

// sub | sub: 0 equality, 1 coordinates (x inside g), 2 extension (g inside
// x), 3 replay.
inline constexpr std::uint64_t kSubSubEqual = 0;
inline constexpr std::uint64_t kSubSubCoords = 1;
inline constexpr std::uint64_t kSubSubExtension = 2;
inline constexpr std::uint64_t kSubSubReplay = 3;

inline BitVec cond_sub_given_sub(const AffineSubspace& x,
                                 const AffineSubspace& g) {
  std::vector<Candidate> cands;
  if (x == g) cands.push_back(Candidate{kSubSubEqual, {}});
  if (x.n() == g.n() && is_subspace_of(x, g)) {
    // rows and offset expressed in coordinates of g's canonical basis
    Candidate c{kSubSubCoords, {}};
    c.payload.put_uint(x.dim());
    const auto& gp = g.basis().pivots();
    for (const auto& row : x.rows())
      for (auto p : gp) c.payload.put(row.get(p));
    const BitVec t = x.offset() ^ g.offset();
    for (auto p : gp) c.payload.put(t.get(p));
    cands.push_back(std::move(c));
  }
  if (x.n() == g.n() && is_subspace_of(g, x)) {
    Candidate c{kSubSubExtension, {}};
    c.payload.put_uint(x.dim() - g.dim());
    Gf2Basis span = g.basis();
    for (const auto& row : x.rows())
      if (span.insert(row)) c.payload.put_vec(row);
    cands.push_back(std::move(c));
  }
  {
    Candidate replay{kSubSubReplay, {}};
    write_subspace_body(replay.payload, x);
    cands.push_back(std::move(replay));
  }
  return seal(cands);
}

inline AffineSubspace read_cond_sub_given_sub(BitReader& r,
                                              const AffineSubspace& g) {
  const std::uint64_t route = r.get_uint();
  switch (route) {
    case kSubSubEqual: return g;
    case kSubSubCoords: {
      const std::size_t d = std::size_t(r.get_uint());
      std::vector<BitVec> rows;
      rows.reserve(d);
      for (std::size_t i = 0; i < d; ++i) {
        BitVec row(g.n());
        for (const auto& grow : g.rows())
          if (r.get()) row ^= grow;
        rows.push_back(std::move(row));
      }
      BitVec offset = g.offset();
      for (const auto& grow : g.rows())
        if (r.get()) offset ^= grow;
      return AffineSubspace(g.n(), rows, offset);
    }
    case kSubSubExtension: {
      const std::size_t extra = std::size_t(r.get_uint());
      std::vector<BitVec> rows = g.rows();
      for (std::size_t i = 0; i < extra; ++i) rows.push_back(r.get_vec(g.n()));
      return AffineSubspace(g.n(), rows, g.offset());
    }
    case kSubSubReplay: return read_subspace_body(r);
  }
  throw codec_error("cond sub|sub: unknown route");
}

// sub | samples: 0 hull completion, 1 replay. The hull payload carries the
// missing-row count, the d-r rows completing the sample hull, and (only when
// no anchor point exists) the raw offset.
inline constexpr std::uint64_t kSubSamplesHull = 0;
inline constexpr std::uint64_t kSubSamplesReplay = 1;

inline BitVec cond_sub_given_samples(const AffineSubspace& x,
                                     const SampleSet& s) {
  std::vector<Candidate> cands;
  bool applicable = s.n == x.n();
  for (const auto& p : s.points)
    if (applicable && !x.contains(p)) applicable = false;
  if (applicable) {
    const AffineHull hull = affine_hull(s);
    Candidate c{kSubSamplesHull, {}};
    c.payload.put_uint(x.dim() - hull.r);
    Gf2Basis span = hull.directions;
    for (const auto& row : x.rows())
      if (span.insert(row)) c.payload.put_vec(row);
    if (!hull.anchor) c.payload.put_vec(x.offset());
    cands.push_back(std::move(c));
  }
  {
    Candidate replay{kSubSamplesReplay, {}};
    write_subspace_body(replay.payload, x);
    cands.push_back(std::move(replay));
  }
  return seal(cands);
}

inline AffineSubspace read_cond_sub_given_samples(BitReader& r,
                                                  const SampleSet& s) {
  const std::uint64_t route = r.get_uint();
  if (route == kSubSamplesReplay) return read_subspace_body(r);
  if (route != kSubSamplesHull)
    throw codec_error("cond sub|samples: unknown route");
  const AffineHull hull = affine_hull(s);
  const std::size_t missing = std::size_t(r.get_uint());
  std::vector<BitVec> rows = hull.directions.rows();
  for (std::size_t i = 0; i < missing; ++i) rows.push_back(r.get_vec(s.n));
  BitVec offset = hull.anchor ? *hull.anchor : r.get_vec(s.n);
  return AffineSubspace(s.n, rows, offset);
}

// sub | desc: route i < layer count delegates to layer i when that layer is
// itself a subspace; the last route replays. Cache and raw layers carry no
// registered route to a subspace, which is deliberate: a finite answer table
// is modeled as instance-level data, not class structure.
inline BitVec cond_sub_given_desc(const AffineSubspace& x,
                                  const SubstrateDesc& g) {
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    if (const auto* layerV = std::get_if<AffineSubspace>(&g.layers[i])) {
      Candidate c{i, {}};
      c.payload.put_vec(cond_sub_given_sub(x, *layerV));
      cands.push_back(std::move(c));
    }
  }
  {
    Candidate replay{g.layers.size(), {}};
    write_subspace_body(replay.payload, x);
    cands.push_back(std::move(replay));
  }
  return seal(cands);
}

inline AffineSubspace read_cond_sub_given_desc(BitReader& r,
                                               const SubstrateDesc& g) {
  const std::uint64_t route = r.get_uint();
  if (route == g.layers.size()) return read_subspace_body(r);
  if (route > g.layers.size()) throw codec_error("cond sub|desc: bad layer");
  const auto* layerV = std::get_if<AffineSubspace>(&g.layers[std::size_t(route)]);
  if (!layerV) throw codec_error("cond sub|desc: layer is not a subspace");
  return read_cond_sub_given_sub(r, *layerV);
}

// desc | desc: 0 equality, 1 layer prefix, 2 replay.
inline constexpr std::uint64_t kDescDescEqual = 0;
inline constexpr std::uint64_t kDescDescPrefix = 1;
inline constexpr std::uint64_t kDescDescReplay = 2;

inline BitVec cond_desc_given_desc(const SubstrateDesc& x,
                                   const SubstrateDesc& g) {
  std::vector<Candidate> cands;
  if (x == g) cands.push_back(Candidate{kDescDescEqual, {}});
  if (is_layer_prefix(x, g) && x.layers.size() < g.layers.size()) {
    Candidate c{kDescDescPrefix, {}};
    c.payload.put_uint(x.layers.size());
    cands.push_back(std::move(c));
  }
  {
    Candidate replay{kDescDescReplay, {}};
    write_desc_body(replay.payload, x);
    cands.push_back(std::move(replay));
  }
  return seal(cands);
}

inline SubstrateDesc read_cond_desc_given_desc(BitReader& r,
                                               const SubstrateDesc& g) {
  const std::uint64_t route = r.get_uint();
  switch (route) {
    case kDescDescEqual: return g;
    case kDescDescPrefix: {
      const std::size_t k = std::size_t(r.get_uint());
      if (k > g.layers.size()) throw codec_error("cond desc|desc: bad prefix");
      SubstrateDesc d;
      d.layers.assign(g.layers.begin(), g.layers.begin() + long(k));
      return d;
    }
    case kDescDescReplay: return read_desc_body(r);
  }
  throw codec_error("cond desc|desc: unknown route");
}

// desc | sub: 0 layerwise (subspace layers compressed against the given
// subspace), 1 replay.
inline constexpr std::uint64_t kDescSubLayerwise = 0;
inline constexpr std::uint64_t kDescSubReplay = 1;

inline BitVec cond_desc_given_sub(const SubstrateDesc& x,
                                  const AffineSubspace& g) {
  std::vector<Candidate> cands;
  {
    Candidate c{kDescSubLayerwise, {}};
    c.payload.put_uint(x.layers.size());
    for (const auto& layer : x.layers) {
      if (const auto* V = std::get_if<AffineSubspace>(&layer)) {
        c.payload.put_uint(kLayerSubspace);
        c.payload.put_vec(cond_sub_given_sub(*V, g));
      } else {
        write_layer_body(c.payload, layer);
      }
    }
    cands.push_back(std::move(c));
  }
  {
    Candidate replay{kDescSubReplay, {}};
    write_desc_body(replay.payload, x);
    cands.push_back(std::move(replay));
  }
  return seal(cands);
}

inline SubstrateDesc read_cond_desc_given_sub(BitReader& r,
                                              const AffineSubspace& g) {
  const std::uint64_t route = r.get_uint();
  if (route == kDescSubReplay) return read_desc_body(r);
  if (route != kDescSubLayerwise)
    throw codec_error("cond desc|sub: unknown route");
  SubstrateDesc d;
  const std::size_t k = std::size_t(r.get_uint());
  d.layers.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t tag = r.get_uint();
    if (tag == kLayerSubspace)
      d.layers.emplace_back(read_cond_sub_given_sub(r, g));
    else if (tag == kLayerCache)
      d.layers.emplace_back(read_cache_body(r));
    else if (tag == kLayerBits)
      d.layers.emplace_back(read_bits_body(r));
    else
      throw codec_error("cond desc|sub: bad layer tag");
  }
  return d;
}

// bits | bits: 0 equality, 1 positional patch (equal lengths), 2 replay.
inline constexpr std::uint64_t kBitsBitsEqual = 0;
inline constexpr std::uint64_t kBitsBitsPatch = 1;
inline constexpr std::uint64_t kBitsBitsReplay = 2;

inline BitVec cond_bits_given_bits(const BitVec& x, const BitVec& g) {
  std::vector<Candidate> cands;
  if (x == g) cands.push_back(Candidate{kBitsBitsEqual, {}});
  if (x.size() == g.size() && !(x == g)) {
    Candidate c{kBitsBitsPatch, {}};
    std::vector<std::size_t> flips;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x.get(i) != g.get(i)) flips.push_back(i);
    c.payload.put_uint(flips.size());
    for (auto i : flips) c.payload.put_uint(i);
    cands.push_back(std::move(c));
  }
  {
    Candidate replay{kBitsBitsReplay, {}};
    write_bits_body(replay.payload, x);
    cands.push_back(std::move(replay));
  }
  return seal(cands);
}

inline BitVec read_cond_bits_given_bits(BitReader& r, const BitVec& g) {
  const std::uint64_t route = r.get_uint();
  switch (route) {
    case kBitsBitsEqual: return g;
    case kBitsBitsPatch: {
      BitVec x = g;
      const std::size_t k = std::size_t(r.get_uint());
      for (std::size_t i = 0; i < k; ++i)
        x.flip(std::size_t(r.get_uint()));
      return x;
    }
    case kBitsBitsReplay: return read_bits_body(r);
  }
  throw codec_error("cond bits|bits: unknown route");
}

// Same-type equality/replay codec for the remaining kinds: 0 equal, 1 replay.
inline constexpr std::uint64_t kSameTypeEqual = 0;
inline constexpr std::uint64_t kSameTypeReplay = 1;

template <typename T>
inline BitVec cond_same_type(const T& x, const T& g) {
  std::vector<Candidate> cands;
  if (x == g) cands.push_back(Candidate{kSameTypeEqual, {}});
  {
    Candidate replay{kSameTypeReplay, {}};
    write_object_body(replay.payload, Encodable{x});
    cands.push_back(std::move(replay));
  }
  return seal(cands);
}

template <typename T>
inline T read_cond_same_type(std::uint8_t kind, BitReader& r, const T& g) {
  const std::uint64_t route = r.get_uint();
  if (route == kSameTypeEqual) return g;
  if (route != kSameTypeReplay)
    throw codec_error("cond same-type: unknown route");
  return std::get<T>(read_object_body(kind, r));
}

}  // namespace codec

/// Conditional encoding of x given another object. Returns nothing when no
/// codec is registered for the (x, given) kind pair; callers fall back to
/// the unconditional bound with a warning flag.
inline std::optional<Codeword> encode_conditional(const Encodable& x,
                                                  const Encodable& given) {
  const std::uint8_t scheme = cond_scheme(x, given);
  BitVec payload;
  if (const auto* xv = std::get_if<AffineSubspace>(&x)) {
    if (const auto* gv = std::get_if<AffineSubspace>(&given))
      payload = codec::cond_sub_given_sub(*xv, *gv);
    else if (const auto* gs = std::get_if<SampleSet>(&given))
      payload = codec::cond_sub_given_samples(*xv, *gs);
    else if (const auto* gd = std::get_if<SubstrateDesc>(&given))
      payload = codec::cond_sub_given_desc(*xv, *gd);
    else
      return std::nullopt;
  } else if (const auto* xd = std::get_if<SubstrateDesc>(&x)) {
    if (const auto* gd = std::get_if<SubstrateDesc>(&given))
      payload = codec::cond_desc_given_desc(*xd, *gd);
    else if (const auto* gv = std::get_if<AffineSubspace>(&given))
      payload = codec::cond_desc_given_sub(*xd, *gv);
    else
      return std::nullopt;
  } else if (const auto* xb = std::get_if<BitVec>(&x)) {
    if (const auto* gb = std::get_if<BitVec>(&given))
      payload = codec::cond_bits_given_bits(*xb, *gb);
    else
      return std::nullopt;
  } else if (const auto* xs = std::get_if<SampleSet>(&x)) {
    if (const auto* gs = std::get_if<SampleSet>(&given))
      payload = codec::cond_same_type(*xs, *gs);
    else
      return std::nullopt;
  } else if (const auto* xi = std::get_if<InstanceSpec>(&x)) {
    if (const auto* gi = std::get_if<InstanceSpec>(&given))
      payload = codec::cond_same_type(*xi, *gi);
    else
      return std::nullopt;
  } else if (const auto* xc = std::get_if<CacheTable>(&x)) {
    if (const auto* gc = std::get_if<CacheTable>(&given))
      payload = codec::cond_same_type(*xc, *gc);
    else
      return std::nullopt;
  } else {
    return std::nullopt;
  }
  return Codeword{payload, scheme};
}

/// Inverse of encode_conditional for the same `given`.
inline Encodable decode_conditional(const Codeword& cw,
                                    const Encodable& given) {
  BitReader r(cw.bits);
  Encodable out = [&]() -> Encodable {
    const int xi = (cw.scheme_id - kSchemeCondBase) / 8;
    switch (xi) {
      case 0:
        return codec::read_cond_bits_given_bits(r, std::get<BitVec>(given));
      case 1:
        if (const auto* gv = std::get_if<AffineSubspace>(&given))
          return codec::read_cond_sub_given_sub(r, *gv);
        else if (const auto* gs = std::get_if<SampleSet>(&given))
          return codec::read_cond_sub_given_samples(r, *gs);
        else
          return codec::read_cond_sub_given_desc(
              r, std::get<SubstrateDesc>(given));
      case 2:
        return codec::read_cond_same_type(kSchemeSamples, r,
                                          std::get<SampleSet>(given));
      case 3:
        return codec::read_cond_same_type(kSchemeInstance, r,
                                          std::get<InstanceSpec>(given));
      case 4:
        return codec::read_cond_same_type(kSchemeCache, r,
                                          std::get<CacheTable>(given));
      case 5:
        if (const auto* gd = std::get_if<SubstrateDesc>(&given))
          return codec::read_cond_desc_given_desc(r, *gd);
        else
          return codec::read_cond_desc_given_sub(
              r, std::get<AffineSubspace>(given));
    }
    throw codec_error("decode_conditional: unknown scheme");
  }();
  if (!r.exhausted()) throw codec_error("decode_conditional: trailing bits");
  return out;
}

// ---------------------------------------------------------------------------
// estimates

inline ComplexityEstimate khat(const Encodable& x) {
  const Codeword cw = encode_object(x);
  return ComplexityEstimate{cw.length(), ComplexityEstimate::Kind::unconditional,
                            cw.scheme_id, false};
}

inline ComplexityEstimate khat_cond(const Encodable& x,
                                    const Encodable& given) {
  if (auto cw = encode_conditional(x, given))
    return ComplexityEstimate{cw->length(),
                              ComplexityEstimate::Kind::conditional,
                              cw->scheme_id, false};
  const auto un = khat(x);
  return ComplexityEstimate{un.bits, ComplexityEstimate::Kind::conditional,
                            un.method, true};
}

/// Joint conditioning: one selector header plus the best single-part
/// residual (route 0 replays the unconditional encoding).
inline ComplexityEstimate khat_cond(const Encodable& x,
                                    const std::vector<Encodable>& givens) {
  std::uint64_t best = uint_code_length(0) + khat(x).bits;
  for (std::size_t i = 0; i < givens.size(); ++i) {
    if (auto cw = encode_conditional(x, givens[i])) {
      const std::uint64_t len = uint_code_length(i + 1) + cw->length();
      best = std::min(best, len);
    }
  }
  return ComplexityEstimate{best, ComplexityEstimate::Kind::conditional,
                            kSchemeCondJoint, false};
}

inline std::string object_id(const Encodable& x) {
  const Codeword cw = encode_object(x);
  std::uint64_t h = 0xcbf29ce484222325ULL ^ cw.scheme_id;
  for (std::size_t i = 0; i < cw.bits.size(); ++i) {
    h ^= std::uint64_t(cw.bits.get(i)) + 0x100 + (i & 0xff);
    h *= 0x100000001b3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 0; i < 16; ++i) s[15 - i] = digits[(h >> (4 * i)) & 0xf];
  return s;
}

/// Algorithmic mutual information estimate: khat(x) - khat(x|y), clamped at 0.
inline MutualInfoEstimate mutual_info(const Encodable& x, const Encodable& y) {
  const auto kx = khat(x);
  const auto kxy = khat_cond(x, y);
  const std::int64_t raw = std::int64_t(kx.bits) - std::int64_t(kxy.bits);
  return MutualInfoEstimate{std::max<std::int64_t>(0, raw), object_id(x),
                            object_id(y)};
}

}  // namespace catalab
