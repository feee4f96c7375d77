#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "catalab/errors.hpp"

namespace catalab {

/// Dynamic bit vector over GF(2). Bit i carries weight 2^i, so the vector
/// doubles as an unsigned integer for ordering and hex display.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitVec from_counter(std::uint64_t value, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n && i < 64; ++i)
      if ((value >> i) & 1u) v.set(i, true);
    return v;
  }

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVec& operator^=(const BitVec& o) {
    if (o.n_ != n_) throw error("BitVec xor: size mismatch");
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  /// Index of the lowest set bit, or -1 when the vector is zero.
  int lowest_set() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return int(k * 64 + std::countr_zero(w_[k]));
    return -1;
  }

  /// Parity of the bitwise AND with `o` (the GF(2) inner product).
  bool dot(const BitVec& o) const {
    if (o.n_ != n_) throw error("BitVec dot: size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return std::popcount(acc) & 1u;
  }

  bool operator==(const BitVec& o) const = default;

  /// Integer comparison (bit i = 2^i).
  std::strong_ordering cmp_value(const BitVec& o) const {
    const std::size_t k = std::max(w_.size(), o.w_.size());
    for (std::size_t idx = k; idx-- > 0;) {
      const std::uint64_t a = idx < w_.size() ? w_[idx] : 0;
      const std::uint64_t b = idx < o.w_.size() ? o.w_[idx] : 0;
      if (a != b) return a <=> b;
    }
    return std::strong_ordering::equal;
  }

  std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t nd = (n_ + 3) / 4;
    std::string s(nd, '0');
    for (std::size_t t = 0; t < nd; ++t) {
      unsigned nib = 0;
      for (unsigned b = 0; b < 4; ++b) {
        const std::size_t i = 4 * t + b;
        if (i < n_ && get(i)) nib |= 1u << b;
      }
      s[nd - 1 - t] = digits[nib];
    }
    return s;
  }

  static BitVec from_hex(std::string_view s, std::size_t n) {
    const std::size_t nd = (n + 3) / 4;
    if (s.size() != nd) throw error("BitVec::from_hex: wrong digit count");
    BitVec v(n);
    for (std::size_t t = 0; t < nd; ++t) {
      const char c = s[nd - 1 - t];
      unsigned nib;
      if (c >= '0' && c <= '9')
        nib = unsigned(c - '0');
      else if (c >= 'a' && c <= 'f')
        nib = unsigned(c - 'a') + 10;
      else if (c >= 'A' && c <= 'F')
        nib = unsigned(c - 'A') + 10;
      else
        throw error("BitVec::from_hex: bad digit");
      for (unsigned b = 0; b < 4; ++b) {
        const std::size_t i = 4 * t + b;
        if ((nib >> b) & 1u) {
          if (i >= n) throw error("BitVec::from_hex: bit beyond size");
          v.set(i, true);
        }
      }
    }
    return v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

inline bool value_less(const BitVec& a, const BitVec& b) {
  return a.cmp_value(b) == std::strong_ordering::less;
}

/// True when `a` is a strictly shorter codeword agreeing with the start of `b`.
inline bool is_proper_prefix(const BitVec& a, const BitVec& b) {
  if (a.size() >= b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.get(i) != b.get(i)) return false;
  return true;
}

/// Incremental reduced row echelon basis over GF(2). Insertion keeps rows
/// fully reduced and ordered by pivot, so the stored rows are the unique
/// canonical basis of the spanned row space regardless of insertion order.
class Gf2Basis {
 public:
  Gf2Basis() = default;
  explicit Gf2Basis(std::size_t n) : n_(n) {}

  std::size_t n() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<BitVec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  BitVec reduce(BitVec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (v.get(pivots_[k])) v ^= rows_[k];
    return v;
  }

  bool contains(const BitVec& v) const { return !reduce(v).any(); }

  /// Adds v to the basis; returns false when v is already in the span.
  bool insert(BitVec v) {
    if (v.size() != n_) throw error("Gf2Basis::insert: size mismatch");
    v = reduce(v);
    if (!v.any()) return false;
    const std::size_t p = std::size_t(v.lowest_set());
    for (auto& r : rows_)
      if (r.get(p)) r ^= v;
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + long(pos), std::move(v));
    pivots_.insert(pivots_.begin() + long(pos), p);
    return true;
  }

  bool operator==(const Gf2Basis& o) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Deterministic random source. Only raw engine words are consumed (never
/// std distributions) so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t word() { return eng_(); }

  /// k uniform bits in the low positions, 0 <= k <= 64.
  std::uint64_t bits(unsigned k) {
    if (k == 0) return 0;
    return eng_() >> (64 - k);
  }

  bool coin() { return bits(1) != 0; }

  /// Uniform index in [0, bound) by rejection.
  std::uint64_t index(std::uint64_t bound) {
    if (bound == 0) throw error("Rng::index: zero bound");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % bound;
  }

  BitVec bitvec(std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; i += 64) {
      const unsigned k = unsigned(std::min<std::size_t>(64, n - i));
      const std::uint64_t w = bits(k);
      for (unsigned b = 0; b < k; ++b)
        if ((w >> b) & 1u) v.set(i + b, true);
    }
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

/// Stable per-purpose seed derivation (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Append-only bit buffer used by the codecs.
class BitWriter {
 public:
  void put(bool b) {
    bits_.push_back(b);
  }

  /// Self-delimiting code for k >= 0: the binary expansion of k+1 (length L)
  /// preceded by L-1 zeros. Total length 2*floor(log2(k+1)) + 1.
  void put_uint(std::uint64_t k) {
    const std::uint64_t v = k + 1;  // v >= 1; k == 2^64-1 is rejected
    if (v == 0) throw codec_error("put_uint: value too large");
    const unsigned L = unsigned(std::bit_width(v));
    for (unsigned i = 1; i < L; ++i) put(false);
    for (unsigned i = L; i-- > 0;) put((v >> i) & 1u);
  }

  void put_vec(const BitVec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) put(v.get(i));
  }

  std::size_t size() const { return bits_.size(); }

  BitVec take() const {
    BitVec out(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.set(i, true);
    return out;
  }

 private:
  std::vector<bool> bits_;
};

/// Sequential reader over a codeword; position() reports bits consumed.
/// Holds a reference: the codeword must outlive the reader.
class BitReader {
 public:
  explicit BitReader(const BitVec& v) : v_(&v) {}
  explicit BitReader(BitVec&&) = delete;

  bool get() {
    if (pos_ >= v_->size()) throw codec_error("BitReader: out of bits");
    return v_->get(pos_++);
  }

  std::uint64_t get_uint() {
    unsigned zeros = 0;
    while (!get()) {
      if (++zeros > 64) throw codec_error("BitReader: malformed integer");
    }
    std::uint64_t v = 1;
    for (unsigned i = 0; i < zeros; ++i) v = (v << 1) | (get() ? 1u : 0u);
    return v - 1;
  }

  BitVec get_vec(std::size_t n) {
    BitVec out(n);
    for (std::size_t i = 0; i < n; ++i)
      if (get()) out.set(i, true);
    return out;
  }

  std::size_t position() const { return pos_; }
  bool exhausted() const { return pos_ == v_->size(); }

 private:
  const BitVec* v_;
  std::size_t pos_ = 0;
};

/// Exact codeword length of put_uint.
inline std::uint64_t uint_code_length(std::uint64_t k) {
  return 2 * std::uint64_t(std::bit_width(k + 1)) - 1;
}

}  // namespace catalab
