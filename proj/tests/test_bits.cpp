#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "catalab/bits.hpp"

using namespace catalab;

namespace {

// Independent rank oracle: plain Gaussian elimination on a copied matrix,
// eliminating column by column without any canonical-form bookkeeping.
std::size_t rank_oracle(std::vector<BitVec> rows) {
  std::size_t rank = 0;
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("BitVec basics and hex round-trip") {
  BitVec v(13);
  v.set(0, true);
  v.set(5, true);
  v.set(12, true);
  CHECK(v.popcount() == 3);
  CHECK(v.lowest_set() == 0);
  CHECK(v.get(5));
  CHECK_FALSE(v.get(4));

  const std::string hex = v.to_hex();
  CHECK(hex.size() == 4);  // ceil(13/4)
  CHECK(BitVec::from_hex(hex, 13) == v);

  CHECK(BitVec::from_counter(19, 5).to_hex() == "13");
  CHECK_THROWS_AS(BitVec::from_hex("13", 3), error);  // bit beyond size
  CHECK_THROWS_AS(BitVec::from_hex("1", 13), error);  // wrong digit count
}

TEST_CASE("BitVec value ordering matches counter order") {
  std::vector<BitVec> vals;
  for (std::uint64_t c : {7u, 0u, 12u, 3u, 12u})
    vals.push_back(BitVec::from_counter(c, 6));
  std::sort(vals.begin(), vals.end(), value_less);
  std::vector<std::uint64_t> expect{0, 3, 7, 12, 12};
  for (std::size_t i = 0; i < vals.size(); ++i)
    CHECK(vals[i] == BitVec::from_counter(expect[i], 6));
}

TEST_CASE("Gf2Basis rank agrees with an independent elimination") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(12);
    const std::size_t k = rng.index(2 * n + 1);
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < k; ++i) rows.push_back(rng.bitvec(n));
    Gf2Basis basis(n);
    for (const auto& r : rows) basis.insert(r);
    REQUIRE(basis.dim() == rank_oracle(rows));
    // RREF shape: pivots strictly increasing, pivot columns exclusive
    for (std::size_t i = 0; i + 1 < basis.pivots().size(); ++i)
      CHECK(basis.pivots()[i] < basis.pivots()[i + 1]);
    for (std::size_t i = 0; i < basis.rows().size(); ++i)
      for (std::size_t j = 0; j < basis.rows().size(); ++j)
        CHECK(basis.rows()[i].get(basis.pivots()[j]) == (i == j));
    // membership closed under xor of two inserted rows
    if (rows.size() >= 2) CHECK(basis.contains(rows[0] ^ rows[1]));
  }
}

TEST_CASE("Gf2Basis canonical form is insertion-order independent") {
  Rng rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng.index(10);
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(rng.bitvec(n));
    Gf2Basis a(n), b(n);
    for (const auto& r : rows) a.insert(r);
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) b.insert(*it);
    CHECK(a == b);
  }
}

TEST_CASE("Rng is deterministic and bounded") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.word() == b.word());
  Rng c(6);
  for (int i = 0; i < 1000; ++i) CHECK(c.index(7) < 7);
}

TEST_CASE("uint code lengths match the writer") {
  for (std::uint64_t k : {0ull, 1ull, 2ull, 100ull, 65535ull, 1ull << 40}) {
    BitWriter w;
    w.put_uint(k);
    CHECK(w.size() == uint_code_length(k));
    const BitVec bits = w.take();
    BitReader r(bits);
    CHECK(r.get_uint() == k);
    CHECK(r.exhausted());
  }
}
