#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sws/bigint.hpp"
#include "sws/columns.hpp"

using namespace sws;

namespace {

// All non-increasing columns of the given shape, odometer order.
std::vector<std::vector<std::uint32_t>> all_columns(unsigned rows, std::uint32_t max_id) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> col(rows, 0);
  while (true) {
    out.push_back(col);
    unsigned i = rows;
    while (i-- > 0) {
      std::uint32_t cap = i == 0 ? max_id : col[i - 1];
      if (col[i] < cap) {
        ++col[i];
        for (unsigned j = i + 1; j < rows; ++j) col[j] = 0;
        break;
      }
      if (i == 0) return out;
    }
  }
}

}  // namespace

TEST_CASE("biguint arithmetic and byte round trip") {
  BigUInt a(5), b(7);
  CHECK((a + b).to_u64() == 12);
  CHECK((b - a).to_u64() == 2);
  CHECK(BigUInt(0).is_zero());
  CHECK(BigUInt(255).bit_length() == 8);
  CHECK(BigUInt(256).bit_length() == 9);
  CHECK((BigUInt(3) <=> BigUInt(4)) == std::strong_ordering::less);
  CHECK_THROWS_AS(a -= b, std::underflow_error);
  for (std::uint64_t v : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{300},
                          std::uint64_t{1} << 40}) {
    BigUInt x(v);
    CHECK(BigUInt::from_bytes(x.to_bytes()) == x);
  }
  // Multi-limb value via repeated addition.
  BigUInt big(~std::uint64_t{0});
  big += BigUInt(1);
  CHECK(big.bit_length() == 65);
  CHECK_THROWS_AS(big.to_u64(), std::overflow_error);
  CHECK(BigUInt::from_bytes(big.to_bytes()) == big);
}

TEST_CASE("binomial table values") {
  BinomialTable binom(12, 6);
  CHECK(binom.at(5, 2).to_u64() == 10);
  CHECK(binom.at(7, 3).to_u64() == 35);
  CHECK(binom.at(11, 5).to_u64() == 462);
  CHECK(binom.at(3, 5).to_u64() == 0);  // k > n
  CHECK(binom.at(0, 0).to_u64() == 1);
  CHECK_THROWS_AS(binom.at(13, 2), std::out_of_range);
}

TEST_CASE("two-row single-instance ranks") {
  // Columns over instance ids {0,1} with 2 rows: (0,0) (1,0) (1,1).
  CHECK(encode_column(std::vector<std::uint32_t>{0, 0}, 1).to_u64() == 0);
  CHECK(encode_column(std::vector<std::uint32_t>{1, 0}, 1).to_u64() == 1);
  CHECK(encode_column(std::vector<std::uint32_t>{1, 1}, 1).to_u64() == 2);
  CHECK(column_count(2, 1).to_u64() == 3);
}

TEST_CASE("all-zero column has rank zero") {
  for (unsigned rows : {1u, 4u, 17u}) {
    for (std::uint32_t max_id : {0u, 3u, 9u}) {
      std::vector<std::uint32_t> zero(rows, 0);
      CHECK(encode_column(zero, max_id).is_zero());
      CHECK(decode_column(BigUInt(0), rows, max_id) == zero);
    }
  }
}

TEST_CASE("exhaustive bijection for small shapes") {
  for (auto [rows, max_id] : {std::pair<unsigned, std::uint32_t>{4, 3}, {6, 5}}) {
    auto cols = all_columns(rows, max_id);
    const std::uint64_t total = column_count(rows, max_id).to_u64();
    CHECK(cols.size() == total);
    std::set<std::uint64_t> ranks;
    for (const auto& col : cols) {
      std::uint64_t rank = encode_column(col, max_id).to_u64();
      CHECK(rank < total);
      CHECK(ranks.insert(rank).second);
      CHECK(decode_column(BigUInt(rank), rows, max_id) == col);
    }
    CHECK(ranks.size() == total);
  }
}

TEST_CASE("invalid columns and ranks are rejected") {
  CHECK_THROWS_AS(encode_column(std::vector<std::uint32_t>{0, 1}, 1), std::domain_error);
  CHECK_THROWS_AS(encode_column(std::vector<std::uint32_t>{2, 3, 1}, 3), std::domain_error);
  CHECK_THROWS_AS(encode_column(std::vector<std::uint32_t>{5, 1}, 3), std::domain_error);
  CHECK_THROWS_AS(encode_column(std::vector<std::uint32_t>{}, 3), std::domain_error);
  CHECK_THROWS_AS(decode_column(column_count(4, 3), 4, 3), std::domain_error);
  CHECK_THROWS_AS(decode_column(BigUInt(35), 4, 3), std::domain_error);
  CHECK_NOTHROW(decode_column(BigUInt(34), 4, 3));
}

TEST_CASE("rank byte width") {
  CHECK(column_rank_bytes(4, 0) == 0);   // single possible column
  CHECK(column_rank_bytes(1, 0) == 0);
  CHECK(column_rank_bytes(4, 3) == 1);   // 35 ranks
  CHECK(column_rank_bytes(6, 5) == 2);   // 462 ranks
  CHECK(column_rank_bytes(2, 1) == 1);   // 3 ranks
}
