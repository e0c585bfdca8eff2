#pragma once
// Bijective rank codec for level-table columns. A column is a length-`rows`
// monotonically non-increasing sequence of instance indices in [0, max_id];
// its rank is an integer in [0, C(rows + max_id, max_id)).

#include <cstdint>
#include <span>
#include <vector>

#include "sws/bigint.hpp"

namespace sws {

// Pascal-triangle cache of C(n, k) values.
class BinomialTable {
 public:
  BinomialTable(unsigned n_max, unsigned k_max);
  // C(n, k); zero when k > n. n must be <= n_max and k <= k_max.
  const BigUInt& at(unsigned n, unsigned k) const;

 private:
  unsigned n_max_, k_max_;
  std::vector<BigUInt> c_;  // (n_max+1) x (k_max+1), row-major
  BigUInt zero_;
};

// Number of valid columns: C(rows + max_id, max_id).
BigUInt column_count(unsigned rows, uint32_t max_id, const BinomialTable& binom);
BigUInt column_count(unsigned rows, uint32_t max_id);

// Rank of a non-increasing column. Throws std::domain_error when the column
// increases somewhere or an entry exceeds max_id.
BigUInt encode_column(std::span<const uint32_t> column, uint32_t max_id,
                      const BinomialTable& binom);
BigUInt encode_column(std::span<const uint32_t> column, uint32_t max_id);

// Inverse of encode_column. Throws std::domain_error when rank is out of range.
std::vector<uint32_t> decode_column(const BigUInt& rank, unsigned rows, uint32_t max_id,
                                    const BinomialTable& binom);
std::vector<uint32_t> decode_column(const BigUInt& rank, unsigned rows, uint32_t max_id);

// Bytes needed to store any rank for the given column shape.
size_t column_rank_bytes(unsigned rows, uint32_t max_id);

}  // namespace sws
