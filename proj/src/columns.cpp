#include "sws/columns.hpp"

#include <stdexcept>

namespace sws {

BinomialTable::BinomialTable(unsigned n_max, unsigned k_max) : n_max_(n_max), k_max_(k_max) {
  c_.assign(static_cast<size_t>(n_max + 1) * (k_max + 1), BigUInt());
  auto cell = [&](unsigned n, unsigned k) -> BigUInt& {
    return c_[static_cast<size_t>(n) * (k_max_ + 1) + k];
  };
  for (unsigned n = 0; n <= n_max; ++n) {
    cell(n, 0) = BigUInt(1);
    for (unsigned k = 1; k <= k_max && k <= n; ++k) {
      cell(n, k) = cell(n - 1, k - 1);
      if (k <= n - 1) cell(n, k) += cell(n - 1, k);
    }
  }
}

const BigUInt& BinomialTable::at(unsigned n, unsigned k) const {
  if (k > n) return zero_;
  if (n > n_max_ || k > k_max_) throw std::out_of_range("BinomialTable: index beyond table");
  return c_[static_cast<size_t>(n) * (k_max_ + 1) + k];
}

BigUInt column_count(unsigned rows, uint32_t max_id, const BinomialTable& binom) {
  return binom.at(rows + max_id, rows);
}

BigUInt column_count(unsigned rows, uint32_t max_id) {
  BinomialTable binom(rows + max_id, rows);
  return column_count(rows, max_id, binom);
}

// The column v_0 >= v_1 >= ... >= v_{w-1} maps to the strictly decreasing
// sequence u_i = v_i + (w-1-i), a w-subset of {0..max_id+w-1}, ranked in the
// combinatorial number system as sum_i C(u_i, w-i).
BigUInt encode_column(std::span<const uint32_t> column, uint32_t max_id,
                      const BinomialTable& binom) {
  const unsigned w = static_cast<unsigned>(column.size());
  if (w == 0) throw std::domain_error("encode_column: empty column");
  BigUInt rank;
  for (unsigned i = 0; i < w; ++i) {
    if (column[i] > max_id) throw std::domain_error("encode_column: entry exceeds max_id");
    if (i > 0 && column[i] > column[i - 1])
      throw std::domain_error("encode_column: column must be non-increasing");
    unsigned u = column[i] + (w - 1 - i);
    rank += binom.at(u, w - i);
  }
  return rank;
}

BigUInt encode_column(std::span<const uint32_t> column, uint32_t max_id) {
  BinomialTable binom(static_cast<unsigned>(column.size()) + max_id,
                      static_cast<unsigned>(column.size()));
  return encode_column(column, max_id, binom);
}

std::vector<uint32_t> decode_column(const BigUInt& rank, unsigned rows, uint32_t max_id,
                                    const BinomialTable& binom) {
  if (rows == 0) throw std::domain_error("decode_column: empty column");
  if (rank >= column_count(rows, max_id, binom))
    throw std::domain_error("decode_column: rank out of range");
  std::vector<uint32_t> column(rows);
  BigUInt rem = rank;
  unsigned hi = max_id + rows - 1;  // largest admissible u for the next position
  for (unsigned i = 0; i < rows; ++i) {
    const unsigned k = rows - i;
    // Largest u <= hi with C(u, k) <= rem; u = k-1 always qualifies (C = 0).
    // C(u, k) is increasing in u, so binary search.
    unsigned lo = k - 1, up = hi;
    while (lo < up) {
      unsigned mid = lo + (up - lo + 1) / 2;
      if (binom.at(mid, k) > rem)
        up = mid - 1;
      else
        lo = mid;
    }
    rem -= binom.at(lo, k);
    column[i] = lo - (rows - 1 - i);
    hi = lo == 0 ? 0 : lo - 1;
  }
  return column;
}

std::vector<uint32_t> decode_column(const BigUInt& rank, unsigned rows, uint32_t max_id) {
  BinomialTable binom(rows + max_id, rows);
  return decode_column(rank, rows, max_id, binom);
}

size_t column_rank_bytes(unsigned rows, uint32_t max_id) {
  BigUInt count = column_count(rows, max_id);
  if (count <= BigUInt(1)) return 0;  // only one valid column, nothing to store
  count -= BigUInt(1);
  return (count.bit_length() + 7) / 8;
}

}  // namespace sws
