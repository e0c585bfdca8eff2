#pragma once
// Minimal unsigned big integer: just enough arithmetic for the combinatorial
// column codec (add, subtract, compare, byte round-trips).

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace sws {

class BigUInt {
 public:
  BigUInt() = default;
  explicit BigUInt(uint64_t v);

  BigUInt& operator+=(const BigUInt& rhs);
  BigUInt& operator-=(const BigUInt& rhs);  // requires *this >= rhs
  friend BigUInt operator+(BigUInt lhs, const BigUInt& rhs) { return lhs += rhs; }
  friend BigUInt operator-(BigUInt lhs, const BigUInt& rhs) { return lhs -= rhs; }

  std::strong_ordering operator<=>(const BigUInt& rhs) const;
  bool operator==(const BigUInt& rhs) const { return limbs_ == rhs.limbs_; }

  bool is_zero() const { return limbs_.empty(); }
  size_t bit_length() const;  // 0 for zero
  uint64_t to_u64() const;    // throws std::overflow_error when too large

  std::vector<uint8_t> to_bytes() const;  // little-endian, minimal length
  static BigUInt from_bytes(std::span<const uint8_t> bytes);

 private:
  void trim();
  std::vector<uint64_t> limbs_;  // little-endian, no trailing zero limbs
};

}  // namespace sws
