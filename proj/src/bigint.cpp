#include "sws/bigint.hpp"

#include <bit>
#include <stdexcept>

namespace sws {

BigUInt::BigUInt(uint64_t v) {
  if (v) limbs_.push_back(v);
}

void BigUInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUInt& BigUInt::operator+=(const BigUInt& rhs) {
  if (rhs.limbs_.size() > limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t r = i < rhs.limbs_.size() ? rhs.limbs_[i] : 0;
    uint64_t s = limbs_[i] + r;
    uint64_t c = s < limbs_[i];
    s += carry;
    c += s < carry;
    limbs_[i] = s;
    carry = c;
  }
  if (carry) limbs_.push_back(carry);
  return *this;
}

BigUInt& BigUInt::operator-=(const BigUInt& rhs) {
  if (*this < rhs) throw std::underflow_error("BigUInt: negative subtraction");
  uint64_t borrow = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t r = i < rhs.limbs_.size() ? rhs.limbs_[i] : 0;
    uint64_t d = limbs_[i] - r;
    uint64_t b = d > limbs_[i];
    uint64_t d2 = d - borrow;
    b += d2 > d;
    limbs_[i] = d2;
    borrow = b;
  }
  trim();
  return *this;
}

std::strong_ordering BigUInt::operator<=>(const BigUInt& rhs) const {
  if (limbs_.size() != rhs.limbs_.size())
    return limbs_.size() <=> rhs.limbs_.size();
  for (size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
  }
  return std::strong_ordering::equal;
}

size_t BigUInt::bit_length() const {
  if (limbs_.empty()) return 0;
  return 64 * (limbs_.size() - 1) + (64 - std::countl_zero(limbs_.back()));
}

uint64_t BigUInt::to_u64() const {
  if (limbs_.size() > 1) throw std::overflow_error("BigUInt: does not fit in 64 bits");
  return limbs_.empty() ? 0 : limbs_[0];
}

std::vector<uint8_t> BigUInt::to_bytes() const {
  std::vector<uint8_t> out;
  out.reserve(limbs_.size() * 8);
  for (uint64_t limb : limbs_)
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<uint8_t>(limb >> (8 * b)));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigUInt BigUInt::from_bytes(std::span<const uint8_t> bytes) {
  BigUInt v;
  v.limbs_.assign((bytes.size() + 7) / 8, 0);
  for (size_t i = 0; i < bytes.size(); ++i)
    v.limbs_[i / 8] |= static_cast<uint64_t>(bytes[i]) << (8 * (i % 8));
  v.trim();
  return v;
}

}  // namespace sws
