#include "sws/hashing.hpp"

#include <bit>
#include <stdexcept>

namespace sws {

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t SeedStream::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

HashSeed derive_seed(HashSeed master, uint64_t tag, uint64_t index) {
  uint64_t t = mix64(tag * 0xa0761d6478bd642full + 0x1d8e4e27c47d124full);
  return HashSeed{mix64(master.value ^ t ^ (index * 0xe7037ed1a0b428dbull))};
}

unsigned ceil_log2(uint64_t m) {
  if (m == 0) throw std::invalid_argument("ceil_log2: m must be positive");
  unsigned w = 0;
  while ((uint64_t(1) << w) < m) {
    ++w;
    if (w == 63) break;
  }
  return w;
}

unsigned lsb(uint64_t x, unsigned width) {
  if (width == 0 || width > 63) throw std::invalid_argument("lsb: width out of range");
  if (x >> width) throw std::domain_error("lsb: value exceeds 2^width");
  if (x == 0) return width;
  return static_cast<unsigned>(std::countr_zero(x));
}

namespace {

inline uint64_t mulmod61(uint64_t a, uint64_t b) {
  __uint128_t z = static_cast<__uint128_t>(a) * b;
  uint64_t lo = static_cast<uint64_t>(z) & kMersenne61;
  uint64_t hi = static_cast<uint64_t>(z >> 61);
  uint64_t s = lo + hi;
  if (s >= kMersenne61) s -= kMersenne61;
  return s;
}

inline uint64_t addmod61(uint64_t a, uint64_t b) {
  uint64_t s = a + b;  // both < 2^61, no overflow
  if (s >= kMersenne61) s -= kMersenne61;
  return s;
}

}  // namespace

KWiseHash::KWiseHash(HashSeed seed, unsigned degree, uint64_t universe, uint64_t output_range)
    : universe_(universe), range_(output_range), seed_(seed) {
  if (degree == 0) throw std::invalid_argument("KWiseHash: degree must be positive");
  if (universe == 0 || universe > kMaxUniverse)
    throw std::invalid_argument("KWiseHash: universe out of range");
  if (output_range == 0) throw std::invalid_argument("KWiseHash: output range must be positive");
  range_pow2_ = (output_range & (output_range - 1)) == 0;
  mask_ = range_pow2_ ? output_range - 1 : 0;
  SeedStream s(seed.value);
  coeff_.resize(degree);
  for (auto& c : coeff_) c = s.next() % kMersenne61;
}

uint64_t KWiseHash::eval_field(uint64_t x) const {
  if (x >= universe_) throw std::domain_error("KWiseHash: input outside universe");
  uint64_t acc = coeff_.back();
  for (size_t i = coeff_.size() - 1; i-- > 0;) acc = addmod61(mulmod61(acc, x), coeff_[i]);
  return acc;
}

uint64_t KWiseHash::operator()(uint64_t x) const {
  uint64_t v = eval_field(x);
  return range_pow2_ ? (v & mask_) : (v % range_);
}

int KWiseHash::sign(uint64_t x) const { return (eval_field(x) & 1) ? 1 : -1; }

KWiseHash make_pairwise(HashSeed seed, uint64_t universe, uint64_t range) {
  return KWiseHash(seed, 2, universe, range);
}

KWiseHash make_level_hash(HashSeed seed, uint64_t universe) {
  return KWiseHash(seed, 8, universe, uint64_t(1) << ceil_log2(universe));
}

KWiseHash make_rademacher(HashSeed seed, uint64_t universe, unsigned independence) {
  return KWiseHash(seed, independence, universe, 2);
}

}  // namespace sws
