#pragma once
// Seeded k-wise independent hash families over the Mersenne field 2^61-1,
// plus the low-bit utilities shared by the sketches.

#include <cstdint>
#include <vector>

namespace sws {

inline constexpr uint64_t kMersenne61 = (uint64_t(1) << 61) - 1;
inline constexpr uint64_t kMaxUniverse = uint64_t(1) << 32;

struct HashSeed {
  uint64_t value = 0;
  bool operator==(const HashSeed&) const = default;
};

// splitmix64 finalizer; every piece of seed derivation funnels through this.
uint64_t mix64(uint64_t x);

// splitmix64 sequence, used to expand one seed into many field coefficients.
class SeedStream {
 public:
  explicit SeedStream(uint64_t state) : state_(state) {}
  uint64_t next();

 private:
  uint64_t state_;
};

// Deterministic sub-seed for a named component (tag) and index.
HashSeed derive_seed(HashSeed master, uint64_t tag, uint64_t index = 0);

// Component tags for derive_seed. Values are arbitrary but frozen: changing
// them changes every downstream hash function.
enum SeedTag : uint64_t {
  kSeedDistinctLevel = 1,
  kSeedDistinctBucket = 2,
  kSeedAmsSign = 3,
  kSeedFinderBucket = 4,
  kSeedFinderSign = 5,
  kSeedGenerator = 6,
  kSeedTrial = 7,
};

// Smallest w with 2^w >= m. ceil_log2(1) == 0.
unsigned ceil_log2(uint64_t m);

// 0-based index of the least significant set bit of x, where x < 2^width.
// By convention lsb(0, width) == width. x >= 2^width is a domain error.
unsigned lsb(uint64_t x, unsigned width);

// Polynomial hash with `degree` random coefficients over GF(2^61-1),
// evaluated by Horner's rule and reduced to [0, output_range). `degree`
// coefficients give degree-wise independence on any distinct inputs.
class KWiseHash {
 public:
  KWiseHash() = default;
  KWiseHash(HashSeed seed, unsigned degree, uint64_t universe, uint64_t output_range);

  uint64_t operator()(uint64_t x) const;  // in [0, output_range)
  int sign(uint64_t x) const;             // +1 if the field value is odd, else -1

  unsigned degree() const { return static_cast<unsigned>(coeff_.size()); }
  uint64_t universe() const { return universe_; }
  uint64_t output_range() const { return range_; }
  HashSeed seed() const { return seed_; }
  bool operator==(const KWiseHash&) const = default;

 private:
  uint64_t eval_field(uint64_t x) const;

  std::vector<uint64_t> coeff_;
  uint64_t universe_ = 1;
  uint64_t range_ = 1;
  uint64_t mask_ = 0;  // range-1 when range is a power of two, else 0
  bool range_pow2_ = false;
  HashSeed seed_;
};

// Pairwise independent bucket hash: degree-1 polynomial.
KWiseHash make_pairwise(HashSeed seed, uint64_t universe, uint64_t range);

// Level-sampling hash for the distinct sketch: 8 coefficients, output range
// 2^ceil_log2(universe) so lsb() of the value is a geometric level.
KWiseHash make_level_hash(HashSeed seed, uint64_t universe);

// Sign hash: `independence` coefficients, +-1 read off the low bit.
KWiseHash make_rademacher(HashSeed seed, uint64_t universe, unsigned independence);

}  // namespace sws
