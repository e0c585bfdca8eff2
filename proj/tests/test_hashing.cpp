#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sws/hashing.hpp"

using namespace sws;

TEST_CASE("lsb values and conventions") {
  CHECK(lsb(10, 16) == 1);
  CHECK(lsb(0, 16) == 16);
  CHECK(lsb(1, 16) == 0);
  CHECK(lsb(8, 16) == 3);
  CHECK(lsb(0, 5) == 5);
  CHECK(lsb(6, 3) == 1);
  CHECK_THROWS_AS(lsb(std::uint64_t(1) << 16, 16), std::domain_error);
  CHECK_THROWS_AS(lsb(std::uint64_t(1) << 20, 16), std::domain_error);
}

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(1024) == 10);
  CHECK(ceil_log2(1025) == 11);
}

TEST_CASE("derive_seed is deterministic and separates tags and indices") {
  HashSeed m{7};
  CHECK(derive_seed(m, kSeedTrial, 3).value == derive_seed(m, kSeedTrial, 3).value);
  CHECK(derive_seed(m, kSeedTrial, 3).value != derive_seed(m, kSeedTrial, 4).value);
  CHECK(derive_seed(m, kSeedTrial).value != derive_seed(m, kSeedGenerator).value);
  CHECK(derive_seed(HashSeed{8}, kSeedTrial).value != derive_seed(m, kSeedTrial).value);
}

TEST_CASE("hash rebuilt from the same seed agrees everywhere") {
  auto a = make_pairwise(HashSeed{7}, 1 << 16, 16);
  auto b = make_pairwise(HashSeed{7}, 1 << 16, 16);
  CHECK(a == b);
  for (std::uint64_t x : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{42},
                          std::uint64_t{65535}})
    CHECK(a(x) == b(x));
  CHECK(make_level_hash(HashSeed{9}, 1024) == make_level_hash(HashSeed{9}, 1024));
}

TEST_CASE("pairwise bucket collision rate near 1/range") {
  const std::uint64_t range = 16, items = 64;
  const int seeds = 1000;
  double total_rate = 0.0;
  for (int s = 0; s < seeds; ++s) {
    auto h = make_pairwise(derive_seed(HashSeed{123}, kSeedTrial, s), 1 << 16, range);
    std::vector<std::uint64_t> v(items);
    for (std::uint64_t i = 0; i < items; ++i) v[i] = h(i);
    int coll = 0;
    for (std::uint64_t i = 0; i < items; ++i)
      for (std::uint64_t j = i + 1; j < items; ++j) coll += v[i] == v[j];
    total_rate += static_cast<double>(coll) / (items * (items - 1) / 2);
  }
  double rate = total_rate / seeds;
  CHECK(std::abs(rate - 1.0 / 16) < 0.01);
}

TEST_CASE("level hash output stays inside its power-of-two range") {
  const std::uint64_t universe = 1 << 10;
  auto h = make_level_hash(HashSeed{9}, universe);
  CHECK(h.output_range() == universe);
  bool ok = true;
  for (std::uint64_t x = 0; x < universe; ++x) ok = ok && h(x) < universe;
  CHECK(ok);
  // Levels fit the table: lsb of the value is < ceil_log2(universe)+1.
  unsigned width = ceil_log2(universe);
  bool lvl_ok = true;
  for (std::uint64_t x = 0; x < universe; ++x) lvl_ok = lvl_ok && lsb(h(x), width) <= width;
  CHECK(lvl_ok);
}

TEST_CASE("rademacher signs balance out") {
  const std::uint64_t universe = 4096;
  for (int s = 0; s < 20; ++s) {
    auto h = make_rademacher(derive_seed(HashSeed{5}, kSeedTrial, s), universe, 6);
    double sum = 0.0;
    for (std::uint64_t x = 0; x < universe; ++x) sum += h.sign(x);
    CHECK(std::abs(sum / static_cast<double>(universe)) < 0.05);
  }
}

TEST_CASE("sign values are only +1 or -1") {
  auto h = make_rademacher(HashSeed{11}, 256, 6);
  for (std::uint64_t x = 0; x < 256; ++x) {
    int s = h.sign(x);
    CHECK((s == 1 || s == -1));
  }
}
