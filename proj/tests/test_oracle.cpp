#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sws/oracle.hpp"

using namespace sws;

TEST_CASE("construction requires a positive window") {
  CHECK_THROWS_AS(WindowBuffer(0), std::invalid_argument);
}

TEST_CASE("repeated items collapse to one distinct value") {
  WindowBuffer buf(8);
  for (int i = 0; i < 3; ++i) buf.push(5);
  CHECK(buf.distinct_scan() == 1);
  CHECK(buf.distinct_tabulate() == 1);
  CHECK(buf.fp(1.0) == doctest::Approx(3.0));
  CHECK(buf.fp(2.0) == doctest::Approx(9.0));
}

TEST_CASE("moments on a small mixed window") {
  WindowBuffer buf(8);
  buf.push(3);
  buf.push(3);
  buf.push(7);
  CHECK(buf.distinct_scan() == 2);
  CHECK(buf.fp(2.0) == doctest::Approx(5.0));      // 2^2 + 1^2
  CHECK(buf.fp(1.0) == doctest::Approx(3.0));      // length of the window
  CHECK(buf.lp_norm(2.0) == doctest::Approx(std::sqrt(5.0)));
  CHECK(buf.lp_norm(1.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(buf.fp(0.0), std::invalid_argument);
  CHECK_THROWS_AS(buf.fp(-1.0), std::invalid_argument);
}

TEST_CASE("only the last `window` arrivals are kept") {
  WindowBuffer buf(3);
  for (std::uint64_t x : {1, 2, 3, 4, 5}) buf.push(x);
  CHECK(buf.clock() == 5);
  CHECK(buf.contents() == std::deque<std::uint64_t>({3, 4, 5}));
  CHECK(buf.distinct_scan() == 3);
  buf.push(3);
  CHECK(buf.contents() == std::deque<std::uint64_t>({4, 5, 3}));
}

TEST_CASE("scan and tabulate agree on random buffers") {
  std::mt19937_64 rng(70);
  for (int t = 0; t < 1000; ++t) {
    std::uint64_t window = 1 + rng() % 64;
    WindowBuffer buf(window);
    int len = static_cast<int>(rng() % 150);
    std::uint64_t pool = 1 + rng() % 40;
    for (int i = 0; i < len; ++i) {
      buf.push(rng() % pool);
      REQUIRE(buf.distinct_scan() == buf.distinct_tabulate());
    }
    std::uint64_t total = 0;
    for (const auto& [item, f] : buf.frequencies()) {
      CHECK(f >= 1);
      total += f;
    }
    CHECK(total == buf.contents().size());
  }
}

TEST_CASE("heavy and forbidden sets split a planted stream") {
  // One item of frequency 9 against nine singletons: l2 = sqrt(90).
  WindowBuffer buf(32);
  for (int i = 0; i < 9; ++i) buf.push(100);
  for (std::uint64_t x = 1; x <= 9; ++x) buf.push(x);
  const double l2 = std::sqrt(90.0);
  CHECK(buf.lp_norm(2.0) == doctest::Approx(l2));

  auto heavy = buf.heavy_set(0.9, 2.0);  // threshold 8.538
  REQUIRE(heavy.size() == 1);
  CHECK(heavy[0] == 100);

  auto forbidden = buf.forbidden_set(0.9, 2.0);  // threshold 0.71 < 1: empty
  CHECK(forbidden.empty());
  forbidden = buf.forbidden_set(0.9, 1.0);  // (0.9/12)*18 = 1.35: singletons
  CHECK(forbidden.size() == 9);
  CHECK(std::count(forbidden.begin(), forbidden.end(), 100) == 0);

  CHECK_THROWS_AS(buf.heavy_set(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(buf.forbidden_set(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("both set thresholds are inclusive") {
  // 12 copies of item 1 plus four singletons: F1 = 16, exact in binary.
  WindowBuffer buf(16);
  for (int i = 0; i < 12; ++i) buf.push(1);
  for (std::uint64_t x = 2; x <= 5; ++x) buf.push(x);

  auto heavy = buf.heavy_set(0.75, 1.0);  // threshold exactly 12 = f_1
  REQUIRE(heavy.size() == 1);
  CHECK(heavy[0] == 1);

  auto forbidden = buf.forbidden_set(0.75, 1.0);  // threshold exactly 1 = f_single
  CHECK(forbidden == std::vector<std::uint64_t>({2, 3, 4, 5}));
}

TEST_CASE("empty buffer edge cases") {
  WindowBuffer buf(4);
  CHECK(buf.distinct_scan() == 0);
  CHECK(buf.distinct_tabulate() == 0);
  CHECK(buf.fp(2.0) == 0.0);
  CHECK(buf.lp_norm(2.0) == 0.0);
  CHECK(buf.heavy_set(0.5, 2.0).empty());
  CHECK(buf.frequencies().empty());
}
