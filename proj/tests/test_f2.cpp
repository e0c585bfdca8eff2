#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sws/f2.hpp"
#include "sws/hashing.hpp"

using namespace sws;

namespace {

std::shared_ptr<const RademacherFamily> family(std::uint64_t seed, std::uint64_t universe) {
  return std::make_shared<RademacherFamily>(HashSeed{seed}, universe);
}

}  // namespace

TEST_CASE("single item gives unit counters and exact estimate") {
  AmsSketch sk(family(3, 256));
  sk.update(17);
  for (std::int64_t c : sk.counters()) CHECK((c == 1 || c == -1));
  CHECK(sk.estimate() == 1.0);
}

TEST_CASE("c copies of one item estimate exactly c squared") {
  for (int c : {2, 5, 16}) {
    AmsSketch sk(family(4, 256));
    for (int i = 0; i < c; ++i) sk.update(9);
    CHECK(sk.estimate() == static_cast<double>(c) * c);
  }
}

TEST_CASE("arrival order does not matter") {
  auto fam = family(5, 1024);
  std::vector<std::uint64_t> xs{3, 700, 3, 41, 999};
  AmsSketch a(fam), b(fam);
  for (std::uint64_t x : xs) a.update(x);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) b.update(*it);
  CHECK(a.counters() == b.counters());
  CHECK(a.estimate() == b.estimate());
}

TEST_CASE("merge equals the concatenated stream") {
  auto fam = family(6, 1024);
  std::mt19937_64 rng(11);
  std::vector<std::uint64_t> xs(300);
  for (auto& x : xs) x = rng() % 1024;
  AmsSketch whole(fam);
  for (std::uint64_t x : xs) whole.update(x);

  AmsSketch a(fam), b(fam);
  for (std::size_t i = 0; i < 120; ++i) a.update(xs[i]);
  for (std::size_t i = 120; i < xs.size(); ++i) b.update(xs[i]);
  a.merge(b);
  CHECK(a.counters() == whole.counters());

  AmsSketch empty1(fam), empty2(fam);
  empty1.merge(empty2);
  for (std::int64_t c : empty1.counters()) CHECK(c == 0);
  whole.merge(empty1);  // merging an empty sketch changes nothing
  AmsSketch again(fam);
  for (std::uint64_t x : xs) again.update(x);
  CHECK(whole.counters() == again.counters());
}

TEST_CASE("merge is associative over three segments") {
  auto fam = family(7, 512);
  std::mt19937_64 rng(12);
  std::vector<std::uint64_t> xs(240);
  for (auto& x : xs) x = rng() % 512;
  auto part = [&](std::size_t lo, std::size_t hi) {
    AmsSketch s(fam);
    for (std::size_t i = lo; i < hi; ++i) s.update(xs[i]);
    return s;
  };
  AmsSketch left = part(0, 80), mid = part(80, 160), right = part(160, 240);
  AmsSketch lm = left;
  lm.merge(mid);
  lm.merge(right);
  AmsSketch mr = mid;
  mr.merge(right);
  AmsSketch l2 = left;
  l2.merge(mr);
  CHECK(lm.counters() == l2.counters());
}

TEST_CASE("merge across different families is rejected") {
  AmsSketch a(family(1, 256)), b(family(2, 256)), c(family(1, 512));
  CHECK_THROWS_AS(a.merge(b), std::invalid_argument);
  CHECK_THROWS_AS(a.merge(c), std::invalid_argument);
}

TEST_CASE("counterwise mean of squares is unbiased for F2") {
  // Frequencies (3, 2, 1, 1): F2 = 15. E[X_j^2] = F2 per counter.
  const double f2 = 15.0;
  double grand = 0.0;
  int in_factor2 = 0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) {
    AmsSketch sk(family(1000 + s, 64));
    for (int i = 0; i < 3; ++i) sk.update(5);
    for (int i = 0; i < 2; ++i) sk.update(9);
    sk.update(33);
    sk.update(60);
    double sum_sq = 0.0;
    for (std::int64_t c : sk.counters()) sum_sq += static_cast<double>(c) * c;
    grand += sum_sq / kAmsCounters;
    double est = sk.estimate();
    in_factor2 += est >= f2 / 2 && est <= 2 * f2 ? 1 : 0;
  }
  CHECK(std::abs(grand / seeds - f2) < 0.05 * f2);
  CHECK(in_factor2 >= 950);
}

TEST_CASE("factor-2 accuracy on longer streams") {
  const std::uint64_t universe = 256;
  int hits = 0;
  for (int s = 0; s < 100; ++s) {
    std::mt19937_64 rng(900 + s);
    AmsSketch sk(family(500 + s, universe));
    std::vector<std::uint64_t> freq(universe, 0);
    std::uint64_t f2 = 0;
    for (int i = 0; i < 4096; ++i) {
      std::uint64_t x = rng() % universe;
      sk.update(x);
      f2 += 2 * freq[x] + 1;
      ++freq[x];
    }
    double est = sk.estimate();
    auto exact = static_cast<double>(f2);
    hits += est >= exact / 2 && est <= 2 * exact ? 1 : 0;
  }
  CHECK(hits >= 90);
}

TEST_CASE("suffix wrapper reports the l2 norm") {
  auto fam = family(8, 256);
  F2Suffix s(fam);
  for (int i = 0; i < 4; ++i) s.update(7);
  CHECK(s.estimate() == 4.0);  // sqrt of the exact 16
  CHECK(s.ams().estimate() == 16.0);
}

TEST_CASE("set_counters restores a snapshot") {
  auto fam = family(9, 256);
  AmsSketch a(fam);
  for (int i = 0; i < 10; ++i) a.update(i);
  AmsSketch b(fam);
  b.set_counters(a.counters());
  CHECK(b.counters() == a.counters());
  a.update(99);
  b.update(99);
  CHECK(b.counters() == a.counters());
}
