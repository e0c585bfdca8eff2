#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <stdexcept>

#include "doctest.h"
#include "sws/histogram.hpp"

using namespace sws;

namespace {

SmoothHistogram<CountingSuffix> make_hist(std::uint64_t window, double epsilon) {
  return SmoothHistogram<CountingSuffix>(window, epsilon, [] { return CountingSuffix{}; });
}

// Post-arrival invariants: strictly increasing starts, at most one expired
// instance, and no interior instance still satisfying the deletion rule.
void check_invariants(const SmoothHistogram<CountingSuffix>& h) {
  const auto& e = h.entries();
  for (std::size_t i = 1; i < e.size(); ++i) REQUIRE(e[i - 1].start < e[i].start);
  std::size_t expired = 0;
  for (const auto& entry : e) expired += entry.start < h.window_start() ? 1 : 0;
  REQUIRE(expired <= 1);
  for (std::size_t j = 1; j + 1 < e.size(); ++j)
    REQUIRE(e[j + 1].est < h.gamma() * e[j - 1].est);
}

}  // namespace

TEST_CASE("construction validates parameters") {
  CHECK_THROWS_AS(make_hist(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_hist(8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_hist(8, 1.0), std::invalid_argument);
  CHECK(make_hist(8, 0.5).gamma() == doctest::Approx(0.875));
}

TEST_CASE("single arrival") {
  auto h = make_hist(8, 0.5);
  h.insert(0);
  REQUIRE(h.instance_count() == 1);
  CHECK(h.entries()[0].start == 1);
  CHECK(h.query() == 1.0);
}

TEST_CASE("query before any arrival is an error") {
  auto h = make_hist(8, 0.5);
  CHECK_THROWS_AS(h.query(), std::logic_error);
}

TEST_CASE("window of live starts caps the instance count") {
  auto h = make_hist(8, 0.5);
  for (int i = 0; i < 100; ++i) {
    h.insert(0);
    // Live starts lie in [window_start, clock] (8 values) plus one kept
    // expired instance.
    CHECK(h.instance_count() <= 10);
    check_invariants(h);
  }
}

TEST_CASE("small windows with no compaction answer exactly") {
  auto h = make_hist(4, 0.5);
  for (int i = 1; i <= 12; ++i) {
    h.insert(0);
    // Counts stay far below the 2/(1-gamma) deletion onset, so every start
    // survives and the query counts the window exactly.
    CHECK(h.query() == static_cast<double>(std::min(i, 4)));
  }
  auto h2 = make_hist(8, 0.25);
  for (int i = 1; i <= 20; ++i) h2.insert(0);
  CHECK(h2.query() >= 6.0);
  CHECK(h2.query() <= 8.0);
}

TEST_CASE("compacted histogram still brackets the window count") {
  auto h = make_hist(64, 0.25);
  bool compacted = false;
  for (int i = 1; i <= 2000; ++i) {
    h.insert(0);
    double exact = static_cast<double>(std::min(i, 64));
    double q = h.query();
    CHECK(q <= exact);
    CHECK(q >= (1.0 - h.epsilon()) * exact - 1e-9);
    check_invariants(h);
    compacted = compacted || h.instance_count() < static_cast<std::size_t>(std::min(i, 66));
  }
  CHECK(compacted);  // the deletion rule actually fired at this scale
}

TEST_CASE("expired instance is dropped once its successor covers the window") {
  auto h = make_hist(4, 0.5);
  for (int i = 1; i <= 10; ++i) {
    h.insert(0);
    const auto& e = h.entries();
    if (e.size() >= 2) CHECK(e[1].start > h.window_start());
  }
}

TEST_CASE("query returns the oldest live suffix") {
  auto h = make_hist(4, 0.5);
  for (int i = 1; i <= 9; ++i) h.insert(0);
  // window_start = 6; instance starts are dense, so the bracket is exact.
  const auto& e = h.entries();
  bool found = false;
  for (const auto& entry : e)
    if (entry.start >= h.window_start()) {
      CHECK(h.query() == entry.est);
      found = true;
      break;
    }
  CHECK(found);
}
