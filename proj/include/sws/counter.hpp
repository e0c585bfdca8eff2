// Approximate count of tracked arrivals inside a sliding window, kept as
// exponentially sized buckets. Exact while every observed clock is still in
// the window; afterwards only the straddling oldest bucket is approximated.
#pragma once

#include <cstdint>
#include <deque>
#include <vector>

namespace sws {

class CounterHistogram {
 public:
  struct Bucket {
    std::uint64_t newest;  // clock of the most recent arrival in the bucket
    std::uint64_t size;    // power of two
  };

  CounterHistogram(std::uint64_t window, double epsilon);

  // Rebuild a counter from snapshot fields; throws std::invalid_argument when
  // the bucket list violates the histogram invariants.
  static CounterHistogram restore(std::uint64_t window, double epsilon,
                                  std::uint64_t first_clock, std::uint64_t clock,
                                  std::vector<Bucket> buckets);

  // Advances the counter to `clock` (strictly increasing, >= 1); `arrived`
  // says whether the tracked item occurred at that clock.
  void observe(bool arrived, std::uint64_t clock);

  double estimate() const;
  bool exact() const;  // estimate() is exactly the window count

  std::uint64_t window() const { return window_; }
  unsigned k() const { return k_; }
  std::uint64_t clock() const { return clock_; }
  std::uint64_t first_clock() const { return first_clock_; }
  std::uint64_t window_start() const { return clock_ >= window_ ? clock_ - window_ + 1 : 1; }
  const std::deque<Bucket>& buckets() const { return buckets_; }
  // Invariant ceiling on the bucket count: (k+1) * (floor(log2 window) + 2).
  std::size_t bucket_bound() const;

 private:
  void cascade();

  std::uint64_t window_;
  unsigned k_;
  std::uint64_t clock_ = 0;
  std::uint64_t first_clock_ = 0;  // 0 until the first observe
  std::deque<Bucket> buckets_;     // oldest first, sizes non-increasing
};

}  // namespace sws
