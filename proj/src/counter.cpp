#include "sws/counter.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace sws {

CounterHistogram::CounterHistogram(std::uint64_t window, double epsilon) : window_(window) {
  if (window == 0) throw std::invalid_argument("CounterHistogram: window must be positive");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("CounterHistogram: epsilon must lie in (0,1]");
  k_ = static_cast<unsigned>(std::ceil(1.0 / epsilon));
}

CounterHistogram CounterHistogram::restore(std::uint64_t window, double epsilon,
                                           std::uint64_t first_clock, std::uint64_t clock,
                                           std::vector<Bucket> buckets) {
  CounterHistogram c(window, epsilon);
  if (first_clock > clock || (first_clock == 0 && (clock != 0 || !buckets.empty())))
    throw std::invalid_argument("CounterHistogram: inconsistent snapshot clocks");
  const std::uint64_t start = clock >= window ? clock - window + 1 : 1;
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    const auto& b = buckets[i];
    if (b.size == 0 || (b.size & (b.size - 1)) != 0)
      throw std::invalid_argument("CounterHistogram: bucket size not a power of two");
    if (b.newest < start || b.newest > clock || b.newest < first_clock)
      throw std::invalid_argument("CounterHistogram: bucket timestamp out of range");
    if (i > 0 && (b.newest <= buckets[i - 1].newest || b.size > buckets[i - 1].size))
      throw std::invalid_argument("CounterHistogram: bucket list not canonical");
  }
  c.first_clock_ = first_clock;
  c.clock_ = clock;
  c.buckets_.assign(buckets.begin(), buckets.end());
  return c;
}

void CounterHistogram::observe(bool arrived, std::uint64_t clock) {
  if (clock == 0) throw std::invalid_argument("CounterHistogram: clock starts at 1");
  if (clock <= clock_) throw std::domain_error("CounterHistogram: clock must increase");
  if (first_clock_ == 0) first_clock_ = clock;
  clock_ = clock;
  if (arrived) {
    buckets_.push_back(Bucket{clock, 1});
    cascade();
  }
  while (!buckets_.empty() && buckets_.front().newest < window_start())
    buckets_.pop_front();
}

// Merge the two oldest buckets of a size once k+2 of that size exist, rolling
// the merge upward through the doubled sizes.
void CounterHistogram::cascade() {
  std::uint64_t size = 1;
  // Buckets are oldest first with non-increasing sizes, so each size forms one
  // contiguous run; runs of larger sizes sit strictly earlier.
  std::size_t run_end = buckets_.size();  // one past the run of `size`
  for (;;) {
    std::size_t run_begin = run_end;
    while (run_begin > 0 && buckets_[run_begin - 1].size == size) --run_begin;
    if (run_end - run_begin < static_cast<std::size_t>(k_) + 2) return;
    buckets_[run_begin + 1].size = 2 * size;
    buckets_.erase(buckets_.begin() + static_cast<std::ptrdiff_t>(run_begin));
    size *= 2;
    run_end = run_begin + 1;
  }
}

double CounterHistogram::estimate() const {
  if (buckets_.empty()) return 0.0;
  if (exact()) {
    std::uint64_t total = 0;
    for (const auto& b : buckets_) total += b.size;
    return static_cast<double>(total);
  }
  // The oldest bucket may straddle the window edge: count half of it, except a
  // singleton bucket whose one arrival is provably inside the window.
  std::uint64_t rest = 0;
  for (std::size_t i = 1; i < buckets_.size(); ++i) rest += buckets_[i].size;
  const auto& oldest = buckets_.front();
  const double part = oldest.size == 1 ? 1.0 : static_cast<double>(oldest.size) / 2.0;
  return static_cast<double>(rest) + part;
}

bool CounterHistogram::exact() const {
  return first_clock_ == 0 || window_start() <= first_clock_;
}

std::size_t CounterHistogram::bucket_bound() const {
  const unsigned log2n = std::bit_width(window_) - 1;
  return static_cast<std::size_t>(k_ + 1) * (log2n + 2);
}

}  // namespace sws
