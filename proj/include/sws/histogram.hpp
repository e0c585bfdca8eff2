// Suffix-sketch histogram over a sliding window: keeps sketches for a short
// list of suffix start times, compacting neighbours whose estimates are close
// and expiring starts that fall out of the window.
#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <stdexcept>

namespace sws {

// Sketch concept: update(item), estimate() -> double (non-negative).
template <typename S>
class SmoothHistogram {
 public:
  struct Entry {
    std::uint64_t start;  // 1-based arrival index the suffix begins at
    S sketch;
    double est;
  };

  SmoothHistogram(std::uint64_t window, double epsilon, std::function<S()> factory)
      : window_(window), epsilon_(epsilon), gamma_(1.0 - epsilon / 4.0),
        factory_(std::move(factory)) {
    if (window == 0) throw std::invalid_argument("SmoothHistogram: window must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw std::invalid_argument("SmoothHistogram: epsilon must lie in (0,1)");
  }

  // Arrival protocol: begin_arrival(), feed the item to every entry's sketch
  // (entries_mut() or insert()), then finish_arrival().
  void begin_arrival() {
    ++clock_;
    entries_.push_back(Entry{clock_, factory_(), 0.0});
  }

  void finish_arrival() {
    for (auto& e : entries_) e.est = e.sketch.estimate();
    compact();
    expire();
  }

  void insert(std::uint64_t item) {
    begin_arrival();
    for (auto& e : entries_) e.sketch.update(item);
    finish_arrival();
  }

  // Estimate for the window (the most recent min(clock, window) arrivals):
  // the oldest entry whose suffix lies inside the window.
  double query() const {
    if (entries_.empty()) throw std::logic_error("SmoothHistogram: query before any arrival");
    const std::uint64_t w = window_start();
    for (const auto& e : entries_)
      if (e.start >= w) return e.sketch.estimate();
    return entries_.back().sketch.estimate();  // unreachable: newest start == clock >= w
  }

  std::uint64_t window_start() const { return clock_ >= window_ ? clock_ - window_ + 1 : 1; }
  std::uint64_t clock() const { return clock_; }
  std::uint64_t window() const { return window_; }
  double epsilon() const { return epsilon_; }
  double gamma() const { return gamma_; }
  std::size_t instance_count() const { return entries_.size(); }
  const std::deque<Entry>& entries() const { return entries_; }
  std::deque<Entry>& entries_mut() { return entries_; }

 private:
  // Delete interior entry j while est(j+1) >= gamma * est(j-1): the two
  // neighbours are already within the smoothness band, so j adds nothing.
  void compact() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 1; j + 1 < entries_.size(); ++j) {
        if (entries_[j + 1].est >= gamma_ * entries_[j - 1].est) {
          entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
      }
    }
  }

  // Drop the oldest entry while the next one still covers the whole window.
  void expire() {
    const std::uint64_t w = window_start();
    while (entries_.size() >= 2 && entries_[1].start <= w)
      entries_.pop_front();
  }

  std::uint64_t window_;
  double epsilon_;
  double gamma_;
  std::function<S()> factory_;
  std::deque<Entry> entries_;
  std::uint64_t clock_ = 0;
};

// Exact arrival counter used as a suffix sketch (count since the suffix start).
struct CountingSuffix {
  std::uint64_t count = 0;
  void update(std::uint64_t) { ++count; }
  double estimate() const { return static_cast<double>(count); }
};

}  // namespace sws
