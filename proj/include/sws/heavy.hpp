// lp heavy hitters over a sliding window: an l2-scale histogram of AMS
// segment sketches, one candidate finder per live instance with online
// threshold reporting, and a registry of per-item windowed counters filtered
// at query time.
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "sws/counter.hpp"
#include "sws/f2.hpp"
#include "sws/hashing.hpp"

namespace sws {

struct HHParams {
  std::uint64_t window = 0;
  double epsilon = 0.0;  // accuracy the state is built to answer query_lp at
  double p = 2.0;        // norm order in (0, 2]
  std::uint64_t universe = 0;
};

// CountSketch whose rows are shared hash families; an item joins the
// candidate set when its point estimate crosses the caller's threshold.
class CandidateFinder {
 public:
  CandidateFinder(std::shared_ptr<const std::vector<KWiseHash>> bucket_rows,
                  std::shared_ptr<const std::vector<KWiseHash>> sign_rows,
                  std::uint64_t columns, double theta);

  void update(std::uint64_t item);
  // Median over rows of signed counter reads.
  double point_estimate(std::uint64_t item) const;
  // Admit the item when point_estimate >= threshold; prunes the set to its
  // cap by stored estimate. Returns true when the item newly entered.
  bool offer(std::uint64_t item, double threshold);

  bool is_candidate(std::uint64_t item) const { return candidates_.count(item) != 0; }
  // (item, fresh point estimate) for every candidate.
  std::vector<std::pair<std::uint64_t, double>> report() const;
  const std::map<std::uint64_t, double>& candidates() const { return candidates_; }
  std::size_t cap() const { return cap_; }
  unsigned depth() const { return static_cast<unsigned>(bucket_rows_->size()); }
  std::uint64_t columns() const { return columns_; }
  const std::vector<std::int32_t>& table() const { return table_; }

  // Snapshot restore: overwrite counters and candidate set.
  void restore(std::vector<std::int32_t> table, std::map<std::uint64_t, double> candidates);

 private:
  std::shared_ptr<const std::vector<KWiseHash>> bucket_rows_;
  std::shared_ptr<const std::vector<KWiseHash>> sign_rows_;
  std::uint64_t columns_;
  std::size_t cap_;
  std::vector<std::int32_t> table_;  // depth x columns
  std::map<std::uint64_t, double> candidates_;  // item -> estimate at admission
};

class HeavyHitterState {
 public:
  struct Instance {
    std::uint64_t start;
    AmsSketch ams;
    CandidateFinder finder;
    double est;  // sqrt of the AMS estimate (l2 scale)
  };
  struct Tracked {
    CounterHistogram counter;
    std::uint64_t created;
  };

  HeavyHitterState(const HHParams& params, HashSeed master);

  void insert(std::uint64_t item);

  // Items whose counter estimate clears (eps/4) * sqrt(F2 estimate of the
  // oldest instance), sorted by estimate descending then item ascending.
  std::vector<std::pair<std::uint64_t, double>> query_l2(double eps) const;
  std::vector<std::pair<std::uint64_t, double>> query_lp(double eps, double p) const;

  const HHParams& params() const { return params_; }
  double theta() const { return theta_; }
  std::uint64_t columns() const { return columns_; }
  unsigned depth() const { return depth_; }
  std::uint64_t clock() const { return clock_; }
  std::uint64_t window_start() const {
    return clock_ >= params_.window ? clock_ - params_.window + 1 : 1;
  }
  const std::deque<Instance>& instances() const { return instances_; }
  const std::map<std::uint64_t, Tracked>& registry() const { return registry_; }
  std::size_t registry_cap() const;
  std::uint64_t memory_bytes() const;

  std::vector<std::uint8_t> serialize() const;
  static HeavyHitterState deserialize(std::span<const std::uint8_t> bytes);

 private:
  CandidateFinder make_finder() const;
  void compact_and_expire();
  void evict_registry_overflow();

  HHParams params_;
  HashSeed master_;
  double theta_;
  double gamma_;  // compaction factor on the l2 scale, from eps_est = 1/2
  std::uint64_t columns_;
  unsigned depth_;
  std::shared_ptr<const RademacherFamily> family_;
  std::shared_ptr<const std::vector<KWiseHash>> finder_buckets_;
  std::shared_ptr<const std::vector<KWiseHash>> finder_signs_;
  std::deque<Instance> instances_;
  std::map<std::uint64_t, Tracked> registry_;
  std::uint64_t clock_ = 0;
};

}  // namespace sws
