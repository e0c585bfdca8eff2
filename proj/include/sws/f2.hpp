// Second-moment sketch: 96 sign counters in 6 groups, estimate is the median
// of the group means. Group medians give the usual F2 guarantees; counters are
// integers so merging segment sketches is exact.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "sws/hashing.hpp"

namespace sws {

inline constexpr unsigned kAmsCounters = 96;
inline constexpr unsigned kAmsGroups = 6;
inline constexpr unsigned kAmsGroupWidth = kAmsCounters / kAmsGroups;

// The 96 six-wise independent sign functions backing a family of sketches.
// Sketches sharing one family (same master seed and universe) merge exactly.
class RademacherFamily {
 public:
  RademacherFamily(HashSeed master, std::uint64_t universe);

  std::array<std::int8_t, kAmsCounters> signs(std::uint64_t item) const;
  int sign(unsigned counter, std::uint64_t item) const;

  std::uint64_t universe() const { return universe_; }
  HashSeed master() const { return master_; }

  friend bool operator==(const RademacherFamily& a, const RademacherFamily& b) {
    return a.master_.value == b.master_.value && a.universe_ == b.universe_;
  }

 private:
  HashSeed master_;
  std::uint64_t universe_;
  std::vector<KWiseHash> h_;
};

class AmsSketch {
 public:
  explicit AmsSketch(std::shared_ptr<const RademacherFamily> family);

  void update(std::uint64_t item);
  void apply_signs(const std::array<std::int8_t, kAmsCounters>& signs);
  // Counterwise sum; both sketches must use the same sign family.
  void merge(const AmsSketch& other);
  // Median over the 6 group means of squared counters.
  double estimate() const;

  const std::array<std::int64_t, kAmsCounters>& counters() const { return counters_; }
  // Snapshot restore: overwrite the counters wholesale.
  void set_counters(const std::array<std::int64_t, kAmsCounters>& counters) {
    counters_ = counters;
  }
  const std::shared_ptr<const RademacherFamily>& family() const { return family_; }

 private:
  std::shared_ptr<const RademacherFamily> family_;
  std::array<std::int64_t, kAmsCounters> counters_{};
};

// Suffix sketch for the histogram: estimates the l2 norm (sqrt of F2), so the
// histogram's smoothness bands work on the scale where the norm is 1-smooth.
class F2Suffix {
 public:
  explicit F2Suffix(std::shared_ptr<const RademacherFamily> family) : ams_(std::move(family)) {}

  void update(std::uint64_t item) { ams_.update(item); }
  void apply_signs(const std::array<std::int8_t, kAmsCounters>& signs) { ams_.apply_signs(signs); }
  double estimate() const { return std::sqrt(ams_.estimate()); }

  AmsSketch& ams() { return ams_; }
  const AmsSketch& ams() const { return ams_; }

 private:
  AmsSketch ams_;
};

}  // namespace sws
