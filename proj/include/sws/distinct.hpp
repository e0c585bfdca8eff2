// Sliding-window distinct counting: per-repetition level tables whose cells
// hold instance ids, a shared start list compacted smooth-histogram style, an
// exact small-set fast path, and the occupancy estimator.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sws/hashing.hpp"

namespace sws {

// Expected occupancy of B bins after t balls: B*(1-(1-1/B)^t).
double phi(double t, std::uint64_t bins);
// Inverse in t: phi_inv(B, phi(t, B)) == t.
double phi_inv(std::uint64_t bins, double occupancy);

// Decoded content of a serialized sketch table.
struct TableState {
  unsigned rows = 0;          // w
  std::uint64_t buckets = 0;  // B
  unsigned repetitions = 0;   // R
  std::uint64_t window = 0;   // n
  std::vector<std::uint64_t> starts;  // live instance starts, increasing
  // cells[rep][row][col]: rank into starts (1-based), 0 = absent everywhere.
  std::vector<std::vector<std::vector<std::uint32_t>>> cells;

  bool operator==(const TableState&) const = default;
};

std::vector<std::uint8_t> serialize_table(const TableState& state);
TableState deserialize_table(std::span<const std::uint8_t> bytes);

class DistinctSketch {
 public:
  // repetitions = 0 picks max(3, 2*ceil(log2 log2 window) + 1); an explicit
  // value must be odd.
  DistinctSketch(std::uint64_t window, double epsilon, std::uint64_t universe,
                 HashSeed master, unsigned repetitions = 0);

  void insert(std::uint64_t item);
  double query() const;

  std::uint64_t window() const { return window_; }
  std::uint64_t universe() const { return universe_; }
  double epsilon() const { return epsilon_; }
  unsigned rows() const { return rows_; }
  std::uint64_t buckets() const { return buckets_; }
  unsigned repetitions() const { return static_cast<unsigned>(reps_.size()); }
  std::uint64_t clock() const { return clock_; }
  std::uint64_t window_start() const { return clock_ >= window_ ? clock_ - window_ + 1 : 1; }

  const std::vector<std::uint64_t>& instance_starts() const { return starts_; }
  bool small_set_saturated() const { return saturated_; }
  std::uint64_t small_set_capacity() const { return small_cap_; }

  unsigned level_of(unsigned rep, std::uint64_t item) const;
  std::uint64_t bucket_of(unsigned rep, std::uint64_t item) const;
  // Translated cell value: rank of the newest live instance at or before the
  // cell's last stamp.
  std::uint32_t cell_rank(unsigned rep, unsigned row, std::uint64_t col) const;
  // #columns in the row whose rank is >= rank_min (the |h2(S_k)| occupancy of
  // the suffix starting at instance rank_min).
  std::uint64_t occupancy(unsigned rep, unsigned row, std::uint32_t rank_min) const;

  TableState table_state() const;
  std::vector<std::uint8_t> serialize() const;

  std::uint64_t memory_bytes() const;

 private:
  struct Rep {
    KWiseHash level_hash;
    KWiseHash bucket_hash;
    std::vector<std::uint32_t> cells;              // rows*B raw stamps (arrival clocks)
    std::vector<std::vector<std::uint32_t>> cnt;   // [row][slot] column counts per rank
  };

  std::uint32_t rank_of_raw(std::uint32_t raw) const;
  double estimate_at(const Rep& rep, std::uint32_t rank,
                     const std::vector<std::uint64_t>& occ_row) const;
  // Median across repetitions of the suffix estimate at each live rank.
  std::vector<double> suffix_estimates() const;
  double rep_estimate(const Rep& rep, std::uint32_t rank) const;
  void delete_instance(std::size_t rank);  // 1-based interior or oldest
  void compact_and_expire();

  std::uint64_t window_;
  double epsilon_;
  double gamma_;
  std::uint64_t universe_;
  unsigned level_width_;  // ceil(log2 universe); rows_ = level_width_ + 1
  unsigned rows_;
  std::uint64_t buckets_;
  std::uint64_t small_cap_;
  std::uint64_t clock_ = 0;
  std::vector<std::uint64_t> starts_;
  std::vector<Rep> reps_;
  std::map<std::uint64_t, std::uint64_t> small_;  // item -> last arrival clock
  bool saturated_ = false;
};

}  // namespace sws
