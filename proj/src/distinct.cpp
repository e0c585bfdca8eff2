#include "sws/distinct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sws/columns.hpp"
#include "sws/serialize_util.hpp"

namespace sws {

double phi(double t, std::uint64_t bins) {
  if (bins == 0) throw std::domain_error("phi: bins must be positive");
  if (t < 0.0) throw std::domain_error("phi: ball count must be nonnegative");
  // B*(1-(1-1/B)^t), computed as -B*expm1(t*log1p(-1/B)) for small-y accuracy.
  if (bins == 1) return t == 0.0 ? 0.0 : 1.0;
  const double base = std::log1p(-1.0 / static_cast<double>(bins));
  return -static_cast<double>(bins) * std::expm1(t * base);
}

double phi_inv(std::uint64_t bins, double occupancy) {
  if (bins == 0) throw std::domain_error("phi_inv: bins must be positive");
  if (occupancy < 0.0 || occupancy >= static_cast<double>(bins))
    throw std::domain_error("phi_inv: occupancy must lie in [0, bins)");
  if (bins == 1) return occupancy;  // only occupancy 0 reaches here
  return std::log1p(-occupancy / static_cast<double>(bins)) /
         std::log1p(-1.0 / static_cast<double>(bins));
}

namespace {

unsigned default_repetitions(std::uint64_t window) {
  const double l = std::log2(static_cast<double>(window));
  if (l <= 2.0) return 3;
  const double r = 2.0 * std::ceil(std::log2(l)) + 1.0;
  return std::max(3u, static_cast<unsigned>(r));
}

}  // namespace

DistinctSketch::DistinctSketch(std::uint64_t window, double epsilon, std::uint64_t universe,
                               HashSeed master, unsigned repetitions)
    : window_(window), epsilon_(epsilon), gamma_(1.0 - epsilon / 4.0), universe_(universe) {
  if (window == 0) throw std::invalid_argument("DistinctSketch: window must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("DistinctSketch: epsilon must lie in (0,1)");
  if (universe == 0 || universe > kMaxUniverse)
    throw std::invalid_argument("DistinctSketch: universe out of range");
  if (repetitions == 0) repetitions = default_repetitions(window);
  if (repetitions % 2 == 0)
    throw std::invalid_argument("DistinctSketch: repetitions must be odd");

  level_width_ = ceil_log2(universe);
  rows_ = level_width_ + 1;
  buckets_ = static_cast<std::uint64_t>(std::ceil(100.0 / (epsilon * epsilon)));
  small_cap_ = static_cast<std::uint64_t>(std::ceil(4.0 / (epsilon * epsilon)));

  reps_.reserve(repetitions);
  for (unsigned r = 0; r < repetitions; ++r) {
    Rep rep{make_level_hash(derive_seed(master, kSeedDistinctLevel, r), universe),
            make_pairwise(derive_seed(master, kSeedDistinctBucket, r), universe, buckets_),
            std::vector<std::uint32_t>(rows_ * buckets_, 0),
            std::vector<std::vector<std::uint32_t>>(rows_)};
    for (unsigned row = 0; row < rows_; ++row)
      rep.cnt[row].assign(1, 0);  // slot 0: columns pointing at no live instance
    reps_.push_back(std::move(rep));
  }
  // All B columns of every row start in slot 0.
  for (auto& rep : reps_)
    for (unsigned row = 0; row < rows_; ++row)
      rep.cnt[row][0] = static_cast<std::uint32_t>(buckets_);
}

unsigned DistinctSketch::level_of(unsigned rep, std::uint64_t item) const {
  const auto& r = reps_.at(rep);
  if (level_width_ == 0) return 0;
  return lsb(r.level_hash(item), level_width_);
}

std::uint64_t DistinctSketch::bucket_of(unsigned rep, std::uint64_t item) const {
  return reps_.at(rep).bucket_hash(item);
}

std::uint32_t DistinctSketch::rank_of_raw(std::uint32_t raw) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), static_cast<std::uint64_t>(raw));
  return static_cast<std::uint32_t>(it - starts_.begin());
}

std::uint32_t DistinctSketch::cell_rank(unsigned rep, unsigned row, std::uint64_t col) const {
  const auto& r = reps_.at(rep);
  if (row >= rows_ || col >= buckets_)
    throw std::out_of_range("DistinctSketch: cell index out of range");
  return rank_of_raw(r.cells[row * buckets_ + col]);
}

std::uint64_t DistinctSketch::occupancy(unsigned rep, unsigned row, std::uint32_t rank_min) const {
  const auto& r = reps_.at(rep);
  if (row >= rows_) throw std::out_of_range("DistinctSketch: row out of range");
  std::uint64_t occ = 0;
  const auto& cnt = r.cnt[row];
  for (std::size_t s = rank_min; s < cnt.size(); ++s) occ += cnt[s];
  return occ;
}

void DistinctSketch::insert(std::uint64_t item) {
  if (item >= universe_) throw std::domain_error("DistinctSketch: item outside universe");
  ++clock_;
  starts_.push_back(clock_);
  for (auto& rep : reps_)
    for (unsigned row = 0; row < rows_; ++row) rep.cnt[row].push_back(0);

  if (!saturated_) {
    auto it = small_.find(item);
    if (it != small_.end()) {
      it->second = clock_;
    } else if (small_.size() < small_cap_) {
      small_.emplace(item, clock_);
    } else {
      saturated_ = true;
      small_.clear();
    }
  }

  const auto new_rank = static_cast<std::uint32_t>(starts_.size());
  const auto stamp = static_cast<std::uint32_t>(clock_);
  for (auto& rep : reps_) {
    const unsigned lvl = level_width_ == 0 ? 0 : lsb(rep.level_hash(item), level_width_);
    const std::uint64_t col = rep.bucket_hash(item);
    for (unsigned row = 0; row <= lvl; ++row) {
      auto& cell = rep.cells[row * buckets_ + col];
      const std::uint32_t old_rank = rank_of_raw(cell);
      --rep.cnt[row][old_rank];
      ++rep.cnt[row][new_rank];
      cell = stamp;
    }
  }

  compact_and_expire();
}

double DistinctSketch::rep_estimate(const Rep& rep, std::uint32_t rank) const {
  // Occupancy per level for the suffix starting at instance `rank`, then the
  // smallest level whose occupancy fits the estimator's stable range.
  std::uint64_t chosen_occ = 0;
  unsigned chosen_level = rows_ - 1;
  for (unsigned row = 0; row < rows_; ++row) {
    std::uint64_t occ = 0;
    const auto& cnt = rep.cnt[row];
    for (std::size_t s = rank; s < cnt.size(); ++s) occ += cnt[s];
    if (occ * 4 <= buckets_) {
      chosen_occ = occ;
      chosen_level = row;
      break;
    }
    if (row == rows_ - 1) chosen_occ = std::min<std::uint64_t>(occ, buckets_ - 1);
  }
  return std::ldexp(phi_inv(buckets_, static_cast<double>(chosen_occ)), chosen_level);
}

std::vector<double> DistinctSketch::suffix_estimates() const {
  const std::size_t live = starts_.size();
  std::vector<double> med(live);
  if (live == 0) return med;
  // ests[rank-1][rep]
  std::vector<double> ests(live * reps_.size());
  std::vector<std::uint64_t> occ(rows_ * (live + 2));
  for (std::size_t rep_i = 0; rep_i < reps_.size(); ++rep_i) {
    const Rep& rep = reps_[rep_i];
    for (unsigned row = 0; row < rows_; ++row) {
      std::uint64_t* suffix = occ.data() + row * (live + 2);
      suffix[live + 1] = 0;
      for (std::size_t s = live; s >= 1; --s)
        suffix[s] = suffix[s + 1] + rep.cnt[row][s];
    }
    for (std::size_t rank = 1; rank <= live; ++rank) {
      std::uint64_t chosen_occ = 0;
      unsigned chosen_level = rows_ - 1;
      for (unsigned row = 0; row < rows_; ++row) {
        const std::uint64_t o = occ[row * (live + 2) + rank];
        if (o * 4 <= buckets_) {
          chosen_occ = o;
          chosen_level = row;
          break;
        }
        if (row == rows_ - 1) chosen_occ = std::min<std::uint64_t>(o, buckets_ - 1);
      }
      ests[(rank - 1) * reps_.size() + rep_i] =
          std::ldexp(phi_inv(buckets_, static_cast<double>(chosen_occ)), chosen_level);
    }
  }
  std::vector<double> buf(reps_.size());
  for (std::size_t rank = 1; rank <= live; ++rank) {
    std::copy_n(ests.begin() + (rank - 1) * reps_.size(), reps_.size(), buf.begin());
    std::nth_element(buf.begin(), buf.begin() + buf.size() / 2, buf.end());
    med[rank - 1] = buf[buf.size() / 2];
  }
  return med;
}

void DistinctSketch::delete_instance(std::size_t rank) {
  for (auto& rep : reps_)
    for (unsigned row = 0; row < rows_; ++row) {
      auto& cnt = rep.cnt[row];
      cnt[rank - 1] += cnt[rank];
      cnt.erase(cnt.begin() + static_cast<std::ptrdiff_t>(rank));
    }
  starts_.erase(starts_.begin() + static_cast<std::ptrdiff_t>(rank - 1));
}

void DistinctSketch::compact_and_expire() {
  auto est = suffix_estimates();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 1; j + 1 < starts_.size(); ++j) {
      if (est[j + 1] >= gamma_ * est[j - 1]) {
        delete_instance(j + 1);  // est index j is instance rank j+1
        est.erase(est.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
  const std::uint64_t w = window_start();
  while (starts_.size() >= 2 && starts_[1] <= w) delete_instance(1);
}

double DistinctSketch::query() const {
  if (!saturated_) {
    const std::uint64_t w = window_start();
    std::uint64_t count = 0;
    for (const auto& [item, last] : small_)
      if (last >= w) ++count;
    return static_cast<double>(count);
  }
  if (starts_.empty()) return 0.0;
  const std::uint64_t w = window_start();
  const auto it = std::lower_bound(starts_.begin(), starts_.end(), w);
  // The newest instance starts at the current clock >= w, so `it` is valid.
  const auto rank = static_cast<std::uint32_t>(it - starts_.begin()) + 1;
  std::vector<double> ests;
  ests.reserve(reps_.size());
  for (const auto& rep : reps_) ests.push_back(rep_estimate(rep, rank));
  std::nth_element(ests.begin(), ests.begin() + ests.size() / 2, ests.end());
  return ests[ests.size() / 2];
}

TableState DistinctSketch::table_state() const {
  TableState st;
  st.rows = rows_;
  st.buckets = buckets_;
  st.repetitions = static_cast<unsigned>(reps_.size());
  st.window = window_;
  st.starts = starts_;
  st.cells.resize(reps_.size());
  for (std::size_t rep_i = 0; rep_i < reps_.size(); ++rep_i) {
    auto& grid = st.cells[rep_i];
    grid.assign(rows_, std::vector<std::uint32_t>(buckets_, 0));
    for (unsigned row = 0; row < rows_; ++row)
      for (std::uint64_t col = 0; col < buckets_; ++col)
        grid[row][col] = rank_of_raw(reps_[rep_i].cells[row * buckets_ + col]);
  }
  return st;
}

std::vector<std::uint8_t> DistinctSketch::serialize() const {
  return serialize_table(table_state());
}

std::uint64_t DistinctSketch::memory_bytes() const {
  std::uint64_t bytes = sizeof(*this);
  for (const auto& rep : reps_) {
    bytes += rep.cells.size() * sizeof(std::uint32_t);
    for (const auto& cnt : rep.cnt) bytes += cnt.size() * sizeof(std::uint32_t);
    bytes += rep.level_hash.degree() * sizeof(std::uint64_t);
    bytes += rep.bucket_hash.degree() * sizeof(std::uint64_t);
  }
  bytes += starts_.size() * sizeof(std::uint64_t);
  bytes += small_.size() * (sizeof(std::uint64_t) * 2 + 32);
  return bytes;
}

std::vector<std::uint8_t> serialize_table(const TableState& st) {
  if (st.rows == 0 || st.rows > 255)
    throw std::invalid_argument("serialize_table: rows out of range");
  if (st.repetitions == 0 || st.repetitions > 255)
    throw std::invalid_argument("serialize_table: repetitions out of range");
  if (st.starts.size() > 0xffff)
    throw std::invalid_argument("serialize_table: too many live instances");
  if (st.cells.size() != st.repetitions)
    throw std::invalid_argument("serialize_table: repetition count mismatch");

  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'C', 'H', 'D', 'E'});
  put_u8(out, 1);
  put_u8(out, static_cast<std::uint8_t>(st.rows));
  put_u32(out, static_cast<std::uint32_t>(st.buckets));
  put_u16(out, static_cast<std::uint16_t>(st.starts.size()));
  put_u8(out, static_cast<std::uint8_t>(st.repetitions));
  put_u64(out, st.window);
  for (std::uint64_t s : st.starts) put_u64(out, s);

  const auto live = static_cast<std::uint32_t>(st.starts.size());
  if (live == 0) return out;  // header-only: every cell is rank 0

  BinomialTable binom(st.rows + live, st.rows);
  const std::size_t width = column_rank_bytes(st.rows, live);
  std::vector<std::uint32_t> column(st.rows);
  for (const auto& grid : st.cells) {
    put_u32(out, static_cast<std::uint32_t>(1 + st.buckets * width));
    put_u8(out, static_cast<std::uint8_t>(width));
    for (std::uint64_t col = 0; col < st.buckets; ++col) {
      for (unsigned row = 0; row < st.rows; ++row) column[row] = grid.at(row).at(col);
      const auto bytes = encode_column(column, live, binom).to_bytes();
      out.insert(out.end(), bytes.begin(), bytes.end());
      out.insert(out.end(), width - bytes.size(), 0);
    }
  }
  return out;
}

TableState deserialize_table(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const auto magic = in.take(4);
  if (!(magic[0] == 'C' && magic[1] == 'H' && magic[2] == 'D' && magic[3] == 'E'))
    throw DecodeError("bad magic");
  if (in.u8() != 1) throw DecodeError("unsupported version");

  TableState st;
  st.rows = in.u8();
  st.buckets = in.u32();
  const std::uint16_t live = in.u16();
  st.repetitions = in.u8();
  st.window = in.u64();
  if (st.rows == 0 || st.repetitions == 0 || st.buckets == 0)
    throw DecodeError("bad header");

  st.starts.resize(live);
  for (auto& s : st.starts) s = in.u64();
  for (std::size_t i = 1; i < st.starts.size(); ++i)
    if (st.starts[i] <= st.starts[i - 1]) throw DecodeError("starts not increasing");

  st.cells.assign(st.repetitions,
                  std::vector<std::vector<std::uint32_t>>(
                      st.rows, std::vector<std::uint32_t>(st.buckets, 0)));
  if (live == 0) {
    if (!in.done()) throw DecodeError("trailing bytes");
    return st;
  }

  BinomialTable binom(st.rows + live, st.rows);
  const std::size_t width = column_rank_bytes(st.rows, live);
  for (auto& grid : st.cells) {
    const std::uint32_t block_len = in.u32();
    const std::size_t got_width = in.u8();
    if (got_width != width || block_len != 1 + st.buckets * width)
      throw DecodeError("bad repetition block");
    for (std::uint64_t col = 0; col < st.buckets; ++col) {
      const auto rank = BigUInt::from_bytes(in.take(width));
      std::vector<std::uint32_t> column;
      try {
        column = decode_column(rank, st.rows, live, binom);
      } catch (const std::domain_error&) {
        throw DecodeError("column rank out of range");
      }
      for (unsigned row = 0; row < st.rows; ++row) grid[row][col] = column[row];
    }
  }
  if (!in.done()) throw DecodeError("trailing bytes");
  return st;
}

}  // namespace sws
