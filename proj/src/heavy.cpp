#include "sws/heavy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "sws/serialize_util.hpp"

namespace sws {

namespace {

void put_f64(std::vector<std::uint8_t>& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

double read_f64(ByteReader& in) { return std::bit_cast<double>(in.u64()); }

}  // namespace

CandidateFinder::CandidateFinder(std::shared_ptr<const std::vector<KWiseHash>> bucket_rows,
                                 std::shared_ptr<const std::vector<KWiseHash>> sign_rows,
                                 std::uint64_t columns, double theta)
    : bucket_rows_(std::move(bucket_rows)), sign_rows_(std::move(sign_rows)),
      columns_(columns) {
  if (!bucket_rows_ || !sign_rows_ || bucket_rows_->size() != sign_rows_->size() ||
      bucket_rows_->empty())
    throw std::invalid_argument("CandidateFinder: malformed row families");
  if (columns == 0) throw std::invalid_argument("CandidateFinder: columns must be positive");
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("CandidateFinder: theta must lie in (0,1)");
  cap_ = static_cast<std::size_t>(2.0 / (theta * theta));
  table_.assign(bucket_rows_->size() * columns, 0);
}

void CandidateFinder::update(std::uint64_t item) {
  const auto& buckets = *bucket_rows_;
  const auto& signs = *sign_rows_;
  for (std::size_t r = 0; r < buckets.size(); ++r)
    table_[r * columns_ + buckets[r](item)] +=
        static_cast<std::int32_t>(signs[r].sign(item));
}

double CandidateFinder::point_estimate(std::uint64_t item) const {
  const auto& buckets = *bucket_rows_;
  const auto& signs = *sign_rows_;
  std::vector<double> reads(buckets.size());
  for (std::size_t r = 0; r < buckets.size(); ++r)
    reads[r] = static_cast<double>(signs[r].sign(item)) *
               static_cast<double>(table_[r * columns_ + buckets[r](item)]);
  std::sort(reads.begin(), reads.end());
  const std::size_t d = reads.size();
  return d % 2 == 1 ? reads[d / 2] : 0.5 * (reads[d / 2 - 1] + reads[d / 2]);
}

bool CandidateFinder::offer(std::uint64_t item, double threshold) {
  const double est = point_estimate(item);
  auto it = candidates_.find(item);
  if (it != candidates_.end()) {
    if (est >= threshold) it->second = est;
    return false;
  }
  if (est < threshold) return false;
  candidates_.emplace(item, est);
  while (candidates_.size() > cap_) {
    // Prune smallest stored estimate; ties drop the larger item id.
    auto victim = candidates_.begin();
    for (auto c = candidates_.begin(); c != candidates_.end(); ++c)
      if (c->second < victim->second ||
          (c->second == victim->second && c->first > victim->first))
        victim = c;
    candidates_.erase(victim);
  }
  return candidates_.count(item) != 0;
}

std::vector<std::pair<std::uint64_t, double>> CandidateFinder::report() const {
  std::vector<std::pair<std::uint64_t, double>> out;
  out.reserve(candidates_.size());
  for (const auto& [item, est] : candidates_) out.emplace_back(item, point_estimate(item));
  return out;
}

void CandidateFinder::restore(std::vector<std::int32_t> table,
                              std::map<std::uint64_t, double> candidates) {
  if (table.size() != table_.size())
    throw std::invalid_argument("CandidateFinder: wrong table size");
  if (candidates.size() > cap_)
    throw std::invalid_argument("CandidateFinder: too many candidates");
  table_ = std::move(table);
  candidates_ = std::move(candidates);
}

HeavyHitterState::HeavyHitterState(const HHParams& params, HashSeed master)
    : params_(params), master_(master) {
  if (params.window == 0)
    throw std::invalid_argument("HeavyHitterState: window must be positive");
  if (!(params.epsilon > 0.0 && params.epsilon <= 1.0))
    throw std::invalid_argument("HeavyHitterState: epsilon must lie in (0,1]");
  if (!(params.p > 0.0 && params.p <= 2.0))
    throw std::domain_error("HeavyHitterState: p must lie in (0,2]");
  if (params.universe == 0 || params.universe > kMaxUniverse)
    throw std::invalid_argument("HeavyHitterState: universe out of range");

  theta_ = std::pow(params.epsilon, params.p / 2.0) / 16.0;
  gamma_ = 1.0 - 0.5 / 4.0;  // histogram runs at eps_est = 1/2 on the l2 scale
  columns_ = static_cast<std::uint64_t>(std::ceil(8.0 / (theta_ * theta_)));
  const double d = std::ceil(4.0 * std::log2(static_cast<double>(params.window)));
  depth_ = std::max(1u, static_cast<unsigned>(d));

  family_ = std::make_shared<const RademacherFamily>(master, params.universe);
  std::vector<KWiseHash> buckets, signs;
  buckets.reserve(depth_);
  signs.reserve(depth_);
  for (unsigned r = 0; r < depth_; ++r) {
    buckets.push_back(
        make_pairwise(derive_seed(master, kSeedFinderBucket, r), params.universe, columns_));
    signs.push_back(
        make_rademacher(derive_seed(master, kSeedFinderSign, r), params.universe, 4));
  }
  finder_buckets_ = std::make_shared<const std::vector<KWiseHash>>(std::move(buckets));
  finder_signs_ = std::make_shared<const std::vector<KWiseHash>>(std::move(signs));
}

CandidateFinder HeavyHitterState::make_finder() const {
  return CandidateFinder(finder_buckets_, finder_signs_, columns_, theta_);
}

void HeavyHitterState::insert(std::uint64_t item) {
  if (item >= params_.universe)
    throw std::domain_error("HeavyHitterState: item outside universe");
  ++clock_;
  instances_.push_back(Instance{clock_, AmsSketch(family_), make_finder(), 0.0});

  const auto signs = family_->signs(item);
  const auto count = static_cast<std::ptrdiff_t>(instances_.size());
#if defined(SWS_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (count > 8)
#endif
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto& inst = instances_[static_cast<std::size_t>(i)];
    inst.ams.apply_signs(signs);
    inst.finder.update(item);
    inst.est = std::sqrt(inst.ams.estimate());
  }

  // Online reporting, oldest instance first; a report anywhere creates the
  // item's counter, which then observes this same arrival.
  bool reported = false;
  for (auto& inst : instances_)
    if (inst.finder.offer(item, theta_ * inst.est)) reported = true;
  if (reported && registry_.find(item) == registry_.end()) {
    Tracked t{CounterHistogram(params_.window, 0.5), clock_};
    t.counter.observe(true, clock_);
    registry_.emplace(item, std::move(t));
  }
  for (auto& [key, tracked] : registry_) {
    if (tracked.created == clock_) continue;
    tracked.counter.observe(key == item, clock_);
  }

  compact_and_expire();
  evict_registry_overflow();
}

void HeavyHitterState::compact_and_expire() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 1; j + 1 < instances_.size(); ++j) {
      if (instances_[j + 1].est >= gamma_ * instances_[j - 1].est) {
        instances_.erase(instances_.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
  const std::uint64_t w = window_start();
  while (instances_.size() >= 2 && instances_[1].start <= w) instances_.pop_front();
}

std::size_t HeavyHitterState::registry_cap() const {
  return static_cast<std::size_t>(columns_) * std::max<std::size_t>(1, instances_.size());
}

void HeavyHitterState::evict_registry_overflow() {
  const std::size_t cap = registry_cap();
  if (registry_.size() <= cap) return;
  // Candidates of any live finder keep their counters so the oldest
  // instance's report set always stays backed.
  std::set<std::uint64_t> keep;
  for (const auto& inst : instances_)
    for (const auto& [item, est] : inst.finder.candidates()) keep.insert(item);
  while (registry_.size() > cap) {
    auto victim = registry_.end();
    double victim_est = 0.0;
    for (auto it = registry_.begin(); it != registry_.end(); ++it) {
      if (keep.count(it->first)) continue;
      const double est = it->second.counter.estimate();
      if (victim == registry_.end() || est < victim_est ||
          (est == victim_est && it->second.created < victim->second.created)) {
        victim = it;
        victim_est = est;
      }
    }
    if (victim == registry_.end()) break;  // everything protected; cap > protected set
    registry_.erase(victim);
  }
}

std::vector<std::pair<std::uint64_t, double>> HeavyHitterState::query_l2(double eps) const {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("HeavyHitterState: query epsilon must lie in (0,1]");
  std::vector<std::pair<std::uint64_t, double>> out;
  if (instances_.empty()) return out;
  const double lhat = std::sqrt(instances_.front().ams.estimate());
  const double bar = (eps / 4.0) * lhat;
  for (const auto& [item, tracked] : registry_) {
    const double fhat = tracked.counter.estimate();
    if (fhat >= bar) out.emplace_back(item, fhat);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

std::vector<std::pair<std::uint64_t, double>> HeavyHitterState::query_lp(double eps,
                                                                         double p) const {
  if (!(p > 0.0 && p <= 2.0)) throw std::domain_error("HeavyHitterState: p must lie in (0,2]");
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("HeavyHitterState: query epsilon must lie in (0,1]");
  return query_l2(std::pow(eps, p / 2.0));
}

std::uint64_t HeavyHitterState::memory_bytes() const {
  std::uint64_t bytes = sizeof(*this);
  bytes += (finder_buckets_->size() + finder_signs_->size() + kAmsCounters) * 8 * sizeof(std::uint64_t);
  for (const auto& inst : instances_) {
    bytes += sizeof(Instance);
    bytes += inst.finder.table().size() * sizeof(std::int32_t);
    bytes += inst.finder.candidates().size() * (2 * sizeof(std::uint64_t) + 32);
    bytes += kAmsCounters * sizeof(std::int64_t);
  }
  for (const auto& [item, tracked] : registry_) {
    bytes += 2 * sizeof(std::uint64_t) + 32;
    bytes += tracked.counter.buckets().size() * sizeof(CounterHistogram::Bucket);
  }
  return bytes;
}

std::vector<std::uint8_t> HeavyHitterState::serialize() const {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'C', 'H', 'H', 'H'});
  put_u8(out, 1);
  put_u64(out, params_.window);
  put_f64(out, params_.epsilon);
  put_f64(out, params_.p);
  put_u64(out, params_.universe);
  put_u64(out, master_.value);
  put_u64(out, clock_);

  put_u16(out, static_cast<std::uint16_t>(instances_.size()));
  for (const auto& inst : instances_) {
    std::vector<std::uint8_t> block;
    put_u64(block, inst.start);
    for (std::int64_t c : inst.ams.counters())
      put_u64(block, static_cast<std::uint64_t>(c));
    put_u32(block, static_cast<std::uint32_t>(inst.finder.candidates().size()));
    for (const auto& [item, est] : inst.finder.candidates()) {
      put_u64(block, item);
      put_f64(block, est);
    }
    for (std::int32_t v : inst.finder.table())
      put_u32(block, static_cast<std::uint32_t>(v));
    put_u32(out, static_cast<std::uint32_t>(block.size()));
    out.insert(out.end(), block.begin(), block.end());
  }

  put_u32(out, static_cast<std::uint32_t>(registry_.size()));
  for (const auto& [item, tracked] : registry_) {
    std::vector<std::uint8_t> block;
    put_u64(block, item);
    put_u64(block, tracked.created);
    put_u64(block, tracked.counter.first_clock());
    put_u64(block, tracked.counter.clock());
    put_u32(block, static_cast<std::uint32_t>(tracked.counter.buckets().size()));
    for (const auto& b : tracked.counter.buckets()) {
      put_u64(block, b.newest);
      put_u64(block, b.size);
    }
    put_u32(out, static_cast<std::uint32_t>(block.size()));
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

HeavyHitterState HeavyHitterState::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const auto magic = in.take(4);
  if (!(magic[0] == 'C' && magic[1] == 'H' && magic[2] == 'H' && magic[3] == 'H'))
    throw DecodeError("bad magic");
  if (in.u8() != 1) throw DecodeError("unsupported version");

  HHParams params;
  params.window = in.u64();
  params.epsilon = read_f64(in);
  params.p = read_f64(in);
  params.universe = in.u64();
  const HashSeed master{in.u64()};
  const std::uint64_t clock = in.u64();

  HeavyHitterState st = [&] {
    try {
      return HeavyHitterState(params, master);
    } catch (const std::exception&) {
      throw DecodeError("bad parameters");
    }
  }();
  st.clock_ = clock;

  const std::uint16_t inst_count = in.u16();
  std::uint64_t prev_start = 0;
  for (unsigned i = 0; i < inst_count; ++i) {
    const std::uint32_t block_len = in.u32();
    ByteReader block(in.take(block_len));
    Instance inst{0, AmsSketch(st.family_), st.make_finder(), 0.0};
    inst.start = block.u64();
    if (inst.start <= prev_start || inst.start > clock)
      throw DecodeError("instance starts not increasing");
    prev_start = inst.start;
    std::array<std::int64_t, kAmsCounters> counters;
    for (auto& c : counters) c = static_cast<std::int64_t>(block.u64());
    std::map<std::uint64_t, double> cands;
    const std::uint32_t cand_count = block.u32();
    for (std::uint32_t c = 0; c < cand_count; ++c) {
      const std::uint64_t item = block.u64();
      cands[item] = read_f64(block);
    }
    std::vector<std::int32_t> table(st.depth_ * st.columns_);
    for (auto& v : table) v = static_cast<std::int32_t>(block.u32());
    if (!block.done()) throw DecodeError("trailing bytes in instance block");
    try {
      inst.finder.restore(std::move(table), std::move(cands));
    } catch (const std::invalid_argument&) {
      throw DecodeError("bad finder state");
    }
    inst.ams.set_counters(counters);
    inst.est = std::sqrt(inst.ams.estimate());
    st.instances_.push_back(std::move(inst));
  }

  const std::uint32_t reg_count = in.u32();
  for (std::uint32_t i = 0; i < reg_count; ++i) {
    const std::uint32_t block_len = in.u32();
    ByteReader block(in.take(block_len));
    const std::uint64_t item = block.u64();
    const std::uint64_t created = block.u64();
    const std::uint64_t first_clock = block.u64();
    const std::uint64_t counter_clock = block.u64();
    const std::uint32_t bucket_count = block.u32();
    std::vector<CounterHistogram::Bucket> buckets(bucket_count);
    for (auto& b : buckets) {
      b.newest = block.u64();
      b.size = block.u64();
    }
    if (!block.done()) throw DecodeError("trailing bytes in registry block");
    if (created > clock || counter_clock != clock)
      throw DecodeError("registry clocks inconsistent");
    try {
      Tracked t{CounterHistogram::restore(params.window, 0.5, first_clock, counter_clock,
                                          std::move(buckets)),
                created};
      if (!st.registry_.emplace(item, std::move(t)).second)
        throw DecodeError("duplicate registry item");
    } catch (const std::invalid_argument&) {
      throw DecodeError("bad counter state");
    }
  }
  if (!in.done()) throw DecodeError("trailing bytes");
  return st;
}

}  // namespace sws
