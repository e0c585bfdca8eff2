// Acceptance criteria: statistical trials against the exact oracle plus
// exhaustive deterministic checks, with thresholds pinned in code.
#include "sws/accept.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sws/columns.hpp"
#include "sws/counter.hpp"
#include "sws/distinct.hpp"
#include "sws/f2.hpp"
#include "sws/gen.hpp"
#include "sws/hashing.hpp"
#include "sws/heavy.hpp"
#include "sws/histogram.hpp"
#include "sws/oracle.hpp"
#include "sws/threads.hpp"

#if defined(SWS_HAVE_OPENMP)
#define SWS_PRAGMA(x) _Pragma(#x)
#else
#define SWS_PRAGMA(x)
#endif

namespace sws {
namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// Independent seed per (criterion, trial); the stride keeps criteria apart.
std::uint64_t tseed(std::uint64_t master, int crit, std::uint64_t t) {
  return derive_seed(HashSeed{master}, kSeedTrial, std::uint64_t(crit) * 1000003 + t).value;
}

std::string fail_note(const std::vector<std::string>& errs) {
  for (const auto& e : errs)
    if (!e.empty()) return " error=\"" + e + "\"";
  return "";
}

// 1. Planted windowed distinct count, statistical accuracy at the final query.
CriterionResult crit_distinct_accuracy(std::uint64_t master) {
  CriterionResult r{1, "distinct-window-accuracy", false, "", 0.0};
  const std::uint64_t n = 4096, m = 65536;
  const double eps = 0.25;
  const int trials = 30;
  Timer timer;
  std::vector<char> hit(trials, 0);
  std::vector<std::string> errs(trials);
  SWS_PRAGMA(omp parallel for schedule(dynamic))
  for (int t = 0; t < trials; ++t) {
    try {
      std::mt19937_64 rng(tseed(master, 1, t));
      DistinctSketch sk(n, eps, m, HashSeed{tseed(master, 101, t)}, 7);
      // 2n noise arrivals from the top half of the universe, then n arrivals
      // covering 2^10 planted ids from the bottom half four times each; the
      // final window is exactly the planted segment.
      std::uniform_int_distribution<std::uint64_t> noise(m / 2, m - 1);
      for (std::uint64_t i = 0; i < 2 * n; ++i) sk.insert(noise(rng));
      std::vector<std::uint64_t> ids(m / 2);
      std::iota(ids.begin(), ids.end(), 0);
      std::shuffle(ids.begin(), ids.end(), rng);
      ids.resize(1024);
      std::vector<std::uint64_t> plant;
      plant.reserve(n);
      for (std::uint64_t id : ids)
        for (int c = 0; c < 4; ++c) plant.push_back(id);
      std::shuffle(plant.begin(), plant.end(), rng);
      WindowBuffer oracle(n);
      for (std::uint64_t x : plant) {
        sk.insert(x);
        oracle.push(x);
      }
      double est = sk.query();
      auto exact = static_cast<double>(oracle.distinct_scan());
      hit[t] = std::abs(est - exact) <= eps * exact ? 1 : 0;
    } catch (const std::exception& e) {
      errs[t] = e.what();
    }
  }
  int hits = std::accumulate(hit.begin(), hit.end(), 0);
  r.seconds = timer.secs();
  r.pass = hits >= 20 && r.seconds < 60.0;
  std::ostringstream os;
  os << "within-eps " << hits << "/" << trials << " (need 20), budget 60s" << fail_note(errs);
  r.detail = os.str();
  return r;
}

// 2. Small-set fast path is exact while it applies.
CriterionResult crit_exact_small_path(std::uint64_t master) {
  CriterionResult r{2, "distinct-exact-small-path", false, "", 0.0};
  const int trials = 1000;
  Timer timer;
  std::vector<char> bad(trials, 0);
  std::vector<std::string> errs(trials);
  SWS_PRAGMA(omp parallel for schedule(dynamic))
  for (int t = 0; t < trials; ++t) {
    try {
      std::mt19937_64 rng(tseed(master, 2, t));
      const std::uint64_t window = 1 + rng() % 32;
      const std::uint64_t len = 1 + rng() % 64;
      // Pool of at most ceil(4/eps^2) = 16 distinct ids: the small set can
      // never saturate, so every query must take the exact path.
      std::vector<std::uint64_t> pool(256);
      std::iota(pool.begin(), pool.end(), 0);
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(1 + rng() % 16);
      DistinctSketch sk(window, 0.5, 256, HashSeed{tseed(master, 102, t)});
      WindowBuffer buf(window);
      for (std::uint64_t i = 0; i < len; ++i) {
        std::uint64_t x = pool[rng() % pool.size()];
        sk.insert(x);
        buf.push(x);
        if (sk.small_set_saturated() || sk.query() != static_cast<double>(buf.distinct_scan())) {
          bad[t] = 1;
          break;
        }
      }
    } catch (const std::exception& e) {
      errs[t] = e.what();
      bad[t] = 1;
    }
  }
  int mismatches = std::accumulate(bad.begin(), bad.end(), 0);
  r.seconds = timer.secs();
  r.pass = mismatches == 0;
  std::ostringstream os;
  os << "streams " << trials << ", mismatches " << mismatches << " (need 0)" << fail_note(errs);
  r.detail = os.str();
  return r;
}

// 3. Merging segment sketches reproduces the whole-stream sketch bit-exactly.
CriterionResult crit_ams_merge(std::uint64_t master) {
  CriterionResult r{3, "ams-merge-exact", false, "", 0.0};
  const int trials = 100;
  Timer timer;
  std::vector<char> bad(trials, 0);
  std::vector<std::string> errs(trials);
  SWS_PRAGMA(omp parallel for schedule(dynamic))
  for (int t = 0; t < trials; ++t) {
    try {
      std::mt19937_64 rng(tseed(master, 3, t));
      const std::uint64_t universe = 1024;
      const std::size_t len = 512;
      auto family =
          std::make_shared<RademacherFamily>(HashSeed{tseed(master, 103, t)}, universe);
      std::vector<std::uint64_t> xs(len);
      for (auto& x : xs) x = rng() % universe;
      AmsSketch whole(family);
      for (std::uint64_t x : xs) whole.update(x);
      for (int s = 0; s < 10; ++s) {
        std::size_t cut = rng() % (len + 1);
        AmsSketch a(family), b(family);
        for (std::size_t i = 0; i < cut; ++i) a.update(xs[i]);
        for (std::size_t i = cut; i < len; ++i) b.update(xs[i]);
        a.merge(b);
        if (a.counters() != whole.counters()) {
          bad[t] = 1;
          break;
        }
      }
    } catch (const std::exception& e) {
      errs[t] = e.what();
      bad[t] = 1;
    }
  }
  int mismatches = std::accumulate(bad.begin(), bad.end(), 0);
  r.seconds = timer.secs();
  r.pass = mismatches == 0;
  std::ostringstream os;
  os << "streams " << trials << " x 10 splits, mismatches " << mismatches << " (need 0)"
     << fail_note(errs);
  r.detail = os.str();
  return r;
}

// 4. Running F2 estimate within factor 2 at every prefix simultaneously.
CriterionResult crit_f2_tracking(std::uint64_t master) {
  CriterionResult r{4, "f2-prefix-factor2", false, "", 0.0};
  const int trials = 30;
  const std::uint64_t len = 4096, universe = 256;
  Timer timer;
  std::vector<char> hit(trials, 0);
  std::vector<std::string> errs(trials);
  SWS_PRAGMA(omp parallel for schedule(dynamic))
  for (int t = 0; t < trials; ++t) {
    try {
      std::mt19937_64 rng(tseed(master, 4, t));
      auto family =
          std::make_shared<RademacherFamily>(HashSeed{tseed(master, 104, t)}, universe);
      SmoothHistogram<F2Suffix> hist(len, 0.5, [f = family] { return F2Suffix(f); });
      std::vector<std::uint64_t> freq(universe, 0);
      std::uint64_t exact_f2 = 0;
      bool ok = true;
      for (std::uint64_t i = 0; i < len; ++i) {
        std::uint64_t x = rng() % universe;
        hist.begin_arrival();
        auto signs = family->signs(x);
        for (auto& e : hist.entries_mut()) e.sketch.apply_signs(signs);
        hist.finish_arrival();
        exact_f2 += 2 * freq[x] + 1;
        ++freq[x];
        double l2 = hist.query();
        double est = l2 * l2;
        auto exact = static_cast<double>(exact_f2);
        if (est > 2.0 * exact || est < 0.5 * exact) {
          ok = false;
          break;
        }
      }
      hit[t] = ok ? 1 : 0;
    } catch (const std::exception& e) {
      errs[t] = e.what();
    }
  }
  int hits = std::accumulate(hit.begin(), hit.end(), 0);
  r.seconds = timer.secs();
  r.pass = hits >= 20 && r.seconds < 60.0;
  std::ostringstream os;
  os << "factor-2 at all prefixes " << hits << "/" << trials << " (need 20), budget 60s"
     << fail_note(errs);
  r.detail = os.str();
  return r;
}

// 5. Planted heavy hitter recalled, no forbidden-tail item output; p=2 and p=1.
CriterionResult crit_hh_planted(std::uint64_t master) {
  CriterionResult r{5, "hh-planted-recall-precision", false, "", 0.0};
  const int trials = 30;
  Timer timer;
  auto run_sub = [](const std::vector<std::uint64_t>& arrivals, double eps, double p,
                    std::uint64_t sketch_seed) {
    HeavyHitterState hh(HHParams{1024, eps, p, 65536}, HashSeed{sketch_seed});
    WindowBuffer buf(1024);
    for (std::uint64_t x : arrivals) {
      hh.insert(x);
      buf.push(x);
    }
    std::set<std::uint64_t> out;
    for (const auto& [item, est] : hh.query_lp(eps, p)) out.insert(item);
    for (std::uint64_t h : buf.heavy_set(eps, p))
      if (out.count(h) == 0) return false;
    auto forb = buf.forbidden_set(eps, p);
    std::set<std::uint64_t> fs(forb.begin(), forb.end());
    for (std::uint64_t item : out)
      if (fs.count(item) != 0) return false;
    return true;
  };

  std::vector<char> hit2(trials, 0), hit1(trials, 0);
  std::vector<std::string> errs(trials);
  SWS_PRAGMA(omp parallel for schedule(dynamic))
  for (int t = 0; t < trials; ++t) {
    try {
      auto stream = gen_planted(1, 256, 768, tseed(master, 5, t));
      hit2[t] = run_sub(stream.arrivals, 0.9, 2.0, tseed(master, 105, t)) ? 1 : 0;
    } catch (const std::exception& e) {
      errs[t] = e.what();
    }
  }
  // The p=1 tables are large (theta = sqrt(0.2)/16), so cap the trial pool.
  const int pool = std::min(worker_threads(), 4);
  (void)pool;
  SWS_PRAGMA(omp parallel for schedule(dynamic) num_threads(pool))
  for (int t = 0; t < trials; ++t) {
    try {
      auto stream = gen_planted(1, 256, 768, tseed(master, 5, t));
      hit1[t] = run_sub(stream.arrivals, 0.2, 1.0, tseed(master, 106, t)) ? 1 : 0;
    } catch (const std::exception& e) {
      errs[t] = e.what();
    }
  }
  int hits2 = std::accumulate(hit2.begin(), hit2.end(), 0);
  int hits1 = std::accumulate(hit1.begin(), hit1.end(), 0);
  r.seconds = timer.secs();
  r.pass = hits2 >= 27 && hits1 >= 27 && r.seconds < 120.0;
  std::ostringstream os;
  os << "p=2 " << hits2 << "/" << trials << ", p=1 " << hits1 << "/" << trials
     << " (need 27 each), budget 120s" << fail_note(errs);
  r.detail = os.str();
  return r;
}

// 6. Histogram keeps at most 16*(1/beta)*log2(n)+2 instances for f = count.
CriterionResult crit_instance_bound(std::uint64_t) {
  CriterionResult r{6, "histogram-instance-bound", false, "", 0.0};
  Timer timer;
  const std::uint64_t n = 4096;
  bool ok = true;
  std::ostringstream os;
  for (double beta : {0.5, 0.25, 0.1}) {
    SmoothHistogram<CountingSuffix> hist(n, beta, [] { return CountingSuffix{}; });
    const double bound = 16.0 * (1.0 / beta) * std::log2(static_cast<double>(n)) + 2.0;
    std::size_t peak = 0;
    for (int i = 0; i < 10000; ++i) {
      hist.insert(0);
      peak = std::max(peak, hist.instance_count());
    }
    if (static_cast<double>(peak) > bound) ok = false;
    os << "beta " << beta << ": peak " << peak << " <= " << bound << "; ";
  }
  r.seconds = timer.secs();
  r.pass = ok;
  r.detail = os.str() + (ok ? "all under bound" : "bound exceeded");
  return r;
}

// 7. Exhaustive half-width guarantee for the windowed counter.
CriterionResult crit_counter_exhaustive(std::uint64_t) {
  CriterionResult r{7, "counter-exhaustive-halfwidth", false, "", 0.0};
  Timer timer;
  std::uint64_t patterns = 0, violations = 0;
  std::string first;
  for (unsigned len = 1; len <= 16; ++len) {
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
      ++patterns;
      CounterHistogram c(8, 0.5);
      for (unsigned step = 1; step <= len; ++step) {
        bool arrived = ((mask >> (step - 1)) & 1u) != 0;
        c.observe(arrived, step);
        unsigned lo = step >= 8 ? step - 8 : 0;
        std::uint32_t in_window = (mask & ((step == 32 ? ~0u : (1u << step) - 1))) >> lo;
        auto exact = static_cast<double>(std::popcount(in_window));
        double est = c.estimate();
        bool bad = std::abs(est - exact) > exact / 2.0 + 1e-12 ||
                   c.buckets().size() > c.bucket_bound();
        if (bad) {
          ++violations;
          if (first.empty()) {
            std::ostringstream f;
            f << " first: len " << len << " mask " << mask << " step " << step << " est " << est
              << " exact " << exact;
            first = f.str();
          }
          break;
        }
      }
    }
  }
  r.seconds = timer.secs();
  r.pass = violations == 0;
  std::ostringstream os;
  os << "patterns " << patterns << ", violations " << violations << " (need 0)" << first;
  r.detail = os.str();
  return r;
}

// 8. phi_inv inverts phi to 1e-9 relative accuracy.
CriterionResult crit_phi_roundtrip(std::uint64_t) {
  CriterionResult r{8, "phi-roundtrip", false, "", 0.0};
  Timer timer;
  double worst = 0.0;
  for (std::uint64_t bins : {std::uint64_t{16}, std::uint64_t{1600}}) {
    for (std::uint64_t t = 0; t <= 3 * bins; ++t) {
      auto td = static_cast<double>(t);
      double back = phi_inv(bins, phi(td, bins));
      double rel = std::abs(back - td) / std::max(td, 1.0);
      worst = std::max(worst, rel);
    }
  }
  r.seconds = timer.secs();
  r.pass = worst <= 1e-9;
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << "worst relative error " << worst
     << " (need <= 1e-09)";
  r.detail = os.str();
  return r;
}

// 9. Column codec is a bijection onto [0, C(w+L, L)).
CriterionResult crit_codec_bijection(std::uint64_t) {
  CriterionResult r{9, "column-codec-bijection", false, "", 0.0};
  Timer timer;
  bool ok = true;
  std::ostringstream os;
  for (auto [rows, max_id] : {std::pair<unsigned, std::uint32_t>{4, 3}, {6, 5}}) {
    const std::uint64_t total = column_count(rows, max_id).to_u64();
    std::vector<char> seen(total, 0);
    std::uint64_t count = 0;
    std::vector<std::uint32_t> col(rows, 0);
    // Enumerate non-increasing columns in odometer order.
    auto advance = [&]() {
      for (unsigned i = rows; i-- > 0;) {
        std::uint32_t cap = i == 0 ? max_id : col[i - 1];
        if (col[i] < cap) {
          ++col[i];
          for (unsigned j = i + 1; j < rows; ++j) col[j] = 0;
          return true;
        }
      }
      return false;
    };
    do {
      ++count;
      std::uint64_t rank = encode_column(col, max_id).to_u64();
      if (rank >= total || seen[rank] != 0 ||
          decode_column(BigUInt(rank), rows, max_id) != col) {
        ok = false;
        break;
      }
      seen[rank] = 1;
    } while (advance());
    bool covered = std::count(seen.begin(), seen.end(), char(1)) == std::ptrdiff_t(total);
    if (count != total || !covered) ok = false;
    os << "(" << rows << "," << max_id << "): " << count << " columns, range " << total << "; ";
  }
  r.seconds = timer.secs();
  r.pass = ok;
  r.detail = os.str() + (ok ? "bijective" : "collision or range gap");
  return r;
}

// 10. Lazily maintained table equals a from-scratch rebuild on surviving starts.
CriterionResult crit_table_rebuild(std::uint64_t master) {
  CriterionResult r{10, "table-rebuild-equivalence", false, "", 0.0};
  const int trials = 100;
  const std::uint64_t window = 256, universe = 1024, len = 1024;
  Timer timer;
  std::vector<char> bad(trials, 0);
  std::vector<std::string> errs(trials);
  SWS_PRAGMA(omp parallel for schedule(dynamic))
  for (int t = 0; t < trials; ++t) {
    try {
      std::mt19937_64 rng(tseed(master, 10, t));
      DistinctSketch sk(window, 0.25, universe, HashSeed{tseed(master, 110, t)});
      const std::uint64_t check_every = t < 2 ? 1 : 32;
      std::vector<std::uint64_t> items;
      items.reserve(len);
      for (std::uint64_t i = 1; i <= len; ++i) {
        items.push_back(rng() % universe);
        sk.insert(items.back());
        if (i % check_every != 0 && i != len) continue;
        TableState got = sk.table_state();
        const auto& starts = sk.instance_starts();
        TableState want;
        want.rows = sk.rows();
        want.buckets = sk.buckets();
        want.repetitions = sk.repetitions();
        want.window = sk.window();
        want.starts = starts;
        want.cells.assign(want.repetitions,
                          std::vector<std::vector<std::uint32_t>>(
                              want.rows, std::vector<std::uint32_t>(want.buckets, 0)));
        for (unsigned rep = 0; rep < want.repetitions; ++rep) {
          // Replay the whole stream: newest stamp wins, then translate the
          // stamp to its instance rank among the surviving starts.
          std::vector<std::vector<std::uint64_t>> raw(
              want.rows, std::vector<std::uint64_t>(want.buckets, 0));
          for (std::uint64_t k = 0; k < items.size(); ++k) {
            unsigned lvl = sk.level_of(rep, items[k]);
            std::uint64_t col = sk.bucket_of(rep, items[k]);
            for (unsigned row = 0; row <= lvl; ++row) raw[row][col] = k + 1;
          }
          for (unsigned row = 0; row < want.rows; ++row)
            for (std::uint64_t col = 0; col < want.buckets; ++col) {
              auto it = std::upper_bound(starts.begin(), starts.end(), raw[row][col]);
              want.cells[rep][row][col] = static_cast<std::uint32_t>(it - starts.begin());
            }
        }
        if (!(got == want)) {
          bad[t] = 1;
          break;
        }
      }
    } catch (const std::exception& e) {
      errs[t] = e.what();
      bad[t] = 1;
    }
  }
  int mismatches = std::accumulate(bad.begin(), bad.end(), 0);
  r.seconds = timer.secs();
  r.pass = mismatches == 0;
  std::ostringstream os;
  os << "seeds " << trials << ", mismatches " << mismatches << " (need 0)" << fail_note(errs);
  r.detail = os.str();
  return r;
}

// 11. Nested-piece blocks: expiry sweeps decode every planted secret.
CriterionResult crit_lb_blocks(std::uint64_t master) {
  CriterionResult r{11, "lb-blocks-decode", false, "", 0.0};
  const int trials = 15;
  Timer timer;
  std::vector<char> hit(trials, 0);
  std::vector<std::string> errs(trials);
  SWS_PRAGMA(omp parallel for schedule(dynamic))
  for (int t = 0; t < trials; ++t) {
    try {
      auto lb = gen_lb_blocks(4096, 0.25, 8, 12, 4096, tseed(master, 11, t));
      const auto& lay = lb.layout;
      DistinctSketch sk(lay.window, lay.epsilon, lb.stream.universe,
                        HashSeed{tseed(master, 111, t)});
      for (std::uint64_t x : lb.stream.arrivals) sk.insert(x);
      bool ok = true;
      for (unsigned b = 1; b <= lay.blocks && ok; ++b) {
        const std::uint64_t s = lay.piece_sizes[b - 1];
        const double thr = static_cast<double>(s) / (1.0 + lay.epsilon);
        unsigned decoded = 0;
        for (unsigned j = 1; j <= lay.pieces + 1; ++j) {
          // Slide the window start to the first arrival of piece j (or of
          // the next block for j = pieces+1) by appending filler.
          std::uint64_t off = j <= lay.pieces ? (j - 1) * s : lay.block_len;
          std::uint64_t target = lay.junk + (b - 1) * lay.block_len + off + 1;
          while (sk.window_start() < target) sk.insert(0);
          if (sk.query() < thr) {
            decoded = j - 1;
            break;
          }
        }
        ok = decoded == lay.secrets[b - 1];
      }
      hit[t] = ok ? 1 : 0;
    } catch (const std::exception& e) {
      errs[t] = e.what();
    }
  }
  int hits = std::accumulate(hit.begin(), hit.end(), 0);
  r.seconds = timer.secs();
  r.pass = hits >= 10 && r.seconds < 60.0;
  std::ostringstream os;
  os << "all blocks decoded " << hits << "/" << trials << " (need 10), budget 60s"
     << fail_note(errs);
  r.detail = os.str();
  return r;
}

CriterionResult run_one(int id, std::uint64_t master) {
  switch (id) {
    case 1: return crit_distinct_accuracy(master);
    case 2: return crit_exact_small_path(master);
    case 3: return crit_ams_merge(master);
    case 4: return crit_f2_tracking(master);
    case 5: return crit_hh_planted(master);
    case 6: return crit_instance_bound(master);
    case 7: return crit_counter_exhaustive(master);
    case 8: return crit_phi_roundtrip(master);
    case 9: return crit_codec_bijection(master);
    case 10: return crit_table_rebuild(master);
    case 11: return crit_lb_blocks(master);
    default: throw std::logic_error("unknown criterion id");
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& suite, std::uint64_t master_seed) {
  std::vector<int> ids;
  if (suite == "distinct") {
    ids = {1, 2, 8, 9, 10, 11};
  } else if (suite == "hh") {
    ids = {3, 4, 5};
  } else if (suite == "counter") {
    ids = {7};
  } else if (suite == "histogram") {
    ids = {6};
  } else if (suite == "all") {
    ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  } else {
    throw std::invalid_argument(
        "accept: suite must be distinct, hh, counter, histogram, or all");
  }
  std::vector<CriterionResult> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(run_one(id, master_seed));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << std::setfill('0') << r.id << ' '
     << r.name << "  " << r.detail << "  (" << std::fixed << std::setprecision(1) << r.seconds
     << "s)";
  return os.str();
}

}  // namespace sws
