// Command-stream driver: parses arrival/query lines, feeds the configured
// sketch, and writes one JSON record per query.
#include "sws/stream_run.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "sws/counter.hpp"
#include "sws/distinct.hpp"
#include "sws/f2.hpp"
#include "sws/hashing.hpp"
#include "sws/heavy.hpp"
#include "sws/histogram.hpp"
#include "sws/oracle.hpp"

namespace sws {
namespace {

using json = nlohmann::ordered_json;

struct TaskRunner {
  virtual ~TaskRunner() = default;
  virtual void arrive(std::uint64_t item) = 0;
  virtual void fill(json& rec) = 0;
};

struct DistinctRunner final : TaskRunner {
  DistinctSketch sk;
  explicit DistinctRunner(const RunConfig& cfg)
      : sk(cfg.window, cfg.epsilon, cfg.universe, HashSeed{cfg.seed}) {}
  void arrive(std::uint64_t item) override { sk.insert(item); }
  void fill(json& rec) override {
    rec["estimate"] = sk.query();
    rec["instance_count"] = sk.instance_starts().size();
    rec["bytes_used"] = sk.memory_bytes();
  }
};

struct HeavyRunner final : TaskRunner {
  HeavyHitterState hh;
  double eps;
  double p;
  explicit HeavyRunner(const RunConfig& cfg)
      : hh(HHParams{cfg.window, cfg.epsilon, cfg.p, cfg.universe}, HashSeed{cfg.seed}),
        eps(cfg.epsilon),
        p(cfg.p) {}
  void arrive(std::uint64_t item) override { hh.insert(item); }
  void fill(json& rec) override {
    json items = json::array();
    for (const auto& [item, est] : hh.query_lp(eps, p)) {
      json e;
      e["item"] = item;
      e["estimate"] = est;
      items.push_back(std::move(e));
    }
    rec["items"] = std::move(items);
    rec["instance_count"] = hh.instances().size();
    rec["bytes_used"] = hh.memory_bytes();
  }
};

struct F2Runner final : TaskRunner {
  std::shared_ptr<const RademacherFamily> family;
  SmoothHistogram<F2Suffix> hist;
  explicit F2Runner(const RunConfig& cfg)
      : family(std::make_shared<RademacherFamily>(HashSeed{cfg.seed}, cfg.universe)),
        hist(cfg.window, cfg.epsilon, [f = family] { return F2Suffix(f); }) {}
  void arrive(std::uint64_t item) override {
    hist.begin_arrival();
    auto signs = family->signs(item);
    for (auto& e : hist.entries_mut()) e.sketch.apply_signs(signs);
    hist.finish_arrival();
  }
  void fill(json& rec) override {
    double l2 = hist.query();
    rec["estimate"] = l2 * l2;  // second moment, not its square root
    rec["instance_count"] = hist.instance_count();
    rec["bytes_used"] =
        hist.instance_count() * (sizeof(std::int64_t) * kAmsCounters + 3 * sizeof(std::uint64_t));
  }
};

struct CountRunner final : TaskRunner {
  CounterHistogram counter;
  std::uint64_t clock = 0;
  explicit CountRunner(const RunConfig& cfg) : counter(cfg.window, cfg.epsilon) {}
  void arrive(std::uint64_t) override { counter.observe(true, ++clock); }
  void fill(json& rec) override {
    rec["estimate"] = counter.estimate();
    rec["instance_count"] = counter.buckets().size();
    rec["bytes_used"] = counter.buckets().size() * 2 * sizeof(std::uint64_t) +
                        4 * sizeof(std::uint64_t);
  }
};

std::unique_ptr<TaskRunner> make_runner(const RunConfig& cfg) {
  if (cfg.task == "distinct") return std::make_unique<DistinctRunner>(cfg);
  if (cfg.task == "hh") return std::make_unique<HeavyRunner>(cfg);
  if (cfg.task == "f2") return std::make_unique<F2Runner>(cfg);
  if (cfg.task == "count") return std::make_unique<CountRunner>(cfg);
  throw std::invalid_argument("run: task must be distinct, hh, f2, or count");
}

void validate(const RunConfig& cfg) {
  if (cfg.window == 0) throw std::invalid_argument("run: window must be positive");
  double eps_hi = cfg.task == "count" ? std::nextafter(1.0, 2.0) : 1.0;
  if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < eps_hi))
    throw std::invalid_argument("run: epsilon out of range");
  if (cfg.task == "hh" && (!(cfg.p > 0.0) || !(cfg.p <= 2.0)))
    throw std::invalid_argument("run: p must lie in (0, 2]");
  if (cfg.universe == 0 || cfg.universe > kMaxUniverse)
    throw std::invalid_argument("run: universe out of range");
}

[[noreturn]] void fail_line(std::uint64_t lineno, const std::string& why) {
  std::ostringstream os;
  os << "line " << lineno << ": " << why;
  throw ParseError(os.str());
}

}  // namespace

std::uint64_t run_stream(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  validate(cfg);
  auto runner = make_runner(cfg);
  WindowBuffer oracle(cfg.window);

  std::uint64_t lineno = 0;
  std::uint64_t position = 0;
  std::uint64_t records = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line == "Q") {
      json rec;
      rec["position"] = position;
      rec["task"] = cfg.task;
      runner->fill(rec);
      if (cfg.oracle) {
        if (cfg.task == "distinct") {
          rec["exact"] = oracle.distinct_scan();
        } else if (cfg.task == "f2") {
          rec["exact"] = oracle.fp(2.0);
        } else if (cfg.task == "count") {
          rec["exact"] = std::min(position, cfg.window);
        } else {
          json heavy = json::array();
          for (std::uint64_t item : oracle.heavy_set(cfg.epsilon, cfg.p)) heavy.push_back(item);
          rec["exact_heavy"] = std::move(heavy);
          rec["exact_norm"] = oracle.lp_norm(cfg.p);
        }
      }
      out << rec.dump() << '\n';
      ++records;
      continue;
    }
    if (line.size() >= 2 && line[0] == 'A' && line[1] == ' ') {
      const char* first = line.data() + 2;
      const char* last = line.data() + line.size();
      std::uint64_t item = 0;
      auto [ptr, ec] = std::from_chars(first, last, item);
      if (ec != std::errc{} || ptr != last) fail_line(lineno, "bad arrival: " + line);
      if (item >= cfg.universe) fail_line(lineno, "item outside universe: " + line);
      ++position;
      runner->arrive(item);
      if (cfg.oracle) oracle.push(item);
      continue;
    }
    fail_line(lineno, "unrecognized command: " + line);
  }
  return records;
}

}  // namespace sws
