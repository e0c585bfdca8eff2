// Ingest throughput: heavy-hitter state with the parallel fan-out capped to
// one thread vs the full worker pool, against the brute-force oracle; verifies
// both sketch runs produce identical query output.
#include <chrono>
#include <iomanip>
#include <iostream>
#include <vector>

#if defined(SWS_HAVE_OPENMP)
#include <omp.h>
#endif

#include "sws/gen.hpp"
#include "sws/heavy.hpp"
#include "sws/oracle.hpp"
#include "sws/threads.hpp"

namespace {

double now_secs() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void set_threads(int n) {
#if defined(SWS_HAVE_OPENMP)
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

void report(const char* name, double secs, std::size_t arrivals) {
  std::cout << std::left << std::setw(22) << name << std::right << std::fixed
            << std::setprecision(3) << std::setw(9) << secs << " s  " << std::setw(12)
            << std::setprecision(0) << static_cast<double>(arrivals) / secs << " arrivals/s\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t window = 4096;
  std::uint64_t arrivals = 1 << 15;
  std::uint64_t seed = 1;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    std::uint64_t v = std::stoull(argv[i + 1]);
    if (flag == "--window") window = v;
    else if (flag == "--arrivals") arrivals = v;
    else if (flag == "--seed") seed = v;
    else {
      std::cerr << "usage: sws_bench [--window N] [--arrivals K] [--seed S]\n";
      return 2;
    }
  }

  auto stream = sws::gen_zipf(arrivals, 1 << 16, 1.1, seed);
  sws::HHParams params{window, 0.5, 2.0, stream.universe};

  set_threads(1);
  sws::HeavyHitterState serial(params, sws::HashSeed{seed});
  double t0 = now_secs();
  for (std::uint64_t x : stream.arrivals) serial.insert(x);
  double serial_secs = now_secs() - t0;
  auto out_serial = serial.query_l2(0.5);

  set_threads(sws::worker_threads());
  sws::HeavyHitterState parallel(params, sws::HashSeed{seed});
  t0 = now_secs();
  for (std::uint64_t x : stream.arrivals) parallel.insert(x);
  double parallel_secs = now_secs() - t0;
  auto out_parallel = parallel.query_l2(0.5);

  sws::WindowBuffer oracle(window);
  t0 = now_secs();
  for (std::uint64_t x : stream.arrivals) oracle.push(x);
  auto exact = oracle.heavy_set(0.5, 2.0);
  double oracle_secs = now_secs() - t0;

  std::cout << "window " << window << ", arrivals " << arrivals << ", workers "
            << sws::worker_threads() << "\n";
  report("sketch (1 thread)", serial_secs, stream.arrivals.size());
  report("sketch (pool)", parallel_secs, stream.arrivals.size());
  report("exact oracle", oracle_secs, stream.arrivals.size());
  std::cout << "oracle heavy set size " << exact.size() << "\n";

  if (out_serial != out_parallel) {
    std::cerr << "error: serial and pooled runs disagree\n";
    return 1;
  }
  std::cout << "serial and pooled query output identical: yes\n";
  return 0;
}
