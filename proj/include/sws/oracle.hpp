// Brute-force ground truth over the full window buffer: exact distinct
// counts, frequencies, moments, and heavy-hitter threshold sets.
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

namespace sws {

class WindowBuffer {
 public:
  explicit WindowBuffer(std::uint64_t window);

  void push(std::uint64_t item);

  std::uint64_t clock() const { return clock_; }
  std::uint64_t window() const { return window_; }
  const std::deque<std::uint64_t>& contents() const { return buf_; }

  // Distinct count two independent ways (sequence scan vs tabulation); the
  // test suite asserts they agree.
  std::uint64_t distinct_scan() const;
  std::uint64_t distinct_tabulate() const;

  std::map<std::uint64_t, std::uint64_t> frequencies() const;
  double fp(double p) const;       // sum of f_i^p
  double lp_norm(double p) const;  // fp^(1/p)

  // {i : f_i >= threshold} for threshold = eps * Fp^(1/p).
  std::vector<std::uint64_t> heavy_set(double eps, double p) const;
  // {i : f_i <= (eps/12) * Fp^(1/p)}, items a query must not output.
  std::vector<std::uint64_t> forbidden_set(double eps, double p) const;

 private:
  std::uint64_t window_;
  std::uint64_t clock_ = 0;
  std::deque<std::uint64_t> buf_;
};

}  // namespace sws
