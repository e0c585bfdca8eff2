#include "sws/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace sws {

WindowBuffer::WindowBuffer(std::uint64_t window) : window_(window) {
  if (window == 0) throw std::invalid_argument("WindowBuffer: window must be positive");
}

void WindowBuffer::push(std::uint64_t item) {
  ++clock_;
  buf_.push_back(item);
  if (buf_.size() > window_) buf_.pop_front();
}

std::uint64_t WindowBuffer::distinct_scan() const {
  std::set<std::uint64_t> seen(buf_.begin(), buf_.end());
  return seen.size();
}

std::uint64_t WindowBuffer::distinct_tabulate() const {
  return frequencies().size();
}

std::map<std::uint64_t, std::uint64_t> WindowBuffer::frequencies() const {
  std::map<std::uint64_t, std::uint64_t> freq;
  for (std::uint64_t x : buf_) ++freq[x];
  return freq;
}

double WindowBuffer::fp(double p) const {
  if (!(p > 0.0)) throw std::invalid_argument("WindowBuffer: p must be positive");
  double sum = 0.0;
  for (const auto& [item, f] : frequencies()) sum += std::pow(static_cast<double>(f), p);
  return sum;
}

double WindowBuffer::lp_norm(double p) const {
  return std::pow(fp(p), 1.0 / p);
}

std::vector<std::uint64_t> WindowBuffer::heavy_set(double eps, double p) const {
  const double threshold = eps * lp_norm(p);
  std::vector<std::uint64_t> out;
  for (const auto& [item, f] : frequencies())
    if (static_cast<double>(f) >= threshold) out.push_back(item);
  return out;
}

std::vector<std::uint64_t> WindowBuffer::forbidden_set(double eps, double p) const {
  const double threshold = (eps / 12.0) * lp_norm(p);
  std::vector<std::uint64_t> out;
  for (const auto& [item, f] : frequencies())
    if (static_cast<double>(f) <= threshold) out.push_back(item);
  return out;
}

}  // namespace sws
