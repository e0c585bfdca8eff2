#include "sws/f2.hpp"

#include <algorithm>
#include <stdexcept>

namespace sws {

RademacherFamily::RademacherFamily(HashSeed master, std::uint64_t universe)
    : master_(master), universe_(universe) {
  h_.reserve(kAmsCounters);
  for (unsigned i = 0; i < kAmsCounters; ++i)
    h_.push_back(make_rademacher(derive_seed(master, kSeedAmsSign, i), universe, 6));
}

std::array<std::int8_t, kAmsCounters> RademacherFamily::signs(std::uint64_t item) const {
  std::array<std::int8_t, kAmsCounters> out;
  for (unsigned i = 0; i < kAmsCounters; ++i)
    out[i] = static_cast<std::int8_t>(h_[i].sign(item));
  return out;
}

int RademacherFamily::sign(unsigned counter, std::uint64_t item) const {
  return h_.at(counter).sign(item);
}

AmsSketch::AmsSketch(std::shared_ptr<const RademacherFamily> family)
    : family_(std::move(family)) {
  if (!family_) throw std::invalid_argument("AmsSketch: null sign family");
}

void AmsSketch::update(std::uint64_t item) { apply_signs(family_->signs(item)); }

void AmsSketch::apply_signs(const std::array<std::int8_t, kAmsCounters>& signs) {
  for (unsigned i = 0; i < kAmsCounters; ++i) counters_[i] += signs[i];
}

void AmsSketch::merge(const AmsSketch& other) {
  if (!(*family_ == *other.family_))
    throw std::invalid_argument("AmsSketch: merge requires the same sign family");
  for (unsigned i = 0; i < kAmsCounters; ++i) counters_[i] += other.counters_[i];
}

double AmsSketch::estimate() const {
  std::array<double, kAmsGroups> means;
  for (unsigned g = 0; g < kAmsGroups; ++g) {
    double sum = 0.0;
    for (unsigned j = 0; j < kAmsGroupWidth; ++j) {
      const double c = static_cast<double>(counters_[g * kAmsGroupWidth + j]);
      sum += c * c;
    }
    means[g] = sum / kAmsGroupWidth;
  }
  std::sort(means.begin(), means.end());
  return 0.5 * (means[kAmsGroups / 2 - 1] + means[kAmsGroups / 2]);
}

}  // namespace sws
