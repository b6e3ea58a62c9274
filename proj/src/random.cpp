#include "dppmap/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dppmap {

DecisionStream::DecisionStream(std::uint64_t seed, bool keep_log)
    : seed_(seed), engine_(seed), keep_log_(keep_log) {}

std::uint64_t DecisionStream::next() {
  const std::uint64_t v = engine_();
  ++draws_;
  if (keep_log_) log_.push_back(v);
  return v;
}

std::uint64_t DecisionStream::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_index: bound must be positive");
  // Accept only the largest multiple of bound below 2^64.
  const std::uint64_t limit = -bound % bound;  // == 2^64 mod bound
  while (true) {
    const std::uint64_t v = next();
    if (v >= limit) return v % bound;
  }
}

std::uint64_t DecisionStream::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  return lo + uniform_index(hi - lo + 1);
}

double DecisionStream::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double DecisionStream::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

std::vector<std::size_t> DecisionStream::sample_without_replacement(
    std::span<const std::size_t> pool, std::size_t s) {
  std::vector<std::size_t> items(pool.begin(), pool.end());
  if (s >= items.size()) return items;
  for (std::size_t t = 0; t < s; ++t) {
    const std::size_t pick = t + uniform_index(items.size() - t);
    std::swap(items[t], items[pick]);
  }
  items.resize(s);
  return items;
}

}  // namespace dppmap
