#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dppmap {

// Every random decision in the library comes from one of these. The engine
// is std::mt19937_64 (its output sequence is fixed by the standard), and all
// transforms on top of it are written out here rather than taken from
// <random> distributions, whose algorithms vary between standard libraries:
//   uniform_index  rejection sampling on the raw 64-bit output
//   uniform01      top 53 bits scaled by 2^-53, in [0, 1)
//   normal         Box-Muller, both outputs used in order
// Two streams built from the same seed produce the same draws, which is what
// lets a naive algorithm and its accelerated twin be compared step by step.
class DecisionStream {
 public:
  explicit DecisionStream(std::uint64_t seed, bool keep_log = false);

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, bound). bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);
  // Uniform on [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  double uniform01();
  double normal();

  // s elements drawn without replacement from `pool` by a partial
  // Fisher-Yates shuffle of a copy of it. Returns the whole pool (no draws)
  // when s >= pool.size().
  std::vector<std::size_t> sample_without_replacement(std::span<const std::size_t> pool,
                                                      std::size_t s);

  // Raw engine outputs consumed so far, when logging is on.
  const std::vector<std::uint64_t>& log() const { return log_; }
  std::uint64_t draws() const { return draws_; }

 private:
  std::uint64_t next();

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool keep_log_;
  std::vector<std::uint64_t> log_;
  std::uint64_t draws_ = 0;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace dppmap
