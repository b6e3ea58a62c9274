#pragma once

#include <cstddef>

#include "dppmap/kernel.hpp"
#include "dppmap/report.hpp"

namespace dppmap {

struct GreedyConfig {
  std::size_t k = 1;
  // Stop as soon as the best available gain is <= 0 (pivot <= 1). With this
  // off, selection continues through negative gains until k items or a
  // singular pivot.
  bool stop_on_nonpositive = true;
  Deadline deadline;
};

// All four return the same greedy solution: at each step the item with the
// largest marginal gain, ties to the smaller index.

// Every gain recomputed from scratch with the reference log-determinant.
RunReport naive_greedy(const KernelOracle& oracle, const GreedyConfig& cfg);

// Stale gains kept as upper bounds in a LazyMaxQueue; recomputed with the
// reference log-determinant only when they reach the top.
RunReport lazy_greedy(const KernelOracle& oracle, const GreedyConfig& cfg);

// Incremental Cholesky: one new factor column over the whole complement per
// step, the final step's column skipped.
RunReport fast_greedy(const KernelOracle& oracle, const GreedyConfig& cfg);

// Incremental Cholesky with lazy row updates: only rows that reach the top of
// the queue are brought up to date.
RunReport lazy_fast_greedy(const KernelOracle& oracle, const GreedyConfig& cfg);

// Closed-form U of fast_greedy after `steps` executed steps (selections plus
// the terminating step, if the run stopped early): (steps-1)(n - steps/2).
std::uint64_t fast_greedy_offdiag(std::size_t n, std::size_t steps);

}  // namespace dppmap
