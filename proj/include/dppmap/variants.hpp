#pragma once

#include <cstddef>
#include <cstdint>

#include "dppmap/kernel.hpp"
#include "dppmap/random.hpp"
#include "dppmap/report.hpp"

namespace dppmap {

struct VariantConfig {
  std::size_t k = 1;
  // StochasticGreedy sampling accuracy, in (0, 1).
  double epsilon = 0.5;
  Deadline deadline;
};

// ceil((n / k) * ln(1 / epsilon)).
std::size_t stochastic_sample_size(std::size_t n, std::size_t k, double epsilon);

// Size preconditions; throw ContractViolation. RandomGreedy needs n >= 2k,
// StochasticGreedy n >= 3k, InterlaceGreedy n >= 4k.
void check_random_preconditions(std::size_t n, std::size_t k);
void check_stochastic_preconditions(std::size_t n, std::size_t k, double epsilon);
void check_interlace_preconditions(std::size_t n, std::size_t k);

// Randomness protocol shared with the naive versions in reference.hpp:
//   RandomGreedy      one stream.uniform_int(1, k) per step
//   StochasticGreedy  one stream.sample_without_replacement(sorted complement, s)
//                     per step (no draws when s >= |complement|)
// Given equal seeds, the naive and lazy+fast versions select the same items.

// Each step draws a rank l and adds the item with the l-th largest gain if
// that gain is positive; otherwise the step adds nothing.
RunReport random_greedy_lf(const KernelOracle& oracle, const VariantConfig& cfg,
                           DecisionStream& stream);

// Each step samples s items of the complement and adds the best of them if
// its gain is positive. Pivots and factor rows persist across steps; only the
// queue is rebuilt over each sample.
RunReport stochastic_greedy_lf(const KernelOracle& oracle, const VariantConfig& cfg,
                               DecisionStream& stream);

// Two interlaced greedy runs (A/B, then C/D seeded with A's first item);
// returns the best prefix of the four chains. Deterministic.
RunReport interlace_greedy_lf(const KernelOracle& oracle, const VariantConfig& cfg);

}  // namespace dppmap
