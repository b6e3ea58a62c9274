#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dppmap/kernel.hpp"
#include "dppmap/report.hpp"

namespace dppmap {

enum class Algo {
  Naive,
  Lazy,
  Fast,
  LazyFast,
  Random,
  Stochastic,
  Interlace,
  DoubleNaive,
  DoubleFast,
};

// CLI names: naive, lazy, fast, lazyfast, random, stochastic, interlace,
// double-naive, double-fast. Throws std::invalid_argument otherwise.
Algo parse_algo(std::string_view name);
std::string_view algo_name(Algo algo);
const std::vector<std::string>& algo_names();
bool is_double(Algo algo);

struct RunOptions {
  std::size_t k = 1;
  std::uint64_t seed = 0;
  double epsilon = 0.5;
  Deadline deadline;
};

// Runs one algorithm. Double greedy ignores k and inverts the oracle's kernel
// (its scale/shift included); the product/inverse split lands in the
// report's timings.
RunReport run_algorithm(Algo algo, const KernelOracle& oracle, const RunOptions& opts);

// Relative gap between the report's final objective and the reference
// log-determinant of its selection.
double objective_check(const RunReport& report, const KernelOracle& oracle);

}  // namespace dppmap
