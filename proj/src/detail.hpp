#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dppmap/errors.hpp"
#include "dppmap/kernel.hpp"
#include "dppmap/report.hpp"

namespace dppmap::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Largest gain under (gain desc, index asc), skipping -inf.
template <class Range, class Fn>
std::optional<std::pair<std::size_t, double>> argmax_gain(const Range& candidates, Fn&& gain) {
  std::optional<std::pair<std::size_t, double>> best;
  for (std::size_t i : candidates) {
    const double g = gain(i);
    if (g == kNegInf) continue;
    if (!best || g > best->second || (g == best->second && i < best->first)) best = {i, g};
  }
  return best;
}

inline std::vector<std::size_t> unselected(std::size_t n, const std::vector<char>& taken) {
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!taken[i]) out.push_back(i);
  return out;
}

inline void check_k(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw ContractViolation("k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                            ", n=" + std::to_string(n) + ")");
  }
}

inline RunReport make_report(std::string algo, const KernelOracle& oracle, std::size_t k) {
  RunReport r;
  r.algo = std::move(algo);
  r.input_kind = oracle.kind() == KernelKind::LDense ? "L" : "B";
  r.n = oracle.n();
  r.d = oracle.d();
  r.k = k;
  return r;
}

}  // namespace dppmap::detail
