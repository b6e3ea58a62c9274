#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dppmap/report.hpp"

namespace dppmap {

// Closed interval of admissible off-diagonal counts.
struct Band {
  double lo;
  double hi;
  bool contains(std::uint64_t u) const {
    const double x = static_cast<double>(u);
    return lo <= x && x <= hi;
  }
};

// Steps a greedy run executed: its selections, plus the step that found no
// positive gain if it stopped early.
std::size_t executed_steps(const RunReport& r);

// [t(t-1)/2, (t-1)(n - t/2)] for t executed steps.
Band greedy_band(std::size_t n, std::size_t steps);
// [k(k-1)/2, (k-1)(n - k/2)].
Band random_band(std::size_t n, std::size_t k);
// [k(k-1)/2, (n - k/2)(k - q - 1) + kq/2], q = floor(n / s).
Band stochastic_band(std::size_t n, std::size_t k, std::size_t s);
// [2k(k-1), 4(n-k)(k-1)].
Band interlace_band(std::size_t n, std::size_t k);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  // Non-gating observations (soft checks, statistics).
  std::vector<std::string> notes;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Skips the slow soft checks (the n = 500 double greedy timing).
  bool quick = false;
  std::uint64_t seed = 20240601;
};

inline constexpr int kCriterionCount = 10;

CriterionResult verify_criterion(int id, const VerifyOptions& opts);

std::vector<CriterionResult> run_verification(
    const VerifyOptions& opts, const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS  3  title  (0.12 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace dppmap
