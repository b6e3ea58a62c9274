#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dppmap/runner.hpp"

namespace dppmap {

struct BenchConfig {
  std::vector<Algo> algos;
  std::vector<std::size_t> n_grid;
  // 0 means d = n, as in the synthetic experiments.
  std::size_t d = 0;
  std::vector<std::size_t> k_grid;
  std::vector<std::uint64_t> seeds{1};
  double epsilon = 0.5;
  // Kernel regularization for the double greedy cells.
  double scale = 0.9;
  double shift = 0.1;
  // "B": entries computed from features inside the timed region.
  // "L": L = B^T B built before the clock starts.
  std::string input_kind = "B";
  std::optional<double> timeout_s;
  std::size_t threads = 1;
};

struct BenchRow {
  std::string algo;
  std::string input_kind;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  double time_ms = 0.0;
  double greedy_ms = 0.0;
  std::uint64_t offdiag = 0;
  std::uint64_t kernel_evals = 0;
  double logdet = 0.0;
  bool terminated_early = false;
  // "ok", "timeout", or "error: <message>".
  std::string status = "ok";
};

// Rejects empty grids, k > n, and cells whose size preconditions fail
// (std::invalid_argument).
void validate(const BenchConfig& cfg);

// One row per (n, seed, k, algo), in that nesting order regardless of the
// thread count. Instances come from gen_synthetic({n, d, seed}).
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

// Worker count: DPP_THREADS if set to a positive integer, else `fallback`.
std::size_t bench_threads(std::size_t fallback);

std::string bench_csv_header();
std::string to_csv(const BenchRow& row);

// Warnings for cells where lazyfast took longer than 1.2x fast.
std::vector<std::string> wall_clock_warnings(const std::vector<BenchRow>& rows);

}  // namespace dppmap
