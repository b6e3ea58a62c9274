#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dppmap {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }
  void reset() { start_ = std::chrono::steady_clock::now(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Cooperative time limit, checked by the algorithms between steps.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after_seconds(double seconds);
  bool expired() const {
    return at_ && std::chrono::steady_clock::now() >= *at_;
  }
  bool set() const { return at_.has_value(); }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

struct Timings {
  double setup_ms = 0.0;
  std::optional<double> product_ms;
  std::optional<double> inverse_ms;
  double greedy_ms = 0.0;
  double total_ms = 0.0;
};

// The four prefix chains of InterlaceGreedy. prefix_size[t] and
// prefix_objective[t] describe X^(t) for t = 0..k; order lists X^(k) in
// commit order, so X^(t) is its first prefix_size[t] items.
struct InterlaceChain {
  std::vector<std::size_t> order;
  std::vector<std::size_t> prefix_size;
  std::vector<double> prefix_objective;
};

struct InterlaceDetail {
  InterlaceChain a, b, c, d;
  bool second_phase = false;
  // Which chain/prefix won: chain in {'A','B','C','D'}, t in 0..k.
  char best_chain = 'A';
  std::size_t best_t = 0;
  std::uint64_t offdiag_per_chain[4] = {0, 0, 0, 0};
};

// One entry per processed element of DoubleGreedy.
struct DoubleGreedyStep {
  double add_gain;     // f_i(S), from 2 ln d_i on the fast path
  double remove_gain;  // -f_i(T), from 2 ln e_i on the fast path
  double a;
  double b;
  double draw;         // uniform in [0, 1)
  bool added;
};

struct RunReport {
  std::string algo;
  std::string input_kind;  // "B" or "L"
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;

  std::vector<std::size_t> selection;
  // ln det L[S^(t)] after each commit.
  std::vector<double> objective_trace;
  // Off-diagonal entries of the Cholesky factor computed (U).
  std::uint64_t offdiag = 0;
  std::uint64_t kernel_evals = 0;
  std::uint64_t pq_ops = 0;

  bool terminated_early = false;
  bool timed_out = false;
  // Decisions taken exactly at gain 0 (pivot exactly 1).
  std::uint64_t boundary_events = 0;

  // RandomGreedy: the rank drawn each step. StochasticGreedy: sample size.
  std::vector<std::uint64_t> rank_draws;
  std::optional<std::size_t> sample_size;
  // Steps that added nothing (dummy picks, non-positive sampled winners).
  std::uint64_t empty_steps = 0;

  std::optional<InterlaceDetail> interlace;
  std::vector<DoubleGreedyStep> double_steps;

  Timings timings;

  double objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

// Deterministic JSON rendering (sorted keys). Timings are omitted when
// with_timings is false so two runs can be compared byte for byte.
std::string to_json(const RunReport& report, bool with_timings = true);

}  // namespace dppmap
