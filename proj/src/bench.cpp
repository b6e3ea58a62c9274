#include "dppmap/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "dppmap/datagen.hpp"
#include "dppmap/kernel.hpp"
#include "dppmap/variants.hpp"

namespace dppmap {
namespace {

struct Instance {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::unique_ptr<KernelOracle> plain;
  std::unique_ptr<KernelOracle> regularized;
};

struct Cell {
  const Instance* instance;
  Algo algo;
  std::size_t k;
};

std::string num(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

BenchRow run_cell(const Cell& cell, const BenchConfig& cfg) {
  BenchRow row;
  row.algo = std::string(algo_name(cell.algo));
  row.input_kind = cfg.input_kind;
  row.n = cell.instance->n;
  row.d = cell.instance->d;
  row.k = cell.k;
  row.seed = cell.instance->seed;
  if (cell.algo == Algo::Stochastic) row.epsilon = cfg.epsilon;
  RunOptions opts;
  opts.k = cell.k;
  opts.seed = cell.instance->seed;
  opts.epsilon = cfg.epsilon;
  if (cfg.timeout_s) opts.deadline = Deadline::after_seconds(*cfg.timeout_s);
  const KernelOracle& oracle =
      is_double(cell.algo) ? *cell.instance->regularized : *cell.instance->plain;
  try {
    const RunReport r = run_algorithm(cell.algo, oracle, opts);
    row.time_ms = r.timings.total_ms;
    row.greedy_ms = r.timings.greedy_ms;
    row.offdiag = r.offdiag;
    row.kernel_evals = r.kernel_evals;
    row.logdet = r.objective();
    row.terminated_early = r.terminated_early;
    if (r.timed_out) row.status = "timeout";
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

}  // namespace

std::size_t bench_threads(std::size_t fallback) {
  if (const char* env = std::getenv("DPP_THREADS")) {
    std::size_t v = 0;
    const std::string_view s(env);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec == std::errc() && r.ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max<std::size_t>(fallback, 1);
}

void validate(const BenchConfig& cfg) {
  if (cfg.algos.empty()) throw std::invalid_argument("bench: no algorithms given");
  if (cfg.n_grid.empty()) throw std::invalid_argument("bench: empty n grid");
  if (cfg.seeds.empty()) throw std::invalid_argument("bench: no seeds given");
  if (cfg.input_kind != "B" && cfg.input_kind != "L") {
    throw std::invalid_argument("bench: input kind must be B or L");
  }
  const bool needs_k = std::any_of(cfg.algos.begin(), cfg.algos.end(),
                                   [](Algo a) { return !is_double(a); });
  if (needs_k && cfg.k_grid.empty()) throw std::invalid_argument("bench: empty k grid");
  for (std::size_t n : cfg.n_grid) {
    if (n == 0) throw std::invalid_argument("bench: n must be positive");
    for (std::size_t k : cfg.k_grid) {
      const std::string cell = " (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
      if (k == 0 || k > n) throw std::invalid_argument("bench: need 1 <= k <= n" + cell);
      for (Algo a : cfg.algos) {
        try {
          if (a == Algo::Random) check_random_preconditions(n, k);
          if (a == Algo::Stochastic) check_stochastic_preconditions(n, k, cfg.epsilon);
          if (a == Algo::Interlace) check_interlace_preconditions(n, k);
        } catch (const std::exception& e) {
          throw std::invalid_argument(std::string("bench: ") + e.what());
        }
      }
    }
  }
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  validate(cfg);
  std::vector<std::unique_ptr<Instance>> instances;
  std::vector<Cell> cells;
  for (std::size_t n : cfg.n_grid) {
    for (std::uint64_t seed : cfg.seeds) {
      auto inst = std::make_unique<Instance>();
      inst->n = n;
      inst->d = cfg.d == 0 ? n : cfg.d;
      inst->seed = seed;
      const DenseMatrix b = gen_synthetic({n, inst->d, seed});
      if (cfg.input_kind == "B") {
        inst->plain = std::make_unique<KernelOracle>(KernelOracle::from_features(b));
        inst->regularized =
            std::make_unique<KernelOracle>(KernelOracle::from_features(b, cfg.scale, cfg.shift));
      } else {
        DenseMatrix l = KernelOracle::from_features(b).materialize();
        inst->regularized =
            std::make_unique<KernelOracle>(KernelOracle::from_kernel(l, cfg.scale, cfg.shift));
        inst->plain = std::make_unique<KernelOracle>(KernelOracle::from_kernel(std::move(l)));
      }
      bool double_done = false;
      for (std::size_t k : cfg.k_grid.empty() ? std::vector<std::size_t>{n} : cfg.k_grid) {
        for (Algo a : cfg.algos) {
          if (is_double(a)) continue;
          cells.push_back({inst.get(), a, k});
        }
        if (!double_done) {
          for (Algo a : cfg.algos)
            if (is_double(a)) cells.push_back({inst.get(), a, n});
          double_done = true;
        }
      }
      instances.push_back(std::move(inst));
    }
  }

  std::vector<BenchRow> rows(cells.size());
  const std::size_t workers = std::min(std::max<std::size_t>(cfg.threads, 1), cells.size());
  if (workers <= 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) rows[c] = run_cell(cells[c], cfg);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c; (c = next.fetch_add(1)) < cells.size();) rows[c] = run_cell(cells[c], cfg);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

std::string bench_csv_header() {
  return "algo,input_kind,n,d,k,seed,epsilon,time_ms,greedy_ms,U,kernel_evals,logdet,"
         "terminated_early,status";
}

std::string to_csv(const BenchRow& row) {
  std::ostringstream out;
  std::string status = row.status;
  std::replace(status.begin(), status.end(), ',', ';');
  std::replace(status.begin(), status.end(), '\n', ' ');
  out << row.algo << ',' << row.input_kind << ',' << row.n << ',' << row.d << ',' << row.k << ','
      << row.seed << ',' << (row.epsilon ? num(*row.epsilon) : "") << ',' << num(row.time_ms)
      << ',' << num(row.greedy_ms) << ',' << row.offdiag << ',' << row.kernel_evals << ','
      << num(row.logdet) << ',' << (row.terminated_early ? 1 : 0) << ',' << status;
  return out.str();
}

std::vector<std::string> wall_clock_warnings(const std::vector<BenchRow>& rows) {
  using Key = std::tuple<std::string, std::size_t, std::size_t, std::size_t, std::uint64_t>;
  std::map<Key, double> fast;
  for (const auto& r : rows)
    if (r.algo == "fast" && r.status == "ok") fast[{r.input_kind, r.n, r.d, r.k, r.seed}] = r.time_ms;
  std::vector<std::string> out;
  for (const auto& r : rows) {
    if (r.algo != "lazyfast" || r.status != "ok") continue;
    const auto it = fast.find({r.input_kind, r.n, r.d, r.k, r.seed});
    if (it == fast.end() || r.time_ms <= 1.2 * it->second) continue;
    out.push_back("lazyfast took " + num(r.time_ms) + " ms vs fast " + num(it->second) +
                  " ms (> 1.2x) at n=" + std::to_string(r.n) + ", k=" + std::to_string(r.k) +
                  ", seed=" + std::to_string(r.seed));
  }
  return out;
}

}  // namespace dppmap
