#include <sstream>

#include "doctest.h"
#include "dppmap/bench.hpp"
#include "dppmap/datagen.hpp"
#include "dppmap/report.hpp"
#include "dppmap/runner.hpp"
#include "dppmap/verify.hpp"
#include "json.hpp"

using namespace dppmap;

TEST_CASE("algorithm names round trip") {
  for (const auto& name : algo_names()) CHECK(algo_name(parse_algo(name)) == name);
  CHECK_THROWS_WITH_AS(parse_algo("greedyish"), doctest::Contains("lazyfast"),
                       std::invalid_argument);
  CHECK(is_double(Algo::DoubleFast));
  CHECK_FALSE(is_double(Algo::LazyFast));
}

TEST_CASE("run reports are deterministic apart from timings") {
  const auto l = KernelOracle::from_features(gen_synthetic({30, 30, 1}));
  for (const auto& name : algo_names()) {
    const Algo algo = parse_algo(name);
    RunOptions opts;
    opts.k = 5;
    opts.seed = 3;
    const auto oracle = is_double(algo) ? KernelOracle::from_features(gen_synthetic({30, 30, 1}),
                                                                      0.9, 0.1)
                                        : l;
    const auto a = run_algorithm(algo, oracle, opts);
    const auto b = run_algorithm(algo, oracle, opts);
    CAPTURE(name);
    CHECK(to_json(a, false) == to_json(b, false));
    CHECK(objective_check(a, oracle) <= 1e-8);
    const auto j = nlohmann::json::parse(to_json(a));
    for (const char* key : {"algo", "input_kind", "n", "d", "k", "seed", "epsilon", "selection",
                            "objective_trace", "U", "kernel_evals", "pq_ops", "timings"})
      CHECK(j.contains(key));
    CHECK(j["timings"].contains("greedy_ms"));
  }
}

TEST_CASE("bench rows") {
  BenchConfig cfg;
  cfg.algos = {Algo::Fast, Algo::LazyFast, Algo::DoubleFast};
  cfg.n_grid = {40};
  cfg.k_grid = {5, 10};
  cfg.seeds = {1, 2};
  const auto rows = run_bench(cfg);
  CHECK(rows.size() == 2 * (2 * 2 + 1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].status == "ok");
    if (rows[i].algo == "lazyfast") {
      CHECK(rows[i - 1].algo == "fast");
      CHECK(rows[i].offdiag <= rows[i - 1].offdiag);
      CHECK(rows[i].logdet == rows[i - 1].logdet);
    }
  }
  CHECK(bench_csv_header() ==
        "algo,input_kind,n,d,k,seed,epsilon,time_ms,greedy_ms,U,kernel_evals,logdet,"
        "terminated_early,status");
  const std::string line = to_csv(rows[0]);
  CHECK(std::count(line.begin(), line.end(), ',') == 13);

  cfg.threads = 3;
  const auto parallel = run_bench(cfg);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parallel[i].offdiag == rows[i].offdiag);
    CHECK(parallel[i].logdet == rows[i].logdet);
  }
}

TEST_CASE("bench validation and per-cell errors") {
  BenchConfig cfg;
  cfg.algos = {Algo::Interlace};
  cfg.n_grid = {10};
  cfg.k_grid = {3};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.k_grid = {11};
  cfg.algos = {Algo::Fast};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.k_grid = {};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

  // rank-deficient kernel: double greedy cannot invert it, the row records it
  cfg.algos = {Algo::DoubleFast};
  cfg.n_grid = {6};
  cfg.d = 2;
  cfg.shift = 0.0;
  const auto rows = run_bench(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status.rfind("error: ", 0) == 0);
}

TEST_CASE("band helpers") {
  CHECK(greedy_band(10, 3).lo == 3);
  CHECK(greedy_band(10, 3).hi == 17);
  CHECK(random_band(10, 4).hi == 24);
  CHECK(interlace_band(12, 3).lo == 12);
  CHECK(interlace_band(12, 3).hi == 72);
  // caption formula with q = floor(n/s)
  CHECK(stochastic_band(10, 5, 3).hi == doctest::Approx(7.5 * 1 + 7.5));
  RunReport r;
  r.selection = {1, 2};
  r.terminated_early = true;
  CHECK(executed_steps(r) == 3);
}
