#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dppmap/bench.hpp"
#include "dppmap/datagen.hpp"
#include "dppmap/io.hpp"
#include "dppmap/kernel.hpp"
#include "dppmap/runner.hpp"
#include "dppmap/verify.hpp"

namespace fs = std::filesystem;
using namespace dppmap;

namespace {

struct GenArgs {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "dppm1";
};

struct IngestArgs {
  std::string input;
  std::string format = "triples";
  RatingsSpec spec;
  bool keep_empty = false;
  std::string out;
};

struct RunArgs {
  std::string algo;
  std::string input;
  std::string input_kind = "B";
  std::size_t k = 1;
  std::uint64_t seed = 0;
  double epsilon = 0.5;
  double scale = 0.9;
  double shift = 0.1;
  std::optional<double> timeout_s;
  std::string out;
  bool check = false;
};

struct BenchArgs {
  std::vector<std::string> algos;
  std::vector<std::size_t> n;
  std::size_t d = 0;
  std::vector<std::size_t> k;
  std::vector<std::uint64_t> seeds{1};
  double epsilon = 0.5;
  std::string input_kind = "B";
  std::optional<double> timeout_s;
  std::string out;
};

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

int cmd_gen(const GenArgs& a) {
  const DenseMatrix b = gen_synthetic({a.n, a.d, a.seed});
  if (a.format == "csv") {
    io::save_csv(a.out, b);
  } else {
    io::save_dense(a.out, b);
  }
  std::cerr << "wrote " << b.rows() << "x" << b.cols() << " feature matrix to " << a.out << "\n";
  return 0;
}

int cmd_ingest(const IngestArgs& a) {
  std::ifstream in(a.input);
  if (!in) throw std::runtime_error("cannot open " + a.input);
  RatingsSpec spec = a.spec;
  spec.drop_empty = !a.keep_empty;
  const auto triples = a.format == "netflix" ? parse_netflix(in) : parse_triples(in, spec);
  const auto result = ingest_ratings(triples, spec);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  io::save_sparse(a.out, result.b);
  open_out(a.out + ".idmap.json") << idmap_json(result);
  std::cerr << "wrote " << result.users.size() << " users x " << result.items.size()
            << " items (" << result.b.nnz() << " nonzeros) to " << a.out << "\n";
  return 0;
}

KernelOracle load_oracle(const std::string& path, const std::string& kind, double scale,
                         double shift) {
  auto m = io::load_matrix(path);
  if (kind == "L") {
    if (!std::holds_alternative<DenseMatrix>(m)) {
      throw std::invalid_argument("L input must be a dense matrix");
    }
    return KernelOracle::from_kernel(std::move(std::get<DenseMatrix>(m)), scale, shift);
  }
  if (auto* dense = std::get_if<DenseMatrix>(&m)) {
    return KernelOracle::from_features(*dense, scale, shift);
  }
  return KernelOracle::from_features(std::move(std::get<SparseColumns>(m)), scale, shift);
}

int cmd_run(const RunArgs& a, bool scale_given) {
  const Algo algo = parse_algo(a.algo);
  // The 0.9/0.1 regularization defaults only concern double greedy; an
  // explicit --scale/--shift applies to every algorithm.
  const bool transform = is_double(algo) || scale_given;
  const auto oracle = load_oracle(a.input, a.input_kind, transform ? a.scale : 1.0,
                                  transform ? a.shift : 0.0);
  RunOptions opts;
  opts.k = is_double(algo) ? oracle.n() : a.k;
  opts.seed = a.seed;
  opts.epsilon = a.epsilon;
  if (a.timeout_s) opts.deadline = Deadline::after_seconds(*a.timeout_s);
  const RunReport r = run_algorithm(algo, oracle, opts);
  const std::string json = to_json(r);
  if (a.out.empty()) {
    std::cout << json << "\n";
  } else {
    open_out(a.out) << json << "\n";
  }
  if (r.timed_out) std::cerr << "warning: run stopped at the deadline\n";
  if (a.check) {
    const double gap = objective_check(r, oracle);
    std::cerr << "objective check: relative gap " << gap << "\n";
    if (!(gap <= 1e-8)) {
      std::cerr << "error: objective differs from the reference log-det\n";
      return 1;
    }
  }
  return 0;
}

int cmd_bench(const BenchArgs& a) {
  BenchConfig cfg;
  for (const auto& name : a.algos) cfg.algos.push_back(parse_algo(name));
  cfg.n_grid = a.n;
  cfg.d = a.d;
  cfg.k_grid = a.k;
  cfg.seeds = a.seeds;
  cfg.epsilon = a.epsilon;
  cfg.input_kind = a.input_kind;
  cfg.timeout_s = a.timeout_s;
  cfg.threads = bench_threads(1);
  const auto rows = run_bench(cfg);

  const bool fresh = a.out.empty() || !fs::exists(a.out) || fs::file_size(a.out) == 0;
  std::ofstream file;
  if (!a.out.empty()) file = open_out(a.out, std::ios::app);
  std::ostream& out = a.out.empty() ? std::cout : file;
  if (fresh) out << bench_csv_header() << "\n";
  for (const auto& row : rows) {
    out << to_csv(row) << "\n";
    if (row.status != "ok") std::cerr << "warning: " << row.algo << " n=" << row.n << " k="
                                      << row.k << " seed=" << row.seed << ": " << row.status
                                      << "\n";
  }
  for (const auto& w : wall_clock_warnings(rows)) std::cerr << "warning: " << w << "\n";
  return 0;
}

int cmd_verify(bool quick, std::uint64_t seed) {
  VerifyOptions opts;
  opts.quick = quick;
  opts.seed = seed;
  std::size_t failed = 0;
  run_verification(opts, [&](const CriterionResult& r) {
    std::cout << format_result(r) << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << (failed ? "FAILED: " : "all passed: ") << kCriterionCount - failed << "/"
            << kCriterionCount << " criteria\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy MAP inference for determinantal point processes"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic standard-normal feature matrix");
  g->add_option("--n", gen.n, "number of items")->required();
  g->add_option("--d", gen.d, "feature dimension (default n)");
  g->add_option("--seed", gen.seed, "generator seed");
  g->add_option("--out", gen.out, "output path")->required();
  g->add_option("--format", gen.format, "dppm1 or csv")
      ->check(CLI::IsMember({"dppm1", "csv"}));

  IngestArgs ing;
  auto* i = app.add_subcommand("ingest", "Binarize a ratings file into a sparse feature matrix");
  i->add_option("--input", ing.input, "ratings file")->required();
  i->add_option("--format", ing.format, "triples or netflix")
      ->check(CLI::IsMember({"triples", "netflix"}));
  i->add_option("--user-col", ing.spec.user_col, "user column (triples)");
  i->add_option("--item-col", ing.spec.item_col, "item column (triples)");
  i->add_option("--rating-col", ing.spec.rating_col, "rating column (triples)");
  i->add_option("--threshold", ing.spec.threshold, "keep ratings >= threshold");
  i->add_flag("--keep-empty", ing.keep_empty, "keep items and users with no surviving rating");
  i->add_option("--out", ing.out, "output DPPS1 path")->required();

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run one algorithm and write a JSON report");
  r->add_option("--algo", run.algo, "algorithm")->required();
  r->add_option("--input", run.input, "matrix file (DPPM1, DPPS1 or CSV)")->required();
  r->add_option("--input-kind", run.input_kind, "B (features) or L (kernel)")
      ->check(CLI::IsMember({"B", "L"}));
  r->add_option("--k", run.k, "cardinality budget");
  r->add_option("--seed", run.seed, "decision stream seed");
  r->add_option("--epsilon", run.epsilon, "stochastic greedy epsilon");
  auto* scale_opt = r->add_option("--scale", run.scale, "kernel scale (double greedy default 0.9)");
  auto* shift_opt = r->add_option("--shift", run.shift, "diagonal shift (double greedy default 0.1)");
  r->add_option("--timeout-s", run.timeout_s, "cooperative deadline in seconds");
  r->add_option("--out", run.out, "report path (default stdout)");
  r->add_flag("--check", run.check, "compare the objective with a brute-force log-det");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Sweep a grid and append CSV rows");
  b->add_option("--algos", bench.algos, "comma-separated algorithms")->required()->delimiter(',');
  b->add_option("--n", bench.n, "comma-separated n grid")->required()->delimiter(',');
  b->add_option("--d", bench.d, "feature dimension (default n)");
  b->add_option("--k", bench.k, "comma-separated k grid")->delimiter(',');
  b->add_option("--seed,--seeds", bench.seeds, "comma-separated seeds")->delimiter(',');
  b->add_option("--epsilon", bench.epsilon, "stochastic greedy epsilon");
  b->add_option("--input-kind", bench.input_kind, "B or L")->check(CLI::IsMember({"B", "L"}));
  b->add_option("--timeout-s", bench.timeout_s, "per-cell deadline in seconds");
  b->add_option("--out", bench.out, "CSV path, appended to (default stdout)");

  bool quick = false;
  std::uint64_t verify_seed = VerifyOptions{}.seed;
  auto* v = app.add_subcommand("verify", "Run the acceptance checks");
  v->add_flag("--quick", quick, "skip the slow soft timing checks");
  v->add_option("--seed", verify_seed, "master seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (i->parsed()) return cmd_ingest(ing);
    if (r->parsed()) return cmd_run(run, scale_opt->count() + shift_opt->count() > 0);
    if (b->parsed()) return cmd_bench(bench);
    if (v->parsed()) return cmd_verify(quick, verify_seed);
  } catch (const std::exception& e) {
    std::cerr << "dppmap: error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
