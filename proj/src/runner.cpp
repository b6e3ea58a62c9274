#include "dppmap/runner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dppmap/doublegreedy.hpp"
#include "dppmap/greedy.hpp"
#include "dppmap/random.hpp"
#include "dppmap/reference.hpp"
#include "dppmap/variants.hpp"

namespace dppmap {
namespace {

constexpr Algo kAll[] = {Algo::Naive,      Algo::Lazy,      Algo::Fast,
                         Algo::LazyFast,   Algo::Random,    Algo::Stochastic,
                         Algo::Interlace,  Algo::DoubleNaive, Algo::DoubleFast};

}  // namespace

std::string_view algo_name(Algo algo) {
  switch (algo) {
    case Algo::Naive: return "naive";
    case Algo::Lazy: return "lazy";
    case Algo::Fast: return "fast";
    case Algo::LazyFast: return "lazyfast";
    case Algo::Random: return "random";
    case Algo::Stochastic: return "stochastic";
    case Algo::Interlace: return "interlace";
    case Algo::DoubleNaive: return "double-naive";
    case Algo::DoubleFast: return "double-fast";
  }
  return "?";
}

const std::vector<std::string>& algo_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (Algo a : kAll) v.emplace_back(algo_name(a));
    return v;
  }();
  return names;
}

Algo parse_algo(std::string_view name) {
  for (Algo a : kAll)
    if (algo_name(a) == name) return a;
  std::string valid;
  for (const auto& n : algo_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "' (expected one of " +
                              valid + ")");
}

bool is_double(Algo algo) { return algo == Algo::DoubleNaive || algo == Algo::DoubleFast; }

RunReport run_algorithm(Algo algo, const KernelOracle& oracle, const RunOptions& opts) {
  GreedyConfig g{opts.k, true, opts.deadline};
  VariantConfig v{opts.k, opts.epsilon, opts.deadline};
  RunReport r;
  switch (algo) {
    case Algo::Naive: r = naive_greedy(oracle, g); break;
    case Algo::Lazy: r = lazy_greedy(oracle, g); break;
    case Algo::Fast: r = fast_greedy(oracle, g); break;
    case Algo::LazyFast: r = lazy_fast_greedy(oracle, g); break;
    case Algo::Random: {
      DecisionStream stream(opts.seed);
      r = random_greedy_lf(oracle, v, stream);
      break;
    }
    case Algo::Stochastic: {
      DecisionStream stream(opts.seed);
      r = stochastic_greedy_lf(oracle, v, stream);
      break;
    }
    case Algo::Interlace: r = interlace_greedy_lf(oracle, v); break;
    case Algo::DoubleNaive:
    case Algo::DoubleFast: {
      const auto kernel = prepare_double_greedy(oracle);
      DecisionStream stream(opts.seed);
      r = algo == Algo::DoubleFast ? fast_double_greedy(kernel, stream, opts.deadline)
                                   : naive_double_greedy(kernel, stream, opts.deadline);
      break;
    }
  }
  r.seed = opts.seed;
  return r;
}

double objective_check(const RunReport& report, const KernelOracle& oracle) {
  const double ref = reference::log_det(oracle, report.selection);
  const double got = report.objective();
  if (ref == got) return 0.0;
  return std::abs(ref - got) / std::max(1.0, std::abs(ref));
}

}  // namespace dppmap
