#include "dppmap/reference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dppmap/errors.hpp"
#include "detail.hpp"

namespace dppmap::reference {
namespace {

using detail::argmax_gain;
using detail::kNegInf;
const auto complement = detail::unselected;

// ln det of a small dense symmetric matrix: sum of ln(squared pivots) of a
// row-by-row Cholesky with descending inner sums.
double log_det_dense(DenseMatrix a) {
  const std::size_t m = a.rows();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double x = a(i, j), y = a(j, i);
      if (std::abs(x - y) > 1e-10 * std::max({1.0, std::abs(x), std::abs(y)})) {
        throw std::invalid_argument("log_det: submatrix is not symmetric");
      }
    }
  }
  double total = 0.0;
  // Overwrite the lower triangle with the factor; diagonal keeps the pivot.
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = j; i < m; ++i) {
      double s = a(i, j);
      for (std::size_t k = j; k-- > 0;) s -= a(i, k) * a(j, k);
      if (i == j) {
        if (!(s > kSingularPivot)) return kNegInf;
        total += std::log(s);
        a(j, j) = std::sqrt(s);
      } else {
        a(i, j) = s / a(j, j);
      }
    }
  }
  return total;
}

}  // namespace

DenseMatrix principal_submatrix(const KernelOracle& oracle, std::span<const std::size_t> subset,
                                std::uint64_t* kernel_evals) {
  const std::size_t m = subset.size();
  DenseMatrix sub(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = r; c < m; ++c) {
      const double v = oracle.entry(subset[r], subset[c]);
      sub(r, c) = v;
      sub(c, r) = v;
    }
  }
  if (kernel_evals) *kernel_evals += m * (m + 1) / 2;
  return sub;
}

double log_det(const DenseMatrix& l, std::span<const std::size_t> subset) {
  const std::size_t m = subset.size();
  DenseMatrix sub(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    if (subset[r] >= l.rows()) throw std::out_of_range("log_det: index out of range");
    for (std::size_t c = 0; c < m; ++c) sub(r, c) = l(subset[r], subset[c]);
  }
  return log_det_dense(std::move(sub));
}

double log_det(const KernelOracle& oracle, std::span<const std::size_t> subset,
               std::uint64_t* kernel_evals) {
  return log_det_dense(principal_submatrix(oracle, subset, kernel_evals));
}

double log_det(const DenseMatrix& l) {
  if (!l.square()) throw std::invalid_argument("log_det: matrix must be square");
  return log_det_dense(l);
}

DenseMatrix cholesky_lower(const DenseMatrix& l) {
  if (!l.square()) throw std::invalid_argument("cholesky_lower: matrix must be square");
  const std::size_t n = l.rows();
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ci = c.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const auto cj = c.row(j);
      double s = l(i, j);
      for (std::size_t k = j; k-- > 0;) s -= ci[k] * cj[k];
      if (i == j) {
        if (!(s > kSingularPivot)) {
          throw SingularKernelError("pivot " + std::to_string(i) + " is " + std::to_string(s));
        }
        ci[i] = std::sqrt(s);
      } else {
        ci[j] = s / cj[j];
      }
    }
  }
  return c;
}

DenseMatrix inverse(const DenseMatrix& l) {
  const DenseMatrix c = cholesky_lower(l);
  const std::size_t n = c.rows();
  // xt = (C^{-1})^T, upper triangular; row r of xt is column r of C^{-1}.
  DenseMatrix xt(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    auto x = xt.row(col);
    x[col] = 1.0 / c(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const auto cr = c.row(r);
      double s = 0.0;
      for (std::size_t m = col; m < r; ++m) s += cr[m] * x[m];
      x[r] = -s / cr[r];
    }
  }
  // L^{-1} = C^{-T} C^{-1}: entry (i, j) = sum_m xt(i, m) xt(j, m), m >= max(i, j).
  DenseMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = xt.row(i);
    for (std::size_t j = i; j < n; ++j) {
      const auto xj = xt.row(j);
      double s = 0.0;
      for (std::size_t m = j; m < n; ++m) s += xi[m] * xj[m];
      inv(i, j) = s;
      inv(j, i) = s;
    }
  }
  return inv;
}

MapSolution exhaustive_map(const KernelOracle& oracle, std::optional<std::size_t> k) {
  const std::size_t n = oracle.n();
  if (n > 20) throw std::invalid_argument("exhaustive_map: n > 20 is too large to enumerate");
  const DenseMatrix l = oracle.materialize();
  const std::size_t limit = k.value_or(n);
  MapSolution best{{}, 0.0};
  std::vector<std::size_t> set;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > limit) continue;
    set.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) set.push_back(i);
    const double v = log_det(l, set);
    if (v > best.log_det || (v == best.log_det && set < best.set)) best = {set, v};
  }
  return best;
}

void GainOracle::set_base(std::vector<std::size_t> subset) {
  base_ = std::move(subset);
  base_log_det_ = log_det(*oracle_, base_, &evals_);
}

double GainOracle::gain(std::size_t i) {
  ++evaluations_;
  if (base_log_det_ == kNegInf) return kNegInf;
  base_.push_back(i);
  const double with = log_det(*oracle_, base_, &evals_);
  base_.pop_back();
  return with - base_log_det_;
}

RunReport naive_random_greedy(const KernelOracle& oracle, const VariantConfig& cfg,
                              DecisionStream& stream) {
  check_random_preconditions(oracle.n(), cfg.k);
  Stopwatch total;
  RunReport r = detail::make_report("naive-random", oracle, cfg.k);
  r.seed = stream.seed();
  std::vector<char> taken(oracle.n(), 0);
  GainOracle gains(oracle);
  std::vector<std::size_t> selection;
  for (std::size_t t = 0; t < cfg.k; ++t) {
    if (cfg.deadline.expired()) {
      r.timed_out = true;
      break;
    }
    const std::uint64_t l = stream.uniform_int(1, cfg.k);
    r.rank_draws.push_back(l);
    gains.set_base(selection);
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i : complement(oracle.n(), taken)) ranked.emplace_back(gains.gain(i), i);
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return x.second < y.second;
    });
    const auto [g, pick] = ranked[l - 1];
    if (g == 0.0) ++r.boundary_events;
    if (g > 0.0) {
      selection.push_back(pick);
      taken[pick] = 1;
      r.objective_trace.push_back(log_det(oracle, selection));
    } else {
      ++r.empty_steps;
    }
  }
  r.selection = std::move(selection);
  r.kernel_evals = gains.kernel_evals();
  r.timings.greedy_ms = r.timings.total_ms = total.elapsed_ms();
  return r;
}

RunReport naive_stochastic_greedy(const KernelOracle& oracle, const VariantConfig& cfg,
                                  DecisionStream& stream) {
  check_stochastic_preconditions(oracle.n(), cfg.k, cfg.epsilon);
  Stopwatch total;
  RunReport r = detail::make_report("naive-stochastic", oracle, cfg.k);
  r.seed = stream.seed();
  r.epsilon = cfg.epsilon;
  const std::size_t s = stochastic_sample_size(oracle.n(), cfg.k, cfg.epsilon);
  r.sample_size = s;
  std::vector<char> taken(oracle.n(), 0);
  GainOracle gains(oracle);
  std::vector<std::size_t> selection;
  for (std::size_t t = 0; t < cfg.k; ++t) {
    if (cfg.deadline.expired()) {
      r.timed_out = true;
      break;
    }
    const auto pool = complement(oracle.n(), taken);
    const auto sample = stream.sample_without_replacement(pool, s);
    gains.set_base(selection);
    const auto best = argmax_gain(sample, [&](std::size_t i) { return gains.gain(i); });
    if (best && best->second == 0.0) ++r.boundary_events;
    if (best && best->second > 0.0) {
      selection.push_back(best->first);
      taken[best->first] = 1;
      r.objective_trace.push_back(log_det(oracle, selection));
    } else {
      ++r.empty_steps;
    }
  }
  r.selection = std::move(selection);
  r.kernel_evals = gains.kernel_evals();
  r.timings.greedy_ms = r.timings.total_ms = total.elapsed_ms();
  return r;
}

namespace {

struct NaiveChains {
  InterlaceChain first, second;
};

// Two solutions grown alternately from a shared pool; an item taken by one is
// unavailable to the other. Each takes its best remaining item when that
// gain is >= 0.
NaiveChains naive_interlaced_sets(const KernelOracle& oracle, std::size_t k,
                                  std::optional<std::size_t> seed_item, std::uint64_t& evals,
                                  std::uint64_t& boundary) {
  const std::size_t n = oracle.n();
  std::vector<char> taken(n, 0);
  std::vector<std::size_t> sets[2];
  NaiveChains out;
  InterlaceChain* chains[2] = {&out.first, &out.second};
  for (auto* c : chains) {
    c->prefix_size.push_back(0);
    c->prefix_objective.push_back(0.0);
  }
  std::size_t t0 = 1;
  if (seed_item) {
    taken[*seed_item] = 1;
    for (int side = 0; side < 2; ++side) {
      sets[side].push_back(*seed_item);
      chains[side]->order.push_back(*seed_item);
      chains[side]->prefix_size.push_back(1);
      chains[side]->prefix_objective.push_back(log_det(oracle, sets[side], &evals));
    }
    t0 = 2;
  }
  GainOracle gains(oracle);
  for (std::size_t t = t0; t <= k; ++t) {
    for (int side = 0; side < 2; ++side) {
      gains.set_base(sets[side]);
      const auto best =
          argmax_gain(complement(n, taken), [&](std::size_t i) { return gains.gain(i); });
      if (best && best->second == 0.0) ++boundary;
      if (best && best->second >= 0.0) {
        sets[side].push_back(best->first);
        taken[best->first] = 1;
        chains[side]->order.push_back(best->first);
        chains[side]->prefix_objective.push_back(log_det(oracle, sets[side], &evals));
      } else {
        chains[side]->prefix_objective.push_back(chains[side]->prefix_objective.back());
      }
      chains[side]->prefix_size.push_back(sets[side].size());
    }
  }
  evals += gains.kernel_evals();
  return out;
}

}  // namespace

RunReport naive_interlace_greedy(const KernelOracle& oracle, const VariantConfig& cfg) {
  check_interlace_preconditions(oracle.n(), cfg.k);
  Stopwatch total;
  RunReport r = detail::make_report("naive-interlace", oracle, cfg.k);
  InterlaceDetail il;
  std::uint64_t evals = 0;
  auto ab = naive_interlaced_sets(oracle, cfg.k, std::nullopt, evals, r.boundary_events);
  il.a = std::move(ab.first);
  il.b = std::move(ab.second);
  if (!il.a.order.empty()) {
    auto cd = naive_interlaced_sets(oracle, cfg.k, il.a.order.front(), evals, r.boundary_events);
    il.c = std::move(cd.first);
    il.d = std::move(cd.second);
    il.second_phase = true;
  }
  double best = 0.0;
  const std::pair<char, const InterlaceChain*> chains[4] = {
      {'A', &il.a}, {'B', &il.b}, {'C', &il.c}, {'D', &il.d}};
  for (const auto& [name, chain] : chains) {
    for (std::size_t t = 0; t < chain->prefix_objective.size(); ++t) {
      if (chain->prefix_objective[t] > best) {
        best = chain->prefix_objective[t];
        il.best_chain = name;
        il.best_t = t;
      }
    }
  }
  const InterlaceChain& win = *chains[il.best_chain - 'A'].second;
  const std::size_t size = win.prefix_size.empty() ? 0 : win.prefix_size[il.best_t];
  r.selection.assign(win.order.begin(), win.order.begin() + size);
  for (std::size_t m = 1; m <= size; ++m) {
    r.objective_trace.push_back(
        log_det(oracle, std::span<const std::size_t>(r.selection.data(), m)));
  }
  r.interlace = std::move(il);
  r.kernel_evals = evals;
  r.timings.greedy_ms = r.timings.total_ms = total.elapsed_ms();
  return r;
}

}  // namespace dppmap::reference
