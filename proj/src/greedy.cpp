#include "dppmap/greedy.hpp"

#include <cmath>
#include <vector>

#include "dppmap/cholesky.hpp"
#include "dppmap/pqueue.hpp"
#include "dppmap/reference.hpp"
#include "detail.hpp"

namespace dppmap {
namespace {

using detail::kNegInf;

// Whether a best gain (or best pivot) allows another selection.
bool gain_selectable(double gain, const GreedyConfig& cfg) {
  return cfg.stop_on_nonpositive ? gain > 0.0 : gain > kNegInf;
}

bool pivot_selectable(double d, const GreedyConfig& cfg) {
  return cfg.stop_on_nonpositive ? d > 1.0 : d * d > reference::kSingularPivot;
}

void finish(RunReport& r, const CholeskyState& state) {
  r.selection = state.selection();
  r.objective_trace = state.objective_trace();
  r.offdiag = state.offdiag_count();
  r.kernel_evals = state.kernel_evals();
}

}  // namespace

std::uint64_t fast_greedy_offdiag(std::size_t n, std::size_t steps) {
  if (steps == 0) return 0;
  const std::uint64_t s = steps;
  return (s - 1) * (2 * static_cast<std::uint64_t>(n) - s) / 2;
}

RunReport naive_greedy(const KernelOracle& oracle, const GreedyConfig& cfg) {
  detail::check_k(oracle.n(), cfg.k);
  Stopwatch total;
  RunReport r = detail::make_report("naive", oracle, cfg.k);
  const std::size_t n = oracle.n();
  std::vector<char> taken(n, 0);
  reference::GainOracle gains(oracle);
  std::vector<std::size_t> selection;
  while (selection.size() < cfg.k) {
    if (cfg.deadline.expired()) {
      r.timed_out = true;
      break;
    }
    gains.set_base(selection);
    const auto best = detail::argmax_gain(detail::unselected(n, taken),
                                          [&](std::size_t i) { return gains.gain(i); });
    if (best && best->second == 0.0) ++r.boundary_events;
    if (!best || !gain_selectable(best->second, cfg)) {
      r.terminated_early = true;
      break;
    }
    selection.push_back(best->first);
    taken[best->first] = 1;
    r.objective_trace.push_back(reference::log_det(oracle, selection));
  }
  r.selection = std::move(selection);
  r.kernel_evals = gains.kernel_evals();
  r.timings.greedy_ms = r.timings.total_ms = total.elapsed_ms();
  return r;
}

RunReport lazy_greedy(const KernelOracle& oracle, const GreedyConfig& cfg) {
  detail::check_k(oracle.n(), cfg.k);
  Stopwatch total;
  RunReport r = detail::make_report("lazy", oracle, cfg.k);
  const std::size_t n = oracle.n();
  reference::GainOracle gains(oracle);
  std::vector<std::size_t> selection;

  // rho[i] was computed against the first stamp[i] selected items.
  std::vector<double> rho(n);
  std::vector<std::size_t> stamp(n, 0);
  gains.set_base({});
  for (std::size_t i = 0; i < n; ++i) rho[i] = gains.gain(i);
  auto q = LazyMaxQueue::build(rho);
  r.timings.setup_ms = total.elapsed_ms();

  Stopwatch loop;
  while (selection.size() < cfg.k) {
    if (cfg.deadline.expired()) {
      r.timed_out = true;
      break;
    }
    const auto top = q.top();
    if (!top || (cfg.stop_on_nonpositive && top->key <= 0.0)) {
      if (top && top->key == 0.0) ++r.boundary_events;
      r.terminated_early = true;
      break;
    }
    const std::size_t i = q.pop_max().index;
    if (stamp[i] != selection.size()) {
      gains.set_base(selection);
      rho[i] = gains.gain(i);
      stamp[i] = selection.size();
    }
    if (!beats(rho[i], i, q.top())) {
      q.push(i, rho[i]);
      continue;
    }
    if (rho[i] == 0.0) ++r.boundary_events;
    if (!gain_selectable(rho[i], cfg)) {
      r.terminated_early = true;
      break;
    }
    selection.push_back(i);
    q.exclude(i);
    r.objective_trace.push_back(reference::log_det(oracle, selection));
  }
  r.selection = std::move(selection);
  r.kernel_evals = gains.kernel_evals();
  r.pq_ops = q.ops();
  r.timings.greedy_ms = loop.elapsed_ms();
  r.timings.total_ms = total.elapsed_ms();
  return r;
}

RunReport fast_greedy(const KernelOracle& oracle, const GreedyConfig& cfg) {
  detail::check_k(oracle.n(), cfg.k);
  Stopwatch total;
  RunReport r = detail::make_report("fast", oracle, cfg.k);
  const std::size_t n = oracle.n();
  CholeskyState state(oracle, CholeskyState::DiagInit::Eager);
  r.timings.setup_ms = total.elapsed_ms();

  Stopwatch loop;
  while (state.size() < cfg.k) {
    if (cfg.deadline.expired()) {
      r.timed_out = true;
      break;
    }
    std::size_t best = n;
    double best_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (state.selected(i)) continue;
      const double d = state.pivot(i);
      if (d > best_d) {
        best = i;
        best_d = d;
      }
    }
    if (best_d == 1.0) ++r.boundary_events;
    if (best == n || !pivot_selectable(best_d, cfg)) {
      r.terminated_early = true;
      break;
    }
    state.commit(best);
    if (state.size() == cfg.k) break;
    for (std::size_t i = 0; i < n; ++i) {
      if (!state.selected(i)) state.update_row(i);
    }
  }
  finish(r, state);
  r.timings.greedy_ms = loop.elapsed_ms();
  r.timings.total_ms = total.elapsed_ms();
  return r;
}

RunReport lazy_fast_greedy(const KernelOracle& oracle, const GreedyConfig& cfg) {
  detail::check_k(oracle.n(), cfg.k);
  Stopwatch total;
  RunReport r = detail::make_report("lazyfast", oracle, cfg.k);
  const std::size_t n = oracle.n();
  CholeskyState state(oracle, CholeskyState::DiagInit::Eager);
  std::vector<double> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = state.pivot(i);
  auto q = LazyMaxQueue::build(keys);
  r.timings.setup_ms = total.elapsed_ms();

  Stopwatch loop;
  while (state.size() < cfg.k) {
    if (cfg.deadline.expired()) {
      r.timed_out = true;
      break;
    }
    // The run ends on a fresh winner with d <= 1, never on a stale key, so
    // the terminating step brings its winner's row up to date like Fast does.
    if (!q.top()) {
      r.terminated_early = true;
      break;
    }
    const std::size_t i = q.pop_max().index;
    const double d = state.update_row(i);
    if (!beats(d, i, q.top())) {
      q.push(i, d);
      continue;
    }
    if (d == 1.0) ++r.boundary_events;
    if (!pivot_selectable(d, cfg)) {
      r.terminated_early = true;
      break;
    }
    state.commit(i);
    q.exclude(i);
  }
  finish(r, state);
  r.pq_ops = q.ops();
  r.timings.greedy_ms = loop.elapsed_ms();
  r.timings.total_ms = total.elapsed_ms();
  return r;
}

}  // namespace dppmap
