#include "dppmap/variants.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dppmap/cholesky.hpp"
#include "dppmap/errors.hpp"
#include "dppmap/pqueue.hpp"
#include "detail.hpp"

namespace dppmap {
namespace {

void require_size(std::size_t n, std::size_t k, std::size_t factor, const char* algo) {
  detail::check_k(n, k);
  if (n < factor * k) {
    throw ContractViolation(std::string(algo) + " needs n >= " + std::to_string(factor) +
                            "k (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
}

LazyMaxQueue queue_of_pivots(const CholeskyState& state) {
  std::vector<double> keys(state.n());
  for (std::size_t i = 0; i < state.n(); ++i) keys[i] = state.pivot(i);
  return LazyMaxQueue::build(keys);
}

}  // namespace

std::size_t stochastic_sample_size(std::size_t n, std::size_t k, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ContractViolation("epsilon must lie in (0, 1)");
  }
  detail::check_k(n, k);
  const double s = std::ceil(static_cast<double>(n) / static_cast<double>(k) *
                             std::log(1.0 / epsilon));
  return s < 1.0 ? 1 : static_cast<std::size_t>(s);
}

void check_random_preconditions(std::size_t n, std::size_t k) {
  require_size(n, k, 2, "RandomGreedy");
}

void check_stochastic_preconditions(std::size_t n, std::size_t k, double epsilon) {
  require_size(n, k, 3, "StochasticGreedy");
  stochastic_sample_size(n, k, epsilon);
}

void check_interlace_preconditions(std::size_t n, std::size_t k) {
  require_size(n, k, 4, "InterlaceGreedy");
}

RunReport random_greedy_lf(const KernelOracle& oracle, const VariantConfig& cfg,
                           DecisionStream& stream) {
  check_random_preconditions(oracle.n(), cfg.k);
  Stopwatch total;
  RunReport r = detail::make_report("random", oracle, cfg.k);
  r.seed = stream.seed();
  CholeskyState state(oracle, CholeskyState::DiagInit::Eager);
  auto q = queue_of_pivots(state);
  r.timings.setup_ms = total.elapsed_ms();

  Stopwatch loop;
  std::vector<std::size_t> m;
  for (std::size_t t = 0; t < cfg.k; ++t) {
    if (cfg.deadline.expired()) {
      r.timed_out = true;
      break;
    }
    const std::uint64_t l = stream.uniform_int(1, cfg.k);
    r.rank_draws.push_back(l);
    m.clear();
    bool committed = false;
    while (m.size() < l && q.top()) {
      const std::size_t i = q.pop_max().index;
      const double d = state.update_row(i);
      if (!beats(d, i, q.top())) {
        q.push(i, d);
        continue;
      }
      // The l-th largest gain is not positive: dummy step. i is dropped for
      // good; its gain can only shrink.
      if (d <= 1.0) {
        if (d == 1.0) ++r.boundary_events;
        break;
      }
      m.push_back(i);
      if (m.size() == l) {
        state.commit(i);
        q.exclude(i);
        committed = true;
      }
    }
    if (!committed) ++r.empty_steps;
    for (std::size_t i : m) {
      if (!state.selected(i)) q.push(i, state.pivot(i));
    }
  }
  r.selection = state.selection();
  r.objective_trace = state.objective_trace();
  r.offdiag = state.offdiag_count();
  r.kernel_evals = state.kernel_evals();
  r.pq_ops = q.ops();
  r.timings.greedy_ms = loop.elapsed_ms();
  r.timings.total_ms = total.elapsed_ms();
  return r;
}

RunReport stochastic_greedy_lf(const KernelOracle& oracle, const VariantConfig& cfg,
                               DecisionStream& stream) {
  check_stochastic_preconditions(oracle.n(), cfg.k, cfg.epsilon);
  Stopwatch total;
  RunReport r = detail::make_report("stochastic", oracle, cfg.k);
  r.seed = stream.seed();
  r.epsilon = cfg.epsilon;
  const std::size_t n = oracle.n();
  const std::size_t s = stochastic_sample_size(n, cfg.k, cfg.epsilon);
  r.sample_size = s;
  CholeskyState state(oracle, CholeskyState::DiagInit::Deferred);
  LazyMaxQueue q(n);
  std::vector<double> keys;
  r.timings.setup_ms = total.elapsed_ms();

  Stopwatch loop;
  for (std::size_t t = 0; t < cfg.k; ++t) {
    if (cfg.deadline.expired()) {
      r.timed_out = true;
      break;
    }
    std::vector<char> taken(n, 0);
    for (std::size_t j : state.selection()) taken[j] = 1;
    const auto pool = detail::unselected(n, taken);
    const auto sample = stream.sample_without_replacement(pool, s);
    keys.clear();
    for (std::size_t i : sample) keys.push_back(state.touch(i));
    q.rebuild(sample, keys);

    std::size_t i = 0;
    double d = 0.0;
    for (;;) {
      i = q.pop_max().index;
      d = state.update_row(i);
      if (beats(d, i, q.top())) break;
      q.push(i, d);
    }
    if (d == 1.0) ++r.boundary_events;
    if (d > 1.0) {
      state.commit(i);
      q.exclude(i);
    } else {
      ++r.empty_steps;
    }
  }
  r.selection = state.selection();
  r.objective_trace = state.objective_trace();
  r.offdiag = state.offdiag_count();
  r.kernel_evals = state.kernel_evals();
  r.pq_ops = q.ops();
  r.timings.greedy_ms = loop.elapsed_ms();
  r.timings.total_ms = total.elapsed_ms();
  return r;
}

namespace {

// One side of an interlaced pair: its own factor state and queue.
struct Side {
  explicit Side(const KernelOracle& oracle)
      : state(oracle, CholeskyState::DiagInit::Eager), q(queue_of_pivots(state)) {}
  CholeskyState state;
  LazyMaxQueue q;
  InterlaceChain chain;
};

// Best remaining item for one side, or nothing when every stale pivot is
// below 1. The returned item is popped and not re-inserted.
std::optional<std::size_t> get_argmax(Side& side) {
  if (side.q.peek_max() < 1.0) return std::nullopt;
  for (;;) {
    const std::size_t i = side.q.pop_max().index;
    const double d = side.state.update_row(i);
    if (beats(d, i, side.q.top())) return i;
    side.q.push(i, d);
  }
}

void record_prefix(Side& side) {
  side.chain.prefix_size.push_back(side.state.size());
  side.chain.prefix_objective.push_back(side.state.objective());
}

struct InterlacedPair {
  InterlaceChain first, second;
  std::uint64_t offdiag[2];
  std::uint64_t kernel_evals = 0;
  std::uint64_t pq_ops = 0;
  std::uint64_t boundary = 0;
  bool timed_out = false;
};

InterlacedPair interlaced_sets(const KernelOracle& oracle, std::size_t k,
                               std::optional<std::size_t> seed_item, const Deadline& deadline) {
  Side sides[2] = {Side(oracle), Side(oracle)};
  InterlacedPair out;
  for (auto& s : sides) record_prefix(s);
  std::size_t t0 = 1;
  if (seed_item) {
    for (auto& s : sides) {
      s.state.commit(*seed_item);
      s.q.exclude(*seed_item);
      record_prefix(s);
    }
    t0 = 2;
  }
  for (std::size_t t = t0; t <= k; ++t) {
    if (deadline.expired()) {
      out.timed_out = true;
      break;
    }
    for (int x = 0; x < 2; ++x) {
      Side& self = sides[x];
      Side& other = sides[1 - x];
      const auto i = get_argmax(self);
      if (i && self.state.pivot(*i) == 1.0) ++out.boundary;
      if (i && self.state.pivot(*i) >= 1.0) {
        self.state.commit(*i);
        self.q.exclude(*i);
        other.q.exclude(*i);
      }
      record_prefix(self);
    }
  }
  for (int x = 0; x < 2; ++x) {
    sides[x].chain.order = sides[x].state.selection();
    out.offdiag[x] = sides[x].state.offdiag_count();
    out.kernel_evals += sides[x].state.kernel_evals();
    out.pq_ops += sides[x].q.ops();
  }
  out.first = std::move(sides[0].chain);
  out.second = std::move(sides[1].chain);
  return out;
}

}  // namespace

RunReport interlace_greedy_lf(const KernelOracle& oracle, const VariantConfig& cfg) {
  check_interlace_preconditions(oracle.n(), cfg.k);
  Stopwatch total;
  RunReport r = detail::make_report("interlace", oracle, cfg.k);
  InterlaceDetail il;

  auto absorb = [&](InterlacedPair& pair, int slot) {
    il.offdiag_per_chain[slot] = pair.offdiag[0];
    il.offdiag_per_chain[slot + 1] = pair.offdiag[1];
    r.offdiag += pair.offdiag[0] + pair.offdiag[1];
    r.kernel_evals += pair.kernel_evals;
    r.pq_ops += pair.pq_ops;
    r.boundary_events += pair.boundary;
    r.timed_out = r.timed_out || pair.timed_out;
  };

  auto ab = interlaced_sets(oracle, cfg.k, std::nullopt, cfg.deadline);
  absorb(ab, 0);
  il.a = std::move(ab.first);
  il.b = std::move(ab.second);
  if (!il.a.order.empty() && !r.timed_out) {
    auto cd = interlaced_sets(oracle, cfg.k, il.a.order.front(), cfg.deadline);
    absorb(cd, 2);
    il.c = std::move(cd.first);
    il.d = std::move(cd.second);
    il.second_phase = true;
  }

  // Earliest maximum wins, so the empty prefix A^(0) holds on ties at 0.
  double best = 0.0;
  const InterlaceChain* chains[4] = {&il.a, &il.b, &il.c, &il.d};
  for (int c = 0; c < 4; ++c) {
    const auto& obj = chains[c]->prefix_objective;
    for (std::size_t t = 0; t < obj.size(); ++t) {
      if (obj[t] > best) {
        best = obj[t];
        il.best_chain = static_cast<char>('A' + c);
        il.best_t = t;
      }
    }
  }
  const InterlaceChain& win = *chains[il.best_chain - 'A'];
  const std::size_t size = win.prefix_size.empty() ? 0 : win.prefix_size[il.best_t];
  r.selection.assign(win.order.begin(), win.order.begin() + size);
  // Objectives after each commit, read off the prefixes where the size grew.
  for (std::size_t t = 1; t < win.prefix_size.size() && r.objective_trace.size() < size; ++t) {
    if (win.prefix_size[t] > win.prefix_size[t - 1]) {
      r.objective_trace.push_back(win.prefix_objective[t]);
    }
  }
  r.interlace = std::move(il);
  r.timings.greedy_ms = r.timings.total_ms = total.elapsed_ms();
  return r;
}

}  // namespace dppmap
