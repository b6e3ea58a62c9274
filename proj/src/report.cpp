#include "dppmap/report.hpp"

#include <cmath>

#include "json.hpp"

namespace dppmap {

Deadline Deadline::after_seconds(double seconds) {
  Deadline d;
  if (seconds > 0.0) {
    d.at_ = std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(seconds));
  }
  return d;
}

namespace {

using nlohmann::json;

// JSON has no infinities; -inf objectives are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json numbers(const std::vector<double>& vs) {
  json out = json::array();
  for (double v : vs) out.push_back(number(v));
  return out;
}

json chain_json(const InterlaceChain& c) {
  return json{{"order", c.order},
              {"prefix_size", c.prefix_size},
              {"prefix_objective", numbers(c.prefix_objective)}};
}

}  // namespace

std::string to_json(const RunReport& r, bool with_timings) {
  json j;
  j["algo"] = r.algo;
  j["input_kind"] = r.input_kind;
  j["n"] = r.n;
  j["d"] = r.d;
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["epsilon"] = r.epsilon ? json(*r.epsilon) : json(nullptr);
  j["selection"] = r.selection;
  j["objective_trace"] = numbers(r.objective_trace);
  j["logdet"] = number(r.objective());
  j["U"] = r.offdiag;
  j["kernel_evals"] = r.kernel_evals;
  j["pq_ops"] = r.pq_ops;
  j["terminated_early"] = r.terminated_early;
  j["timed_out"] = r.timed_out;
  j["boundary_events"] = r.boundary_events;
  if (!r.rank_draws.empty()) j["rank_draws"] = r.rank_draws;
  if (r.sample_size) j["sample_size"] = *r.sample_size;
  if (r.algo == "random" || r.algo == "stochastic" || r.algo == "naive-random" ||
      r.algo == "naive-stochastic") {
    j["empty_steps"] = r.empty_steps;
  }
  if (r.interlace) {
    const auto& il = *r.interlace;
    j["interlace"] = json{{"A", chain_json(il.a)},
                          {"B", chain_json(il.b)},
                          {"C", chain_json(il.c)},
                          {"D", chain_json(il.d)},
                          {"second_phase", il.second_phase},
                          {"best_chain", std::string(1, il.best_chain)},
                          {"best_t", il.best_t}};
  }
  if (!r.double_steps.empty()) {
    json steps = json::array();
    for (const auto& s : r.double_steps) {
      steps.push_back(json{{"add_gain", number(s.add_gain)},
                           {"remove_gain", number(s.remove_gain)},
                           {"a", s.a},
                           {"b", s.b},
                           {"draw", s.draw},
                           {"added", s.added}});
    }
    j["double_steps"] = std::move(steps);
  }
  if (with_timings) {
    json t{{"setup_ms", r.timings.setup_ms},
           {"greedy_ms", r.timings.greedy_ms},
           {"total_ms", r.timings.total_ms}};
    if (r.timings.product_ms) t["product_ms"] = *r.timings.product_ms;
    if (r.timings.inverse_ms) t["inverse_ms"] = *r.timings.inverse_ms;
    j["timings"] = std::move(t);
  }
  return j.dump(2);
}

}  // namespace dppmap
