#include "dppmap/doublegreedy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dppmap/cholesky.hpp"
#include "dppmap/errors.hpp"
#include "dppmap/reference.hpp"

namespace dppmap {
namespace {

bool decide(double a, double b, double u) {
  if (a + b == 0.0) return true;
  return u < a / (a + b);
}

RunReport base_report(const char* algo, const DoubleGreedyKernel& kernel,
                      const DecisionStream& stream) {
  RunReport r;
  r.algo = algo;
  r.input_kind = kernel.input_kind;
  r.n = kernel.n();
  r.d = kernel.d;
  r.k = kernel.n();
  r.seed = stream.seed();
  r.timings.product_ms = kernel.product_ms;
  r.timings.inverse_ms = kernel.inverse_ms;
  return r;
}

}  // namespace

DoubleGreedyKernel prepare_double_greedy(const KernelOracle& oracle) {
  DoubleGreedyKernel k;
  k.input_kind = oracle.kind() == KernelKind::LDense ? "L" : "B";
  k.d = oracle.d();
  Stopwatch product;
  k.l = oracle.materialize();
  k.product_ms = product.elapsed_ms();
  Stopwatch inverse;
  k.l_inv = reference::inverse(k.l);
  k.inverse_ms = inverse.elapsed_ms();
  k.inverse_residual =
      inf_norm_diff(multiply(k.l, k.l_inv), DenseMatrix::identity(k.l.rows()));
  if (!(k.inverse_residual <= kInverseTolerance)) {
    throw SingularKernelError("||L L^-1 - I|| = " +
                              std::to_string(k.inverse_residual));
  }
  return k;
}

RunReport fast_double_greedy(const DoubleGreedyKernel& kernel, DecisionStream& stream,
                             const Deadline& deadline) {
  Stopwatch total;
  RunReport r = base_report("double-fast", kernel, stream);
  const auto l = KernelOracle::from_kernel(kernel.l);
  const auto l_inv = KernelOracle::from_kernel(kernel.l_inv);
  // V tracks S over L; W tracks [i] \ S over L^-1.
  CholeskyState v(l, CholeskyState::DiagInit::Eager);
  CholeskyState w(l_inv, CholeskyState::DiagInit::Eager);
  r.timings.setup_ms = total.elapsed_ms();

  Stopwatch loop;
  for (std::size_t i = 0; i < kernel.n(); ++i) {
    if (deadline.expired()) {
      r.timed_out = true;
      break;
    }
    if (v.size() + w.size() != i) throw ContractViolation("double greedy: rows out of order");
    const double d = v.update_row(i);
    const double e = w.update_row(i);
    DoubleGreedyStep step;
    step.add_gain = v.marginal_gain(i);
    step.remove_gain = w.marginal_gain(i);
    step.a = std::max(2.0 * std::log(d), 0.0);
    step.b = std::max(2.0 * std::log(e), 0.0);
    if (step.a == 0.0 && step.b == 0.0 && (d == 1.0 || e == 1.0)) ++r.boundary_events;
    step.draw = stream.uniform01();
    step.added = decide(step.a, step.b, step.draw);
    if (step.added) {
      v.commit(i);
    } else {
      w.commit(i);
    }
    r.double_steps.push_back(step);
  }
  r.selection = v.selection();
  r.objective_trace = v.objective_trace();
  r.offdiag = v.offdiag_count() + w.offdiag_count();
  r.kernel_evals = v.kernel_evals() + w.kernel_evals();
  r.timings.greedy_ms = loop.elapsed_ms();
  r.timings.total_ms = kernel.product_ms + kernel.inverse_ms + total.elapsed_ms();
  return r;
}

RunReport naive_double_greedy(const DoubleGreedyKernel& kernel, DecisionStream& stream,
                              const Deadline& deadline) {
  Stopwatch total;
  RunReport r = base_report("double-naive", kernel, stream);
  const std::size_t n = kernel.n();
  std::vector<std::size_t> s;
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  double f_s = 0.0;
  double f_t = reference::log_det(kernel.l, t);

  Stopwatch loop;
  std::vector<std::size_t> scratch;
  for (std::size_t i = 0; i < n; ++i) {
    if (deadline.expired()) {
      r.timed_out = true;
      break;
    }
    scratch = s;
    scratch.push_back(i);
    const double f_s_plus = reference::log_det(kernel.l, scratch);
    scratch.clear();
    for (std::size_t j : t)
      if (j != i) scratch.push_back(j);
    const double f_t_minus = reference::log_det(kernel.l, scratch);
    if (!std::isfinite(f_s_plus) || !std::isfinite(f_t_minus) || !std::isfinite(f_t)) {
      throw SingularKernelError("singular principal minor at item " +
                                std::to_string(i));
    }
    DoubleGreedyStep step;
    step.add_gain = f_s_plus - f_s;
    step.remove_gain = f_t_minus - f_t;
    step.a = std::max(step.add_gain, 0.0);
    step.b = std::max(step.remove_gain, 0.0);
    if (step.a == 0.0 && step.b == 0.0 && (step.add_gain == 0.0 || step.remove_gain == 0.0)) {
      ++r.boundary_events;
    }
    step.draw = stream.uniform01();
    step.added = decide(step.a, step.b, step.draw);
    if (step.added) {
      s.push_back(i);
      f_s = f_s_plus;
      r.objective_trace.push_back(f_s);
    } else {
      t = std::move(scratch);
      scratch = {};
      f_t = f_t_minus;
    }
    r.double_steps.push_back(step);
  }
  r.selection = std::move(s);
  r.timings.greedy_ms = loop.elapsed_ms();
  r.timings.total_ms = kernel.product_ms + kernel.inverse_ms + total.elapsed_ms();
  return r;
}

std::pair<double, double> jacobi_gain_check(const DenseMatrix& l,
                                            const std::vector<std::size_t>& subset,
                                            std::size_t i) {
  const std::size_t n = l.rows();
  if (i >= n) throw std::out_of_range("jacobi_gain_check: index out of range");
  if (std::find(subset.begin(), subset.end(), i) != subset.end()) {
    throw std::invalid_argument("jacobi_gain_check: i must not be in S");
  }
  const DenseMatrix l_inv = reference::inverse(l);
  std::vector<std::size_t> with = subset;
  with.push_back(i);
  const double g_gain = reference::log_det(l_inv, with) - reference::log_det(l_inv, subset);

  std::vector<char> in_s(n, 0);
  for (std::size_t j : subset) in_s[j] = 1;
  std::vector<std::size_t> comp, comp_minus;
  for (std::size_t j = 0; j < n; ++j) {
    if (in_s[j]) continue;
    comp.push_back(j);
    if (j != i) comp_minus.push_back(j);
  }
  const double f_diff = reference::log_det(l, comp_minus) - reference::log_det(l, comp);
  return {g_gain, f_diff};
}

}  // namespace dppmap
