#include "dppmap/cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dppmap/errors.hpp"

namespace dppmap {

CholeskyState::CholeskyState(const KernelOracle& oracle, DiagInit init)
    : oracle_(&oracle),
      rows_(oracle.n()),
      d_(oracle.n(), std::numeric_limits<double>::infinity()),
      stamp_(oracle.n(), 0),
      init_(oracle.n(), 0),
      selected_(oracle.n(), 0) {
  if (init == DiagInit::Eager) {
    for (std::size_t i = 0; i < n(); ++i) touch(i);
  }
}

double CholeskyState::touch(std::size_t i) {
  if (i >= n()) throw std::out_of_range("row " + std::to_string(i) + " out of range");
  if (!init_[i]) {
    ++kernel_evals_;
    d_[i] = std::sqrt(std::max(oracle_->entry_unchecked(i, i), 0.0));
    init_[i] = 1;
  }
  return d_[i];
}

double CholeskyState::pivot(std::size_t i) const { return d_[i]; }

double CholeskyState::update_row(std::size_t i) {
  touch(i);
  if (selected_[i]) {
    throw ContractViolation("update_row on selected row " + std::to_string(i));
  }
  const std::size_t target = selection_.size();
  std::size_t t = stamp_[i];
  if (t == target) return d_[i];

  auto& vi = rows_[i];
  vi.reserve(target);
  double di = d_[i];
  for (; t < target; ++t) {
    const std::size_t jt = selection_[t];
    const double pivot_jt = pivot_log_[t];
    if (pivot_jt < kPivotFloor) {
      throw SingularPivotError("stored pivot of item " + std::to_string(jt));
    }
    const auto& vj = rows_[jt];
    // vi and vj both hold exactly t leading scalars here.
    double dot = 0.0;
    for (std::size_t s = 0; s < t; ++s) dot += vi[s] * vj[s];
    ++kernel_evals_;
    const double v = (oracle_->entry_unchecked(i, jt) - dot) / pivot_jt;
    vi.push_back(v);
    ++offdiag_count_;
    di = std::sqrt(std::max(di * di - v * v, 0.0));
  }
  d_[i] = di;
  stamp_[i] = target;
  return di;
}

double CholeskyState::marginal_gain(std::size_t i) const {
  if (i >= n()) throw std::out_of_range("row " + std::to_string(i) + " out of range");
  if (!init_[i] || !fresh(i)) {
    throw ContractViolation("marginal_gain on stale row " + std::to_string(i));
  }
  if (d_[i] == 0.0) return -std::numeric_limits<double>::infinity();
  return 2.0 * std::log(d_[i]);
}

std::size_t CholeskyState::commit(std::size_t i) {
  if (i >= n()) throw std::out_of_range("row " + std::to_string(i) + " out of range");
  if (selected_[i]) throw ContractViolation("item " + std::to_string(i) + " already selected");
  if (!init_[i] || !fresh(i)) {
    throw ContractViolation("commit of stale row " + std::to_string(i));
  }
  if (!(d_[i] > kPivotFloor)) {
    throw SingularPivotError("commit of item " + std::to_string(i));
  }
  selected_[i] = 1;
  selection_.push_back(i);
  pivot_log_.push_back(d_[i]);
  objective_trace_.push_back(objective() + 2.0 * std::log(d_[i]));
  return selection_.size();
}

}  // namespace dppmap
