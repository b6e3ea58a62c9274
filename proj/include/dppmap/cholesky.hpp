#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dppmap/kernel.hpp"

namespace dppmap {

// Pivots at or below this are refused as divisors and as commits.
inline constexpr double kPivotFloor = 1e-12;

// Partially computed Cholesky factor of L restricted to a growing selection
// S = (j_1, j_2, ...). Row i of V holds V[i, j_1..j_{u_i}] contiguously and is
// extended in place; d_i is the current pivot for item i, so that
//   d_i^2 + sum_t V[i, j_t]^2 = L[i, i]
// and, once u_i = |S|, 2 ln d_i = ln det L[S + i] - ln det L[S].
//
// Rows are independent given the committed prefix: a row only ever reads its
// own scalars and the (frozen) rows of selected items, so rows may be brought
// up to date in any order and produce the same bits.
//
// Not thread-safe; one state per thread.
class CholeskyState {
 public:
  enum class DiagInit {
    Eager,     // d_i = sqrt(L[i,i]) for all i at construction
    Deferred,  // computed on first touch of row i
  };

  explicit CholeskyState(const KernelOracle& oracle, DiagInit init = DiagInit::Eager);

  std::size_t n() const { return d_.size(); }
  const KernelOracle& oracle() const { return *oracle_; }

  // Brings row i up to date with the current selection and returns d_i.
  // Computes V[i, j_t] for t = u_i+1..|S| and increments the off-diagonal
  // counter once per computed entry. Throws ContractViolation if i is
  // selected, SingularPivotError if a stored pivot is below kPivotFloor.
  double update_row(std::size_t i);

  // 2 ln d_i (-inf for d_i = 0). Row must be up to date.
  double marginal_gain(std::size_t i) const;

  // Appends i to the selection, freezing d_i as its pivot. Returns the new
  // selection size. Row must be up to date and d_i > kPivotFloor.
  std::size_t commit(std::size_t i);

  // Current pivot; initializes a deferred diagonal.
  double touch(std::size_t i);
  // Current pivot without side effects; +inf for an untouched deferred row.
  double pivot(std::size_t i) const;
  bool initialized(std::size_t i) const { return init_[i] != 0; }
  bool fresh(std::size_t i) const { return stamp_[i] == selection_.size(); }
  bool selected(std::size_t i) const { return selected_[i] != 0; }
  std::size_t stamp(std::size_t i) const { return stamp_[i]; }
  std::span<const double> row(std::size_t i) const { return rows_[i]; }

  const std::vector<std::size_t>& selection() const { return selection_; }
  std::size_t size() const { return selection_.size(); }
  // Pivot of j_t frozen at its commit.
  const std::vector<double>& pivot_log() const { return pivot_log_; }
  // ln det L[S^(t)] for t = 1..|S|, accumulated from pivot_log.
  const std::vector<double>& objective_trace() const { return objective_trace_; }
  double objective() const { return objective_trace_.empty() ? 0.0 : objective_trace_.back(); }

  // Off-diagonal entries of V computed so far (the work measure U).
  std::uint64_t offdiag_count() const { return offdiag_count_; }
  std::uint64_t kernel_evals() const { return kernel_evals_; }

 private:
  const KernelOracle* oracle_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> d_;
  std::vector<std::size_t> stamp_;
  std::vector<char> init_;
  std::vector<char> selected_;
  std::vector<std::size_t> selection_;
  std::vector<double> pivot_log_;
  std::vector<double> objective_trace_;
  std::uint64_t offdiag_count_ = 0;
  std::uint64_t kernel_evals_ = 0;
};

}  // namespace dppmap
