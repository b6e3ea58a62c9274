#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dppmap/dense_matrix.hpp"

namespace dppmap {

// Compressed sparse columns. Column c spans [col_ptr[c], col_ptr[c+1]) of
// row_idx/values; row indices are strictly increasing inside a column and no
// stored value is zero.
class SparseColumns {
 public:
  struct Column {
    std::span<const std::uint32_t> index;
    std::span<const double> value;
  };

  SparseColumns() : col_ptr_{0} {}
  SparseColumns(std::size_t rows, std::vector<std::size_t> col_ptr,
                std::vector<std::uint32_t> row_idx, std::vector<double> values);

  // Drops exact zeros of a dense matrix (rows = feature dim, cols = items).
  static SparseColumns from_dense(const DenseMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return col_ptr_.size() - 1; }
  std::size_t nnz() const { return values_.size(); }

  Column column(std::size_t c) const;
  DenseMatrix to_dense() const;

  const std::vector<std::size_t>& col_ptr() const { return col_ptr_; }
  const std::vector<std::uint32_t>& row_idx() const { return row_idx_; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const SparseColumns&) const = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::uint32_t> row_idx_;
  std::vector<double> values_;
};

// Merge over sorted indices, ascending, O(nnz(a) + nnz(b)).
double sparse_dot(SparseColumns::Column a, SparseColumns::Column b);

enum class KernelKind { BDense, BSparse, LDense };
enum class EntryCost { FeatureDim, Nonzeros, Constant };

std::string_view to_string(KernelKind kind);

// Read-only access to L[i,j] under feature input (L = B^T B, computed per
// entry) or kernel input (L stored). Reported entries are
//   scale * L[i,j] + shift * [i == j].
// Immutable after construction, so concurrent readers are fine.
class KernelOracle {
 public:
  // B is d x n: one column per item.
  static KernelOracle from_features(const DenseMatrix& b, double scale = 1.0, double shift = 0.0);
  static KernelOracle from_features(SparseColumns b, double scale = 1.0, double shift = 0.0);
  // L must be square, symmetric within 1e-10 (relative to its largest entry)
  // and have a nonnegative diagonal. Only the upper triangle is read.
  static KernelOracle from_kernel(DenseMatrix l, double scale = 1.0, double shift = 0.0);

  KernelKind kind() const { return kind_; }
  EntryCost entry_cost() const;
  std::size_t n() const { return n_; }
  // Feature dimension; 0 for kernel input.
  std::size_t d() const { return d_; }
  double scale() const { return scale_; }
  double shift() const { return shift_; }

  // Throws std::out_of_range on a bad index.
  double entry(std::size_t i, std::size_t j) const;
  double diag(std::size_t i) const { return entry(i, i); }

  // Unchecked variant for inner loops that already validated indices.
  double entry_unchecked(std::size_t i, std::size_t j) const;

  // Copies the full n x n kernel (scale/shift applied). The upper triangle is
  // computed and mirrored so the copy is exactly symmetric.
  DenseMatrix materialize() const;

 private:
  KernelOracle() = default;
  double raw(std::size_t i, std::size_t j) const;

  KernelKind kind_ = KernelKind::LDense;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  double scale_ = 1.0;
  double shift_ = 0.0;
  // BDense: n x d, item columns stored contiguously. LDense: n x n.
  std::vector<double> dense_;
  SparseColumns sparse_;
};

}  // namespace dppmap
