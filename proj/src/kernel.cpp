#include "dppmap/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dppmap {

SparseColumns::SparseColumns(std::size_t rows, std::vector<std::size_t> col_ptr,
                             std::vector<std::uint32_t> row_idx, std::vector<double> values)
    : rows_(rows), col_ptr_(std::move(col_ptr)), row_idx_(std::move(row_idx)),
      values_(std::move(values)) {
  if (col_ptr_.empty() || col_ptr_.front() != 0 || col_ptr_.back() != row_idx_.size() ||
      row_idx_.size() != values_.size()) {
    throw std::invalid_argument("SparseColumns: inconsistent column pointers");
  }
  for (std::size_t c = 0; c + 1 < col_ptr_.size(); ++c) {
    if (col_ptr_[c] > col_ptr_[c + 1]) {
      throw std::invalid_argument("SparseColumns: column pointers not monotone");
    }
    for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) {
      if (row_idx_[p] >= rows_) {
        throw std::invalid_argument("SparseColumns: index out of range in column " +
                                    std::to_string(c));
      }
      if (p > col_ptr_[c] && row_idx_[p] <= row_idx_[p - 1]) {
        throw std::invalid_argument("SparseColumns: indices not strictly increasing in column " +
                                    std::to_string(c));
      }
      if (values_[p] == 0.0) {
        throw std::invalid_argument("SparseColumns: explicit zero in column " +
                                    std::to_string(c));
      }
    }
  }
}

SparseColumns SparseColumns::from_dense(const DenseMatrix& m) {
  std::vector<std::size_t> ptr{0};
  std::vector<std::uint32_t> idx;
  std::vector<double> val;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m(r, c) != 0.0) {
        idx.push_back(static_cast<std::uint32_t>(r));
        val.push_back(m(r, c));
      }
    }
    ptr.push_back(idx.size());
  }
  return SparseColumns(m.rows(), std::move(ptr), std::move(idx), std::move(val));
}

SparseColumns::Column SparseColumns::column(std::size_t c) const {
  const std::size_t begin = col_ptr_[c];
  const std::size_t len = col_ptr_[c + 1] - begin;
  return {{row_idx_.data() + begin, len}, {values_.data() + begin, len}};
}

DenseMatrix SparseColumns::to_dense() const {
  DenseMatrix m(rows_, cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) m(row_idx_[p], c) = values_[p];
  }
  return m;
}

double sparse_dot(SparseColumns::Column a, SparseColumns::Column b) {
  double sum = 0.0;
  std::size_t p = 0, q = 0;
  while (p < a.index.size() && q < b.index.size()) {
    if (a.index[p] < b.index[q]) {
      ++p;
    } else if (b.index[q] < a.index[p]) {
      ++q;
    } else {
      sum += a.value[p] * b.value[q];
      ++p;
      ++q;
    }
  }
  return sum;
}

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::BDense: return "BDense";
    case KernelKind::BSparse: return "BSparse";
    case KernelKind::LDense: return "LDense";
  }
  return "?";
}

namespace {

void check_regularization(double scale, double shift) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("kernel scale must be finite and nonnegative");
  }
  if (!(shift >= 0.0) || !std::isfinite(shift)) {
    throw std::invalid_argument("kernel shift must be finite and nonnegative");
  }
}

}  // namespace

KernelOracle KernelOracle::from_features(const DenseMatrix& b, double scale, double shift) {
  check_regularization(scale, shift);
  KernelOracle k;
  k.kind_ = KernelKind::BDense;
  k.n_ = b.cols();
  k.d_ = b.rows();
  k.scale_ = scale;
  k.shift_ = shift;
  k.dense_ = b.transpose().data();
  return k;
}

KernelOracle KernelOracle::from_features(SparseColumns b, double scale, double shift) {
  check_regularization(scale, shift);
  KernelOracle k;
  k.kind_ = KernelKind::BSparse;
  k.n_ = b.cols();
  k.d_ = b.rows();
  k.scale_ = scale;
  k.shift_ = shift;
  k.sparse_ = std::move(b);
  return k;
}

KernelOracle KernelOracle::from_kernel(DenseMatrix l, double scale, double shift) {
  check_regularization(scale, shift);
  if (!l.square()) throw std::invalid_argument("kernel matrix must be square");
  const std::size_t n = l.rows();
  double largest = 0.0;
  for (double v : l.data()) {
    if (!std::isfinite(v)) throw std::invalid_argument("kernel matrix has non-finite entries");
    largest = std::max(largest, std::abs(v));
  }
  const double tol = 1e-10 * std::max(1.0, largest);
  for (std::size_t i = 0; i < n; ++i) {
    if (l(i, i) < 0.0) {
      throw std::invalid_argument("kernel matrix has a negative diagonal at " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(l(i, j) - l(j, i)) > tol) {
        throw std::invalid_argument("kernel matrix is not symmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
    }
  }
  KernelOracle k;
  k.kind_ = KernelKind::LDense;
  k.n_ = n;
  k.d_ = 0;
  k.scale_ = scale;
  k.shift_ = shift;
  k.dense_ = std::move(l.data());
  return k;
}

EntryCost KernelOracle::entry_cost() const {
  switch (kind_) {
    case KernelKind::BDense: return EntryCost::FeatureDim;
    case KernelKind::BSparse: return EntryCost::Nonzeros;
    case KernelKind::LDense: return EntryCost::Constant;
  }
  return EntryCost::Constant;
}

double KernelOracle::raw(std::size_t i, std::size_t j) const {
  switch (kind_) {
    case KernelKind::BDense: {
      const double* a = dense_.data() + i * d_;
      const double* b = dense_.data() + j * d_;
      double sum = 0.0;
      for (std::size_t t = 0; t < d_; ++t) sum += a[t] * b[t];
      return sum;
    }
    case KernelKind::BSparse:
      return sparse_dot(sparse_.column(i), sparse_.column(j));
    case KernelKind::LDense:
      return i <= j ? dense_[i * n_ + j] : dense_[j * n_ + i];
  }
  return 0.0;
}

double KernelOracle::entry_unchecked(std::size_t i, std::size_t j) const {
  const double v = scale_ * raw(i, j);
  return i == j ? v + shift_ : v;
}

double KernelOracle::entry(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) {
    throw std::out_of_range("kernel entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") out of range for n=" + std::to_string(n_));
  }
  return entry_unchecked(i, j);
}

DenseMatrix KernelOracle::materialize() const {
  DenseMatrix l(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      const double v = entry_unchecked(i, j);
      l(i, j) = v;
      l(j, i) = v;
    }
  }
  return l;
}

}  // namespace dppmap
