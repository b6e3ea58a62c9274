#pragma once

// Test-side oracles. Deliberately independent of the library's Cholesky code:
// determinants come from Gaussian elimination with partial pivoting.

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "dppmap/dense_matrix.hpp"
#include "dppmap/kernel.hpp"

namespace oracle {

inline double det(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline double log_det(const dppmap::KernelOracle& l, const std::vector<std::size_t>& s) {
  std::vector<std::vector<double>> a(s.size(), std::vector<double>(s.size()));
  for (std::size_t r = 0; r < s.size(); ++r)
    for (std::size_t c = 0; c < s.size(); ++c) a[r][c] = l.entry(s[r], s[c]);
  const double d = det(std::move(a));
  return d > 0 ? std::log(d) : -std::numeric_limits<double>::infinity();
}

inline double log_det(const dppmap::DenseMatrix& l, const std::vector<std::size_t>& s) {
  return log_det(dppmap::KernelOracle::from_kernel(l), s);
}

// Best ln det over all subsets of size <= k.
inline double best_subset(const dppmap::KernelOracle& l, std::size_t k) {
  const std::size_t n = l.n();
  double best = 0.0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (s.size() <= k) best = std::max(best, log_det(l, s));
  }
  return best;
}

inline dppmap::DenseMatrix matrix(std::vector<std::vector<double>> rows) {
  dppmap::DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace oracle
