#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dppmap/dense_matrix.hpp"
#include "dppmap/kernel.hpp"
#include "dppmap/random.hpp"
#include "dppmap/report.hpp"

namespace dppmap {

// L and its inverse, both materialized once and shared by any number of runs.
struct DoubleGreedyKernel {
  DenseMatrix l;
  DenseMatrix l_inv;
  std::string input_kind;
  std::size_t d = 0;
  double product_ms = 0.0;
  double inverse_ms = 0.0;
  // ||L L^-1 - I||_inf
  double inverse_residual = 0.0;

  std::size_t n() const { return l.rows(); }
};

inline constexpr double kInverseTolerance = 1e-8;

// Materializes the oracle's kernel (its scale and shift included) and
// inverts it. Throws SingularKernelError if the factorization fails or the
// inverse misses kInverseTolerance.
DoubleGreedyKernel prepare_double_greedy(const KernelOracle& oracle);

// Items are visited in index order; each step consumes exactly one
// stream.uniform01() draw u and adds item i iff u < a/(a+b), or always when
// a = b = 0.
RunReport fast_double_greedy(const DoubleGreedyKernel& kernel, DecisionStream& stream,
                             const Deadline& deadline = {});

// Same decisions from brute-force log-determinants of L[S] and L[T].
RunReport naive_double_greedy(const DoubleGreedyKernel& kernel, DecisionStream& stream,
                              const Deadline& deadline = {});

// (g(S + i) - g(S), f(comp(S) - i) - f(comp(S))) with f = ln det L[.] and
// g = ln det L^-1[.], both by brute force. The two agree for PD L.
std::pair<double, double> jacobi_gain_check(const DenseMatrix& l,
                                            const std::vector<std::size_t>& subset, std::size_t i);

}  // namespace dppmap
