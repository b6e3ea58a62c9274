#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dppmap/dense_matrix.hpp"
#include "dppmap/kernel.hpp"
#include "dppmap/random.hpp"
#include "dppmap/report.hpp"
#include "dppmap/variants.hpp"

// Brute-force oracles. Nothing here touches the incremental factorization
// code: determinants come from a fresh Cholesky factorization of each
// principal submatrix, with inner products summed in descending order.
namespace dppmap::reference {

// Squared Cholesky pivots at or below this make a submatrix singular.
inline constexpr double kSingularPivot = 1e-14;

// ln det L[S]; 0 for S empty, -inf when singular. Throws std::invalid_argument
// if the submatrix is asymmetric beyond 1e-10.
double log_det(const DenseMatrix& l, std::span<const std::size_t> subset);
double log_det(const KernelOracle& oracle, std::span<const std::size_t> subset,
               std::uint64_t* kernel_evals = nullptr);
// Whole matrix.
double log_det(const DenseMatrix& l);

DenseMatrix principal_submatrix(const KernelOracle& oracle, std::span<const std::size_t> subset,
                                std::uint64_t* kernel_evals = nullptr);

// Lower-triangular C with L = C C^T. Throws SingularKernelError when L is not
// numerically positive definite.
DenseMatrix cholesky_lower(const DenseMatrix& l);

// L^{-1} by Cholesky factor-and-solve; exactly symmetric.
DenseMatrix inverse(const DenseMatrix& l);

struct MapSolution {
  std::vector<std::size_t> set;  // ascending
  double log_det;
};

// Exhaustive search over all subsets (|S| <= k when k is given). Ties go to
// the lexicographically smallest set. Refuses n > 20.
MapSolution exhaustive_map(const KernelOracle& oracle, std::optional<std::size_t> k);

// ln det L[S + i] - ln det L[S] with ln det L[S] computed once.
class GainOracle {
 public:
  explicit GainOracle(const KernelOracle& oracle) : oracle_(&oracle) {}
  void set_base(std::vector<std::size_t> subset);
  const std::vector<std::size_t>& base() const { return base_; }
  double base_log_det() const { return base_log_det_; }
  double gain(std::size_t i);
  std::uint64_t kernel_evals() const { return evals_; }
  std::uint64_t evaluations() const { return evaluations_; }

 private:
  const KernelOracle* oracle_;
  std::vector<std::size_t> base_;
  double base_log_det_ = 0.0;
  std::uint64_t evals_ = 0;
  std::uint64_t evaluations_ = 0;
};

// Unaccelerated versions of the three variant algorithms. They draw from the
// stream exactly as their lazy+fast twins in variants.hpp do.
RunReport naive_random_greedy(const KernelOracle& oracle, const VariantConfig& cfg,
                              DecisionStream& stream);
RunReport naive_stochastic_greedy(const KernelOracle& oracle, const VariantConfig& cfg,
                                  DecisionStream& stream);
RunReport naive_interlace_greedy(const KernelOracle& oracle, const VariantConfig& cfg);

}  // namespace dppmap::reference
