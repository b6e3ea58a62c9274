#include <cmath>

#include "doctest.h"
#include "dppmap/cholesky.hpp"
#include "dppmap/datagen.hpp"
#include "dppmap/errors.hpp"
#include "oracles.hpp"

using namespace dppmap;

namespace {
const auto kTwoByTwo = oracle::matrix({{4, 2}, {2, 4}});
}

TEST_CASE("update_row on the 2x2 example") {
  const auto l = KernelOracle::from_kernel(kTwoByTwo);
  CholeskyState st(l);
  CHECK(st.pivot(0) == 2.0);
  st.commit(0);
  CHECK(st.objective() == doctest::Approx(std::log(4.0)));
  const double d = st.update_row(1);
  REQUIRE(st.row(1).size() == 1);
  CHECK(st.row(1)[0] == 1.0);
  CHECK(d == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(st.marginal_gain(1) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(st.offdiag_count() == 1);
  st.commit(1);
  REQUIRE(st.objective_trace().size() == 2);
  CHECK(st.objective_trace()[1] == doctest::Approx(oracle::log_det(kTwoByTwo, {0, 1})));
  CHECK(st.objective() == doctest::Approx(std::log(12.0)));
}

TEST_CASE("orthogonal items keep unit pivots") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(5));
  CholeskyState st(l);
  st.commit(0);
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(st.update_row(i) == 1.0);
    CHECK(st.row(i)[0] == 0.0);
    CHECK(st.marginal_gain(i) == 0.0);
  }
}

TEST_CASE("fresh rows are a no-op") {
  const auto l = KernelOracle::from_kernel(kTwoByTwo);
  CholeskyState st(l);
  st.commit(0);
  const double d = st.update_row(1);
  const auto u = st.offdiag_count();
  const auto evals = st.kernel_evals();
  CHECK(st.update_row(1) == d);
  CHECK(st.offdiag_count() == u);
  CHECK(st.kernel_evals() == evals);
}

TEST_CASE("linearly dependent item has gain -inf and cannot be committed") {
  const auto l = KernelOracle::from_features(oracle::matrix({{1, 2}, {0, 0}}));
  CholeskyState st(l);
  st.commit(0);
  CHECK(st.update_row(1) == 0.0);
  CHECK(std::isinf(st.marginal_gain(1)));
  CHECK(st.marginal_gain(1) < 0);
  CHECK_THROWS_AS(st.commit(1), SingularPivotError);
}

TEST_CASE("contract violations") {
  const auto l = KernelOracle::from_kernel(kTwoByTwo);
  CholeskyState st(l);
  st.commit(0);
  CHECK_THROWS_AS(st.marginal_gain(1), ContractViolation);
  CHECK_THROWS_AS(st.commit(1), ContractViolation);
  CHECK_THROWS_AS(st.commit(0), ContractViolation);
  CHECK_THROWS_AS(st.update_row(0), ContractViolation);
}

TEST_CASE("deferred diagonals are read on first touch") {
  const auto l = KernelOracle::from_kernel(kTwoByTwo);
  CholeskyState st(l, CholeskyState::DiagInit::Deferred);
  CHECK_FALSE(st.initialized(1));
  CHECK(st.kernel_evals() == 0);
  CHECK(st.touch(1) == 2.0);
  CHECK(st.initialized(1));
  CHECK(st.kernel_evals() == 1);
}

TEST_CASE("rows match brute-force gains on a random instance") {
  const auto l = KernelOracle::from_features(gen_synthetic({9, 9, 4}));
  CholeskyState st(l);
  std::vector<std::size_t> s;
  for (std::size_t step = 0; step < 5; ++step) {
    const double base = oracle::log_det(l, s);
    for (std::size_t i = 0; i < 9; ++i) {
      if (st.selected(i)) continue;
      st.update_row(i);
      auto with = s;
      with.push_back(i);
      CHECK(st.marginal_gain(i) == doctest::Approx(oracle::log_det(l, with) - base).epsilon(1e-9));
      double pyth = st.pivot(i) * st.pivot(i);
      for (double v : st.row(i)) pyth += v * v;
      CHECK(pyth == doctest::Approx(l.entry(i, i)).epsilon(1e-12));
    }
    // commit the item two positions after the last pick, wrapping
    std::size_t pick = (s.empty() ? 0 : s.back() + 2) % 9;
    while (st.selected(pick)) pick = (pick + 1) % 9;
    st.commit(pick);
    s.push_back(pick);
    CHECK(st.objective() == doctest::Approx(oracle::log_det(l, s)).epsilon(1e-10));
  }
  CHECK(st.selection() == s);
}
