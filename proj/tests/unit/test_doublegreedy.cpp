#include <cmath>

#include "doctest.h"
#include "dppmap/datagen.hpp"
#include "dppmap/doublegreedy.hpp"
#include "dppmap/errors.hpp"
#include "oracles.hpp"

using namespace dppmap;

TEST_CASE("hand-traced 2x2 run adds both items") {
  const auto l = KernelOracle::from_kernel(oracle::matrix({{2, 1}, {1, 2}}));
  const auto kernel = prepare_double_greedy(l);
  for (int fast = 0; fast < 2; ++fast) {
    DecisionStream s(1);
    const auto r = fast ? fast_double_greedy(kernel, s) : naive_double_greedy(kernel, s);
    CAPTURE(r.algo);
    REQUIRE(r.double_steps.size() == 2);
    CHECK(r.double_steps[0].a == doctest::Approx(std::log(2.0)));
    CHECK(r.double_steps[0].b == 0.0);
    CHECK(r.double_steps[0].remove_gain == doctest::Approx(std::log(2.0) - std::log(3.0)));
    CHECK(r.double_steps[1].a == doctest::Approx(std::log(1.5)));
    CHECK(r.double_steps[1].b == 0.0);
    CHECK(r.selection == std::vector<std::size_t>{0, 1});
    CHECK(r.objective() == doctest::Approx(std::log(3.0)));
  }
}

TEST_CASE("a + b = 0 adds the item") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(3));
  const auto kernel = prepare_double_greedy(l);
  DecisionStream s(3);
  const auto r = fast_double_greedy(kernel, s);
  CHECK(r.selection == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("fast and naive agree under shared seeds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 3 + seed % 15;
    const auto l = KernelOracle::from_features(gen_synthetic({n, 1 + seed % n, seed}), 0.9, 0.1);
    const auto kernel = prepare_double_greedy(l);
    DecisionStream a(seed), b(seed);
    const auto fast = fast_double_greedy(kernel, a);
    const auto naive = naive_double_greedy(kernel, b);
    CHECK(fast.selection == naive.selection);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(fast.double_steps[i].add_gain ==
            doctest::Approx(naive.double_steps[i].add_gain).epsilon(1e-9));
      CHECK(fast.double_steps[i].remove_gain ==
            doctest::Approx(naive.double_steps[i].remove_gain).epsilon(1e-9));
      CHECK(fast.double_steps[i].draw == naive.double_steps[i].draw);
    }
    CHECK(fast.objective() == doctest::Approx(oracle::log_det(l, fast.selection)).epsilon(1e-9));
  }
}

TEST_CASE("inverse residual and singular kernels") {
  const auto l = KernelOracle::from_kernel(oracle::matrix({{2, 1}, {1, 2}}));
  const auto kernel = prepare_double_greedy(l);
  CHECK(kernel.inverse_residual <= 1e-12);
  CHECK(kernel.l_inv(0, 1) == doctest::Approx(-1.0 / 3));
  // rank one: B has a single feature
  const auto rank1 = KernelOracle::from_features(oracle::matrix({{1, 2, 3}}));
  CHECK_THROWS_AS(prepare_double_greedy(rank1), SingularKernelError);
}

TEST_CASE("jacobi gain check against direct determinants") {
  const DenseMatrix l =
      KernelOracle::from_features(gen_synthetic({6, 6, 8}), 1.0, 0.1).materialize();
  const std::vector<std::size_t> s{1, 4};
  const auto [g, f] = jacobi_gain_check(l, s, 2);
  // complement of S is {0,2,3,5}; dropping 2 leaves {0,3,5}
  CHECK(f == doctest::Approx(oracle::log_det(l, {0, 3, 5}) - oracle::log_det(l, {0, 2, 3, 5})));
  CHECK(g == doctest::Approx(f).epsilon(1e-9));
  CHECK_THROWS(jacobi_gain_check(l, s, 1));
  CHECK_THROWS(jacobi_gain_check(l, s, 6));
}
