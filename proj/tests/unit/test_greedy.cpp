#include <chrono>
#include <cmath>
#include <thread>

#include "doctest.h"
#include "dppmap/datagen.hpp"
#include "dppmap/greedy.hpp"
#include "oracles.hpp"

using namespace dppmap;

namespace {

std::vector<RunReport> all(const KernelOracle& l, std::size_t k) {
  const GreedyConfig cfg{k};
  return {naive_greedy(l, cfg), lazy_greedy(l, cfg), fast_greedy(l, cfg),
          lazy_fast_greedy(l, cfg)};
}

using Sel = std::vector<std::size_t>;

}  // namespace

TEST_CASE("2I picks by index") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(3, 2.0));
  for (const auto& r : all(l, 2)) {
    CAPTURE(r.algo);
    CHECK(r.selection == Sel{0, 1});
    CHECK(r.objective() == doctest::Approx(2 * std::log(2.0)));
    CHECK_FALSE(r.terminated_early);
  }
}

TEST_CASE("I terminates immediately") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(3));
  for (const auto& r : all(l, 2)) {
    CAPTURE(r.algo);
    CHECK(r.selection.empty());
    CHECK(r.terminated_early);
    CHECK(r.boundary_events == 1);
    CHECK(r.objective() == 0.0);
  }
}

TEST_CASE("2x2 example") {
  const auto l = KernelOracle::from_kernel(oracle::matrix({{4, 2}, {2, 4}}));
  for (const auto& r : all(l, 2)) {
    CAPTURE(r.algo);
    CHECK(r.selection == Sel{0, 1});
    CHECK(r.objective() == doctest::Approx(std::log(12.0)));
  }
  CHECK(fast_greedy(l, {2}).offdiag == 1);
  CHECK(lazy_fast_greedy(l, {2}).offdiag == 1);
}

TEST_CASE("fast greedy off-diagonal count") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(3, 2.0));
  const auto r = fast_greedy(l, {3});
  CHECK(r.selection == Sel{0, 1, 2});
  CHECK(r.offdiag == 3);
  CHECK(fast_greedy_offdiag(3, 3) == 3);
  CHECK(fast_greedy_offdiag(10, 1) == 0);
  CHECK(fast_greedy_offdiag(10, 0) == 0);
  // (k-1)(n-k/2) for even values
  CHECK(fast_greedy_offdiag(2000, 100) == 99 * 1950);
}

TEST_CASE("k = 1 takes the largest diagonal without updates") {
  const auto l = KernelOracle::from_kernel(oracle::matrix({{1, 0, 0}, {0, 3, 1}, {0, 1, 2}}));
  for (const auto& r : all(l, 1)) {
    CAPTURE(r.algo);
    CHECK(r.selection == Sel{1});
    CHECK(r.offdiag == 0);
  }
}

TEST_CASE("lazyfast on 2I computes only zero off-diagonals, k(k-1)/2 of them") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(7, 2.0));
  const auto r = lazy_fast_greedy(l, {5});
  CHECK(r.selection == Sel{0, 1, 2, 3, 4});
  CHECK(r.offdiag == 10);
}

TEST_CASE("the four algorithms agree on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 5 + seed % 12;
    const auto l = KernelOracle::from_features(gen_synthetic({n, n, seed}));
    const std::size_t k = 1 + seed % n;
    const auto runs = all(l, k);
    for (const auto& r : runs) {
      CAPTURE(r.algo);
      CHECK(r.selection == runs[0].selection);
      CHECK(r.objective() ==
            doctest::Approx(oracle::log_det(l, r.selection)).epsilon(1e-9));
    }
    CHECK(runs[3].offdiag <= runs[2].offdiag);
  }
}

TEST_CASE("early stop on a fresh winner keeps lazyfast inside the band") {
  // diag(4,1,1): item 0, then every remaining gain is 0
  DenseMatrix m = DenseMatrix::identity(3);
  m(0, 0) = 4;
  const auto l = KernelOracle::from_kernel(m);
  const auto r = lazy_fast_greedy(l, {2});
  CHECK(r.selection == Sel{0});
  CHECK(r.terminated_early);
  CHECK(r.offdiag >= 1);  // t = 2 executed steps
  CHECK(r.offdiag <= fast_greedy_offdiag(3, 2));
  CHECK(fast_greedy(l, {2}).offdiag == fast_greedy_offdiag(3, 2));
}

TEST_CASE("stop_on_nonpositive = false keeps selecting") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(4, 0.5));
  GreedyConfig cfg{3};
  cfg.stop_on_nonpositive = false;
  for (auto* f : {&naive_greedy, &lazy_greedy, &fast_greedy, &lazy_fast_greedy}) {
    const auto r = f(l, cfg);
    CHECK(r.selection == Sel{0, 1, 2});
    CHECK(r.objective() == doctest::Approx(3 * std::log(0.5)));
  }
}

TEST_CASE("a non-positive timeout means no deadline") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(5, 2.0));
  GreedyConfig cfg{3};
  cfg.deadline = Deadline::after_seconds(0.0);
  CHECK_FALSE(cfg.deadline.set());
  CHECK(lazy_fast_greedy(l, cfg).selection.size() == 3);
}

TEST_CASE("k outside [1, n] is rejected") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(3));
  CHECK_THROWS(fast_greedy(l, {0}));
  CHECK_THROWS(lazy_fast_greedy(l, {4}));
}

TEST_CASE("an expired deadline returns a partial report") {
  const auto l = KernelOracle::from_kernel(DenseMatrix::identity(5, 2.0));
  GreedyConfig cfg{3};
  cfg.deadline = Deadline::after_seconds(1e-9);
  std::this_thread::sleep_for(std::chrono::milliseconds(1));
  const auto r = lazy_fast_greedy(l, cfg);
  CHECK(r.timed_out);
  CHECK(r.selection.empty());
}
