#include "doctest.h"
#include "dppmap/datagen.hpp"
#include "dppmap/kernel.hpp"
#include "oracles.hpp"

using namespace dppmap;

TEST_CASE("dense feature entries are column inner products") {
  const auto eye = KernelOracle::from_features(oracle::matrix({{1, 0}, {0, 1}}));
  CHECK(eye.entry(0, 1) == 0.0);

  const auto b = KernelOracle::from_features(oracle::matrix({{2, 1}, {0, 1}}));
  CHECK(b.entry(0, 1) == 2.0);
  CHECK(b.entry(1, 1) == 2.0);
  CHECK(b.entry(0, 0) == 4.0);
  CHECK(b.kind() == KernelKind::BDense);
  CHECK(b.n() == 2);
  CHECK(b.d() == 2);
}

TEST_CASE("kernel input applies the diagonal shift") {
  const auto l = KernelOracle::from_kernel(oracle::matrix({{4, 2}, {2, 4}}), 1.0, 0.1);
  CHECK(l.entry(0, 0) == doctest::Approx(4.1).epsilon(1e-15));
  CHECK(l.entry(0, 1) == 2.0);
}

TEST_CASE("scale multiplies every entry before the shift") {
  const auto b = oracle::matrix({{1, 2}, {3, 4}});
  const auto o = KernelOracle::from_features(b, 0.9, 0.1);
  CHECK(o.entry(0, 1) == doctest::Approx(0.9 * (1 * 2 + 3 * 4)));
  CHECK(o.entry(1, 1) == doctest::Approx(0.9 * 20 + 0.1));
}

TEST_CASE("sparse dot products") {
  auto col = [](std::vector<std::uint32_t> idx, std::vector<double> val) {
    return std::pair{idx, val};
  };
  auto dot = [](const auto& a, const auto& b) {
    return sparse_dot({a.first, a.second}, {b.first, b.second});
  };
  CHECK(dot(col({}, {}), col({3}, {1.0})) == 0.0);
  CHECK(dot(col({1, 2}, {1, 1}), col({2, 5}, {1, 1})) == 1.0);
  CHECK(dot(col({0, 4}, {2, 3}), col({0, 4}, {2, 3})) == 13.0);
}

TEST_CASE("sparse and dense feature oracles agree exactly") {
  DenseMatrix b = gen_synthetic({12, 7, 3});
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      if ((r + 2 * c) % 3 == 0) b(r, c) = 0.0;
  const auto dense = KernelOracle::from_features(b);
  const auto sparse = KernelOracle::from_features(SparseColumns::from_dense(b));
  CHECK(sparse.kind() == KernelKind::BSparse);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      CHECK(dense.entry(i, j) == sparse.entry(i, j));
      CHECK(dense.entry(i, j) == dense.entry(j, i));
    }
}

TEST_CASE("feature kernels are PSD on small subsets") {
  const auto o = KernelOracle::from_features(gen_synthetic({8, 3, 11}));
  // rank 3: every 4x4 minor is (numerically) zero, every 3x3 positive
  CHECK(oracle::det({{o.entry(0, 0), o.entry(0, 1), o.entry(0, 2)},
                     {o.entry(1, 0), o.entry(1, 1), o.entry(1, 2)},
                     {o.entry(2, 0), o.entry(2, 1), o.entry(2, 2)}}) > 0.0);
  std::vector<std::vector<double>> four(4, std::vector<double>(4));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) four[r][c] = o.entry(r, c);
  CHECK(std::abs(oracle::det(four)) < 1e-8);
}

TEST_CASE("materialize matches entry") {
  const auto o = KernelOracle::from_features(gen_synthetic({6, 4, 1}), 2.0, 0.5);
  const DenseMatrix l = o.materialize();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(l(i, j) == o.entry(i, j));
}

TEST_CASE("kernel validation") {
  CHECK_THROWS(KernelOracle::from_kernel(oracle::matrix({{1, 2}, {3, 1}})));
  CHECK_THROWS(KernelOracle::from_kernel(DenseMatrix(2, 3)));
  CHECK_THROWS(KernelOracle::from_features(DenseMatrix::identity(2), -1.0));
  CHECK_THROWS(KernelOracle::from_kernel(DenseMatrix::identity(2)).entry(0, 2));
  CHECK_THROWS(SparseColumns(2, {0, 1}, {5}, {1.0}));
  CHECK_THROWS(SparseColumns(2, {0, 2}, {1, 0}, {1.0, 1.0}));
}
