#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "dppmap/random.hpp"

using namespace dppmap;

TEST_CASE("same seed, same stream") {
  DecisionStream a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform_index(17) == b.uniform_index(17));
    CHECK(a.uniform01() == b.uniform01());
    CHECK(a.normal() == b.normal());
  }
  CHECK(a.draws() == b.draws());
}

TEST_CASE("ranges") {
  DecisionStream s(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = s.uniform_int(3, 7);
    CHECK(v >= 3);
    CHECK(v <= 7);
    seen.insert(v);
    const double u = s.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(seen.size() == 5);
  CHECK_THROWS(s.uniform_index(0));
  CHECK_THROWS(s.uniform_int(5, 4));
}

TEST_CASE("normal draws have roughly unit variance") {
  DecisionStream s(9);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sq / n - 1.0) < 0.05);
}

TEST_CASE("sampling without replacement") {
  DecisionStream s(5);
  std::vector<std::size_t> pool(20);
  std::iota(pool.begin(), pool.end(), 100);
  const auto pick = s.sample_without_replacement(pool, 6);
  CHECK(pick.size() == 6);
  CHECK(std::set<std::size_t>(pick.begin(), pick.end()).size() == 6);
  for (auto v : pick) CHECK((v >= 100 && v < 120));
  CHECK(s.sample_without_replacement(pool, 50) == pool);
}

TEST_CASE("draw log records raw words") {
  DecisionStream s(3, true);
  s.uniform01();
  s.uniform_index(10);
  CHECK(s.log().size() == s.draws());
}
