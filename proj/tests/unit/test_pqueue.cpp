#include <map>

#include "doctest.h"
#include "dppmap/errors.hpp"
#include "dppmap/pqueue.hpp"
#include "dppmap/random.hpp"

using namespace dppmap;

TEST_CASE("ties go to the smaller index") {
  auto q = LazyMaxQueue::build(std::vector<double>{2, 2});
  const auto e = q.pop_max();
  CHECK(e.index == 0);
  CHECK(e.key == 2.0);
}

TEST_CASE("a push invalidates the older entry") {
  LazyMaxQueue q(2);
  q.push(1, 5);
  q.push(1, 3);
  const auto e = q.pop_max();
  CHECK(e.index == 1);
  CHECK(e.key == 3.0);
  CHECK(q.empty());
}

TEST_CASE("excluded indices are skipped") {
  auto q = LazyMaxQueue::build(std::vector<double>{1, 4, 2});
  q.exclude(1);
  const auto e = q.pop_max();
  CHECK(e.index == 2);
  CHECK(e.key == 2.0);
  CHECK_THROWS_AS(q.push(1, 9), ContractViolation);
}

TEST_CASE("empty queue") {
  LazyMaxQueue q(3);
  CHECK_FALSE(q.top().has_value());
  CHECK_THROWS_AS(q.pop_max(), EmptyQueueError);
  CHECK(beats(0.0, 0, q.top()));
}

TEST_CASE("beats follows (key desc, index asc)") {
  const LazyMaxQueue::Entry best{2.0, 3};
  CHECK(beats(2.5, 9, best));
  CHECK(beats(2.0, 1, best));
  CHECK_FALSE(beats(2.0, 3, best));
  CHECK_FALSE(beats(2.0, 4, best));
  CHECK_FALSE(beats(1.0, 0, best));
}

TEST_CASE("rebuild replaces the contents") {
  auto q = LazyMaxQueue::build(std::vector<double>{9, 9, 9, 9});
  q.rebuild(std::vector<std::size_t>{3, 1}, std::vector<double>{1, 2});
  CHECK(q.pop_max().index == 1);
  CHECK(q.pop_max().index == 3);
  CHECK(q.empty());
}

TEST_CASE("differential against a linear scan") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DecisionStream rng(seed);
    const std::size_t n = 1 + rng.uniform_index(30);
    LazyMaxQueue q(n);
    std::map<std::size_t, double> live;
    std::vector<char> gone(n, 0);
    for (int op = 0; op < 400; ++op) {
      const auto kind = rng.uniform_index(4);
      const std::size_t i = rng.uniform_index(n);
      if (kind <= 1 && !gone[i]) {
        const double key = static_cast<double>(rng.uniform_index(8));  // many ties
        q.push(i, key);
        live[i] = key;
      } else if (kind == 2) {
        q.exclude(i);
        gone[i] = 1;
        live.erase(i);
      } else {
        std::optional<std::pair<std::size_t, double>> best;
        for (const auto& [idx, key] : live)
          if (!best || key > best->second) best = std::pair{idx, key};
        if (!best) {
          CHECK_FALSE(q.top().has_value());
          continue;
        }
        const auto e = q.pop_max();
        CHECK(e.index == best->first);
        CHECK(e.key == best->second);
        live.erase(e.index);
      }
    }
  }
}
