#include <sstream>

#include "doctest.h"
#include "dppmap/datagen.hpp"
#include "dppmap/errors.hpp"
#include "json.hpp"

using namespace dppmap;

namespace {

IngestResult ingest(const std::string& text, RatingsSpec spec = {}) {
  std::istringstream in(text);
  return ingest_ratings(parse_triples(in, spec), spec);
}

}  // namespace

TEST_CASE("synthetic generation is deterministic") {
  const auto a = gen_synthetic({3, 3, 7});
  CHECK(a == gen_synthetic({3, 3, 7}));
  CHECK_FALSE(a == gen_synthetic({3, 3, 8}));
  CHECK(gen_synthetic({5, 0, 1}).rows() == 5);
  CHECK(gen_synthetic({5, 2, 1}).rows() == 2);
  CHECK(gen_synthetic({5, 2, 1}).cols() == 5);
  CHECK_THROWS(gen_synthetic({0, 2, 1}));
}

TEST_CASE("toy ratings example") {
  const auto r = ingest("u1,m1,5\nu1,m2,3\nu2,m1,4\n");
  CHECK(r.items == std::vector<std::string>{"m1"});
  CHECK(r.users == std::vector<std::string>{"u1", "u2"});
  CHECK(r.b.rows() == 2);
  CHECK(r.b.cols() == 1);
  CHECK(r.b.row_idx() == std::vector<std::uint32_t>{0, 1});
  CHECK(r.b.values() == std::vector<double>{1, 1});
  CHECK(r.warnings.empty());
}

TEST_CASE("threshold 0 keeps every rating") {
  RatingsSpec spec;
  spec.threshold = 0;
  const auto r = ingest("u1,m1,5\nu1,m2,3\nu2,m1,4\n", spec);
  CHECK(r.items.size() == 2);
  CHECK(r.b.nnz() == 3);
}

TEST_CASE("empty input has no items") {
  CHECK_THROWS_WITH_AS(ingest(""), "no items survive", FormatError);
  CHECK_THROWS_AS(ingest("u1,m1,1\n"), FormatError);
}

TEST_CASE("header, custom columns and whitespace") {
  RatingsSpec spec;
  spec.user_col = 1;
  spec.item_col = 0;
  spec.rating_col = 3;
  const auto r = ingest("item,user,date,score\n m9 , a ,2020,4.5\nm8,b,2021,5\n", spec);
  CHECK(r.items == std::vector<std::string>{"m9", "m8"});
  CHECK(r.users == std::vector<std::string>{"a", "b"});
}

TEST_CASE("duplicates, out-of-scale ratings and bad lines") {
  const auto r = ingest("u1,m1,2\nu1,m1,5\nu2,m1,11\n");
  CHECK(r.b.nnz() == 2);
  CHECK(r.warnings.size() == 2);
  CHECK_THROWS_WITH_AS(ingest("u1,m1,5\nu2,m1\n"), doctest::Contains("line 2"), FormatError);
  CHECK_THROWS_WITH_AS(ingest("u1,m1,5\nu2,m1,x\n"), doctest::Contains("line 2"), FormatError);
}

TEST_CASE("keep-empty keeps items with no surviving rating") {
  RatingsSpec spec;
  spec.drop_empty = false;
  const auto r = ingest("u1,m1,5\nu1,m2,3\nu3,m3,1\n", spec);
  CHECK(r.items.size() == 3);
  CHECK(r.users.size() == 2);
  CHECK(r.b.nnz() == 1);
}

TEST_CASE("netflix layout") {
  std::istringstream in("1:\n10,5,2005-01-01\n11,3,2005-01-02\n2:\n10,4,2005-02-01\n");
  const auto r = ingest_ratings(parse_netflix(in));
  CHECK(r.items == std::vector<std::string>{"1", "2"});
  CHECK(r.users == std::vector<std::string>{"10"});
  std::istringstream orphan("10,5,2005\n");
  CHECK_THROWS_AS(parse_netflix(orphan), FormatError);
}

TEST_CASE("render then ingest is the identity") {
  const auto r = ingest("a,x,5\nb,y,5\nb,x,4\nc,z,4\nc,y,5\na,z,3\nd,w,5\n");
  std::ostringstream out;
  write_triples(out, render_triples(r, 5));
  const auto again = ingest(out.str());
  CHECK(again.b == r.b);
  CHECK(again.users == r.users);
  CHECK(again.items == r.items);
}

TEST_CASE("id map sidecar") {
  const auto r = ingest("u1,m1,5\nu2,m1,4\n");
  const auto j = nlohmann::json::parse(idmap_json(r));
  CHECK(j["users"]["u2"] == 1);
  CHECK(j["items"]["m1"] == 0);
}
