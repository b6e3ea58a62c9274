#include <sstream>

#include "doctest.h"
#include "dppmap/errors.hpp"
#include "dppmap/io.hpp"
#include "oracles.hpp"

using namespace dppmap;

TEST_CASE("DPPM1 byte layout") {
  std::ostringstream out;
  io::write_dense(out, oracle::matrix({{1.0, -2.5}}));
  const std::string bytes = out.str();
  REQUIRE(bytes.size() == 5 + 4 + 4 + 16);
  CHECK(bytes.substr(0, 5) == "DPPM1");
  CHECK(bytes.substr(5, 4) == std::string("\x01\x00\x00\x00", 4));
  CHECK(bytes.substr(9, 4) == std::string("\x02\x00\x00\x00", 4));
  // 1.0 = 0x3FF0000000000000, little endian
  CHECK(bytes.substr(13, 8) == std::string("\x00\x00\x00\x00\x00\x00\xf0\x3f", 8));
}

TEST_CASE("dense round trip is exact") {
  const auto m = oracle::matrix({{0.1, 1e-300, -7}, {3.25, 1.0 / 3, 2e10}});
  std::stringstream buf;
  io::write_dense(buf, m);
  CHECK(io::read_dense(buf) == m);
}

TEST_CASE("sparse round trip and layout") {
  const SparseColumns m(3, {0, 2, 2, 3}, {0, 2, 1}, {1.0, 2.0, -1.5});
  std::stringstream buf;
  io::write_sparse(buf, m);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 5) == "DPPS1");
  // header 13, then 3 column counts and 3 (index, value) pairs
  CHECK(bytes.size() == 13 + 3 * 4 + 3 * 12);
  CHECK(io::read_sparse(buf) == m);
}

TEST_CASE("CSV round trip") {
  const auto m = oracle::matrix({{0.1, 2}, {-3.5, 1e-7}});
  std::stringstream buf;
  io::write_csv(buf, m);
  CHECK(io::read_csv(buf) == m);
}

TEST_CASE("malformed input is rejected") {
  std::istringstream bad_magic("DPPX1........");
  CHECK_THROWS_AS(io::read_dense(bad_magic), FormatError);
  std::istringstream truncated(std::string("DPPM1\x02\x00\x00\x00\x02\x00\x00\x00", 13));
  CHECK_THROWS_AS(io::read_dense(truncated), FormatError);
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(io::read_csv(ragged), FormatError);
  std::istringstream junk("1,x\n");
  CHECK_THROWS_AS(io::read_csv(junk), FormatError);
}
