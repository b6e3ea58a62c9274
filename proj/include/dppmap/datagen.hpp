#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dppmap/dense_matrix.hpp"
#include "dppmap/kernel.hpp"

namespace dppmap {

struct SyntheticSpec {
  std::size_t n = 0;
  // 0 means d = n.
  std::size_t d = 0;
  std::uint64_t seed = 0;
};

// d x n matrix of i.i.d. standard normals from DecisionStream(seed).normal(),
// filled item by item (column 0 top to bottom, then column 1, ...).
DenseMatrix gen_synthetic(const SyntheticSpec& spec);

struct RatingTriple {
  std::string user;
  std::string item;
  double rating = 0.0;
  // Source line, 0 when not read from a file.
  std::size_t line = 0;
};

struct RatingsSpec {
  // Zero-based CSV columns.
  std::size_t user_col = 0;
  std::size_t item_col = 1;
  std::size_t rating_col = 2;
  // Ratings >= threshold become 1, the rest are dropped.
  double threshold = 4.0;
  // Remove items and users left without any entry.
  bool drop_empty = true;
};

struct IngestResult {
  // Users as rows (features), items as columns.
  SparseColumns b;
  // Original ids by index.
  std::vector<std::string> users;
  std::vector<std::string> items;
  std::vector<std::string> warnings;
};

// user,item,rating lines (extra columns allowed). A first line whose first
// field does not parse as a number is taken as a header. Throws FormatError
// naming the line on malformed input.
std::vector<RatingTriple> parse_triples(std::istream& in, const RatingsSpec& spec = {});

// Netflix prize per-movie files: a "<movie>:" line, then "user,rating,date"
// lines for that movie. Several movies may follow each other in one stream.
std::vector<RatingTriple> parse_netflix(std::istream& in);

// Binarizes and filters. Users and items are numbered in order of their
// first kept entry (first appearance over all entries when drop_empty is
// off). A repeated (user, item) pair keeps its last rating. Throws
// FormatError("no items survive") when nothing is left.
IngestResult ingest_ratings(const std::vector<RatingTriple>& triples, const RatingsSpec& spec = {});

// Triples (original ids, rating `value`) whose re-ingestion with a threshold
// <= value reproduces result.b and both orderings exactly.
std::vector<RatingTriple> render_triples(const IngestResult& result, double value);

// {"users": {id: index, ...}, "items": {id: index, ...}}
std::string idmap_json(const IngestResult& result);

void write_triples(std::ostream& out, const std::vector<RatingTriple>& triples);

}  // namespace dppmap
