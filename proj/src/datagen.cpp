#include "dppmap/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "dppmap/errors.hpp"
#include "dppmap/random.hpp"
#include "json.hpp"

namespace dppmap {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_number(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

bool blank(std::string_view s) { return trim(s).empty(); }

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

DenseMatrix gen_synthetic(const SyntheticSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("gen_synthetic: n must be >= 1");
  const std::size_t d = spec.d == 0 ? spec.n : spec.d;
  DecisionStream stream(spec.seed);
  DenseMatrix b(d, spec.n);
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t f = 0; f < d; ++f) b(f, i) = stream.normal();
  return b;
}

std::vector<RatingTriple> parse_triples(std::istream& in, const RatingsSpec& spec) {
  const std::size_t need = std::max({spec.user_col, spec.item_col, spec.rating_col}) + 1;
  std::vector<RatingTriple> out;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto fields = split(line, ',');
    if (first) {
      first = false;
      // Ids are often non-numeric, so only a non-numeric rating marks a header.
      double ignored;
      if (fields.size() > spec.rating_col && !parse_number(fields[spec.rating_col], ignored)) {
        continue;
      }
    }
    if (fields.size() < need) {
      throw FormatError(where(lineno) + "expected at least " + std::to_string(need) +
                        " fields, got " + std::to_string(fields.size()));
    }
    RatingTriple t;
    t.user = std::string(fields[spec.user_col]);
    t.item = std::string(fields[spec.item_col]);
    if (t.user.empty() || t.item.empty()) throw FormatError(where(lineno) + "empty id");
    if (!parse_number(fields[spec.rating_col], t.rating)) {
      throw FormatError(where(lineno) + "bad rating '" + std::string(fields[spec.rating_col]) +
                        "'");
    }
    t.line = lineno;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<RatingTriple> parse_netflix(std::istream& in) {
  std::vector<RatingTriple> out;
  std::string line;
  std::string movie;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto s = trim(line);
    if (s.empty()) continue;
    if (s.back() == ':') {
      movie = std::string(trim(s.substr(0, s.size() - 1)));
      if (movie.empty()) throw FormatError(where(lineno) + "empty movie id");
      continue;
    }
    if (movie.empty()) throw FormatError(where(lineno) + "rating before any movie header");
    const auto fields = split(s, ',');
    if (fields.size() < 2) throw FormatError(where(lineno) + "expected user,rating[,date]");
    RatingTriple t;
    t.user = std::string(fields[0]);
    t.item = movie;
    if (t.user.empty()) throw FormatError(where(lineno) + "empty id");
    if (!parse_number(fields[1], t.rating)) {
      throw FormatError(where(lineno) + "bad rating '" + std::string(fields[1]) + "'");
    }
    t.line = lineno;
    out.push_back(std::move(t));
  }
  return out;
}

IngestResult ingest_ratings(const std::vector<RatingTriple>& triples, const RatingsSpec& spec) {
  IngestResult result;
  if (spec.threshold < 0.0 || spec.threshold > 10.0) {
    result.warnings.push_back("threshold " + std::to_string(spec.threshold) +
                              " is outside the rating scale [0, 10]");
  }
  // Last rating per pair, pairs kept in order of first appearance.
  std::map<std::pair<std::string, std::string>, std::size_t> pair_slot;
  std::vector<const RatingTriple*> latest;
  for (const auto& t : triples) {
    if (t.rating < 0.0 || t.rating > 10.0) {
      result.warnings.push_back(where(t.line) + "rating " + std::to_string(t.rating) +
                                " outside [0, 10]");
    }
    const auto [it, fresh] = pair_slot.try_emplace({t.user, t.item}, latest.size());
    if (fresh) {
      latest.push_back(&t);
    } else {
      result.warnings.push_back(where(t.line) + "repeated pair (" + t.user + ", " + t.item +
                                "); the last rating wins");
      latest[it->second] = &t;
    }
  }

  std::unordered_map<std::string, std::size_t> user_index, item_index;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> columns;
  for (const RatingTriple* t : latest) {
    const bool kept = t->rating >= spec.threshold;
    if (!kept && spec.drop_empty) continue;
    auto [u, new_user] = user_index.try_emplace(t->user, result.users.size());
    if (new_user) result.users.push_back(t->user);
    auto [c, new_item] = item_index.try_emplace(t->item, result.items.size());
    if (new_item) {
      result.items.push_back(t->item);
      columns.emplace_back();
    }
    if (kept) columns[c->second].emplace_back(static_cast<std::uint32_t>(u->second), 1.0);
  }
  if (result.items.empty()) throw FormatError("no items survive");

  std::vector<std::size_t> col_ptr{0};
  std::vector<std::uint32_t> row_idx;
  std::vector<double> values;
  for (auto& col : columns) {
    std::sort(col.begin(), col.end());
    for (const auto& [r, v] : col) {
      row_idx.push_back(r);
      values.push_back(v);
    }
    col_ptr.push_back(row_idx.size());
  }
  result.b = SparseColumns(result.users.size(), std::move(col_ptr), std::move(row_idx),
                           std::move(values));
  return result;
}

std::vector<RatingTriple> render_triples(const IngestResult& result, double value) {
  const SparseColumns& b = result.b;
  const std::size_t d = b.rows(), n = b.cols();
  // Entries by user and by item, as (other index, entry id).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_user(d), by_item(n);
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::size_t c = 0; c < n; ++c) {
    const auto col = b.column(c);
    for (std::uint32_t r : col.index) {
      by_user[r].emplace_back(c, entries.size());
      by_item[c].emplace_back(r, entries.size());
      entries.emplace_back(r, c);
    }
  }
  std::vector<char> emitted(entries.size(), 0);
  std::vector<RatingTriple> out;
  std::size_t next_user = 0, next_item = 0;
  auto emit = [&](std::size_t e) {
    emitted[e] = 1;
    out.push_back({result.users[entries[e].first], result.items[entries[e].second], value, 0});
  };
  // Emit everything whose user and item are both introduced already.
  auto flush_user = [&](std::size_t u) {
    for (const auto& [c, e] : by_user[u])
      if (!emitted[e] && c < next_item) emit(e);
  };
  auto flush_item = [&](std::size_t c) {
    for (const auto& [u, e] : by_item[c])
      if (!emitted[e] && u < next_user) emit(e);
  };

  // Each round introduces the next user, the next item, or both, through an
  // entry that touches nothing else new, so first appearance reproduces the
  // indices.
  while (next_user < d || next_item < n) {
    std::optional<std::size_t> pick;
    if (next_user < d) {
      for (const auto& [c, e] : by_user[next_user])
        if (!emitted[e] && c < next_item) { pick = e; break; }
    }
    if (!pick && next_item < n) {
      for (const auto& [u, e] : by_item[next_item])
        if (!emitted[e] && u < next_user) { pick = e; break; }
    }
    if (!pick && next_user < d && next_item < n) {
      for (const auto& [c, e] : by_user[next_user])
        if (!emitted[e] && c == next_item) { pick = e; break; }
    }
    if (!pick) {
      throw std::logic_error("render_triples: index order is not a first-appearance order");
    }
    const auto [u, c] = entries[*pick];
    emit(*pick);
    if (u == next_user) {
      ++next_user;
      flush_user(u);
    }
    if (c == next_item) {
      ++next_item;
      flush_item(c);
    }
  }
  return out;
}

std::string idmap_json(const IngestResult& result) {
  nlohmann::json j;
  j["users"] = nlohmann::json::object();
  j["items"] = nlohmann::json::object();
  for (std::size_t i = 0; i < result.users.size(); ++i) j["users"][result.users[i]] = i;
  for (std::size_t i = 0; i < result.items.size(); ++i) j["items"][result.items[i]] = i;
  return j.dump(2) + "\n";
}

void write_triples(std::ostream& out, const std::vector<RatingTriple>& triples) {
  char buf[64];
  for (const auto& t : triples) {
    const auto res = std::to_chars(buf, buf + sizeof buf, t.rating);
    out << t.user << ',' << t.item << ',' << std::string_view(buf, res.ptr - buf) << '\n';
  }
}

}  // namespace dppmap
