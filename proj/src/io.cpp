#include "dppmap/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "dppmap/errors.hpp"

namespace dppmap::io {
namespace {

constexpr std::array<char, 5> kDenseMagic{'D', 'P', 'P', 'M', '1'};
constexpr std::array<char, 5> kSparseMagic{'D', 'P', 'P', 'S', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void read_exact(std::istream& in, unsigned char* dst, std::size_t len, const char* what) {
  in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(len));
  if (static_cast<std::size_t>(in.gcount()) != len) {
    throw FormatError(std::string("truncated input while reading ") + what);
  }
}

std::uint32_t get_u32(std::istream& in, const char* what) {
  unsigned char b[4];
  read_exact(in, b, 4, what);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& in, const char* what) {
  unsigned char b[8];
  read_exact(in, b, 8, what);
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | b[i];
  return std::bit_cast<double>(bits);
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError(std::string(what) + " does not fit in u32");
  }
  return static_cast<std::uint32_t>(v);
}

void expect_magic(std::istream& in, const std::array<char, 5>& magic) {
  std::array<unsigned char, 5> got{};
  read_exact(in, got.data(), got.size(), "magic");
  if (std::memcmp(got.data(), magic.data(), magic.size()) != 0) {
    throw FormatError("bad magic, expected " + std::string(magic.data(), magic.size()));
  }
}

double parse_double(std::string_view field, std::size_t line_no) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw FormatError("CSV line " + std::to_string(line_no) + ": cannot parse '" +
                      std::string(field) + "' as a number");
  }
  return v;
}

}  // namespace

void write_dense(std::ostream& out, const DenseMatrix& m) {
  out.write(kDenseMagic.data(), kDenseMagic.size());
  put_u32(out, checked_u32(m.rows(), "row count"));
  put_u32(out, checked_u32(m.cols(), "column count"));
  for (double v : m.data()) put_f64(out, v);
}

DenseMatrix read_dense(std::istream& in) {
  expect_magic(in, kDenseMagic);
  const std::size_t rows = get_u32(in, "rows");
  const std::size_t cols = get_u32(in, "cols");
  std::vector<double> data(rows * cols);
  for (double& v : data) v = get_f64(in, "dense payload");
  return DenseMatrix(rows, cols, std::move(data));
}

void write_sparse(std::ostream& out, const SparseColumns& m) {
  out.write(kSparseMagic.data(), kSparseMagic.size());
  put_u32(out, checked_u32(m.rows(), "feature dimension"));
  put_u32(out, checked_u32(m.cols(), "item count"));
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto col = m.column(c);
    put_u32(out, checked_u32(col.index.size(), "column nnz"));
    for (std::size_t p = 0; p < col.index.size(); ++p) {
      put_u32(out, col.index[p]);
      put_f64(out, col.value[p]);
    }
  }
}

SparseColumns read_sparse(std::istream& in) {
  expect_magic(in, kSparseMagic);
  const std::size_t d = get_u32(in, "d");
  const std::size_t n = get_u32(in, "n");
  std::vector<std::size_t> ptr{0};
  std::vector<std::uint32_t> idx;
  std::vector<double> val;
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t nnz = get_u32(in, "column nnz");
    for (std::size_t p = 0; p < nnz; ++p) {
      idx.push_back(get_u32(in, "sparse index"));
      val.push_back(get_f64(in, "sparse value"));
    }
    ptr.push_back(idx.size());
  }
  try {
    return SparseColumns(d, std::move(ptr), std::move(idx), std::move(val));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed DPPS1 payload: ") + e.what());
  }
}

void write_csv(std::ostream& out, const DenseMatrix& m) {
  std::array<char, 32> buf{};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), m(r, c));
      out.write(buf.data(), ptr - buf.data());
    }
    out << '\n';
  }
}

DenseMatrix read_csv(std::istream& in) {
  std::vector<double> data;
  std::size_t cols = 0, rows = 0, line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      data.push_back(parse_double(rest.substr(0, comma), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw FormatError("CSV line " + std::to_string(line_no) + ": expected " +
                        std::to_string(cols) + " fields, got " + std::to_string(count));
    }
    ++rows;
  }
  return DenseMatrix(rows, cols, std::move(data));
}

AnyMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 5> head{};
  in.read(head.data(), head.size());
  const auto got = in.gcount();
  in.clear();
  in.seekg(0);
  if (got == 5 && head == kDenseMagic) return read_dense(in);
  if (got == 5 && head == kSparseMagic) return read_sparse(in);
  return read_csv(in);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void save_dense(const std::filesystem::path& path, const DenseMatrix& m) {
  auto out = open_out(path);
  write_dense(out, m);
}

void save_sparse(const std::filesystem::path& path, const SparseColumns& m) {
  auto out = open_out(path);
  write_sparse(out, m);
}

void save_csv(const std::filesystem::path& path, const DenseMatrix& m) {
  auto out = open_out(path);
  write_csv(out, m);
}

}  // namespace dppmap::io
