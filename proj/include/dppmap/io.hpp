#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "dppmap/dense_matrix.hpp"
#include "dppmap/kernel.hpp"

namespace dppmap::io {

// Dense binary: "DPPM1", u32 LE rows, u32 LE cols, rows*cols f64 LE row-major.
void write_dense(std::ostream& out, const DenseMatrix& m);
DenseMatrix read_dense(std::istream& in);

// Sparse binary: "DPPS1", u32 LE d, u32 LE n, then per column u32 LE nnz and
// nnz pairs (u32 LE index, f64 LE value) with ascending indices.
void write_sparse(std::ostream& out, const SparseColumns& m);
SparseColumns read_sparse(std::istream& in);

// CSV: one matrix row per line, comma separated, no header.
void write_csv(std::ostream& out, const DenseMatrix& m);
DenseMatrix read_csv(std::istream& in);

using AnyMatrix = std::variant<DenseMatrix, SparseColumns>;

// Picks the reader from the leading magic bytes; anything without a known
// magic is parsed as CSV.
AnyMatrix load_matrix(const std::filesystem::path& path);
void save_dense(const std::filesystem::path& path, const DenseMatrix& m);
void save_sparse(const std::filesystem::path& path, const SparseColumns& m);
void save_csv(const std::filesystem::path& path, const DenseMatrix& m);

}  // namespace dppmap::io
