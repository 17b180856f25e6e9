#pragma once

// Matrix file formats.
//
//   mm   Matrix Market, "array" (dense, column-major) or "coordinate" (densified,
//        absent entries zero, duplicates summed); real/integer/pattern fields;
//        general/symmetric/skew-symmetric. Writing always emits
//        "array real general".
//   csv  one matrix row per line, comma-separated decimals.
//   bin  16-byte header of two little-endian uint64 (rows, cols) followed by
//        rows*cols little-endian IEEE-754 doubles in row-major order.

#include <filesystem>
#include <string_view>

#include "fastcur/matrix.hpp"

namespace fastcur {

enum class MatrixFormat { MatrixMarket, Csv, RawBinary };

// Accepts "mm", "csv", "bin". Throws InvalidArgument otherwise.
MatrixFormat parse_matrix_format(std::string_view tag);

// ParseError carries the line (text formats) or byte offset (bin);
// DimensionError reports ragged CSV rows.
Matrix load_matrix(const std::filesystem::path& path, MatrixFormat format);

void save_matrix(const std::filesystem::path& path, const Matrix& a, MatrixFormat format);

}  // namespace fastcur
