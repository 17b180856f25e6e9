#include "fastcur/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fastcur/serialize.hpp"

namespace fastcur {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& msg) {
  throw Error(ErrorKind::ParseError, path.string() + ": line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return in;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Matrix load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, layout, field, symmetry;
  header >> banner >> object >> layout >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    parse_fail(path, lineno, "missing %%MatrixMarket matrix banner");
  }
  layout = lower(layout);
  field = lower(field);
  symmetry = lower(symmetry);
  if (layout != "array" && layout != "coordinate") parse_fail(path, lineno, "unknown layout " + layout);
  if (field != "real" && field != "integer" && field != "double" && field != "pattern") {
    parse_fail(path, lineno, "unsupported field " + field);
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric") {
    parse_fail(path, lineno, "unsupported symmetry " + symmetry);
  }
  const bool pattern = field == "pattern";
  if (pattern && layout == "array") parse_fail(path, lineno, "pattern field needs coordinate layout");

  // Size line, after comments.
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (!t.empty() && t.front() != '%') break;
  }
  std::istringstream size_line(line);
  long long rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols) || rows < 1 || cols < 1) parse_fail(path, lineno, "bad size line");
  if (layout == "coordinate" && !(size_line >> nnz)) parse_fail(path, lineno, "missing entry count");
  const bool symmetric = symmetry != "general";
  if (symmetric && rows != cols) parse_fail(path, lineno, "symmetric matrix must be square");
  const double mirror_sign = symmetry == "skew-symmetric" ? -1.0 : 1.0;

  Matrix m = Matrix::Zero(rows, cols);
  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      const std::string_view t = trim(out);
      if (!t.empty() && t.front() != '%') return true;
    }
    return false;
  };

  if (layout == "array") {
    // Column-major; symmetric storage lists only the lower triangle.
    for (long long j = 0; j < cols; ++j) {
      const long long first = symmetry == "general" ? 0 : (symmetry == "symmetric" ? j : j + 1);
      for (long long i = first; i < rows; ++i) {
        if (!next_data_line(line)) parse_fail(path, lineno, "too few array entries");
        double v = 0.0;
        if (!parse_double(line, v)) parse_fail(path, lineno, "bad value '" + line + "'");
        m(i, j) = v;
        if (symmetric && i != j) m(j, i) = mirror_sign * v;
      }
    }
  } else {
    for (long long e = 0; e < nnz; ++e) {
      if (!next_data_line(line)) parse_fail(path, lineno, "too few coordinate entries");
      std::istringstream entry(line);
      long long i = 0, j = 0;
      std::string value_text;
      if (!(entry >> i >> j)) parse_fail(path, lineno, "bad coordinate entry");
      double v = 1.0;
      if (!pattern) {
        if (!(entry >> value_text) || !parse_double(value_text, v)) {
          parse_fail(path, lineno, "bad value in coordinate entry");
        }
      }
      if (i < 1 || i > rows || j < 1 || j > cols) parse_fail(path, lineno, "index out of range");
      m(i - 1, j - 1) += v;
      if (symmetric && i != j) m(j - 1, i - 1) += mirror_sign * v;
    }
  }
  return m;
}

Matrix load_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<double> values;
  long long cols = -1, rows = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    long long count = 0;
    std::string_view rest = line;
    while (true) {
      const std::size_t comma = rest.find(',');
      const std::string_view cell = rest.substr(0, comma);
      double v = 0.0;
      if (!parse_double(cell, v)) parse_fail(path, lineno, "bad value '" + std::string(cell) + "'");
      values.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols < 0) cols = count;
    if (count != cols) {
      throw Error(ErrorKind::DimensionError, path.string() + ":" + std::to_string(lineno) +
                                                 ": row has " + std::to_string(count) +
                                                 " values, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) parse_fail(path, lineno, "no data rows");
  return make_matrix(rows, cols, values);
}

std::uint64_t read_le64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

void write_le64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int b = 0; b < 8; ++b) bytes[static_cast<std::size_t>(b)] = static_cast<char>((v >> (8 * b)) & 0xff);
  os.write(bytes.data(), 8);
}

Matrix load_raw_binary(const std::filesystem::path& path) {
  std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  auto fail = [&](std::size_t offset, const std::string& msg) {
    throw Error(ErrorKind::ParseError, path.string() + ": byte offset " + std::to_string(offset) + ": " + msg);
  };
  if (bytes.size() < 16) fail(bytes.size(), "truncated header");
  const std::uint64_t rows = read_le64(bytes.data());
  const std::uint64_t cols = read_le64(bytes.data() + 8);
  if (rows == 0 || cols == 0) fail(0, "zero dimension");
  if (rows > (1ULL << 31) || cols > (1ULL << 31)) fail(0, "dimensions too large");
  const std::uint64_t expected = 16 + 8 * rows * cols;
  if (bytes.size() != expected) {
    fail(bytes.size() < expected ? bytes.size() : expected,
         "expected " + std::to_string(expected) + " bytes, file has " + std::to_string(bytes.size()));
  }
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  const unsigned char* p = bytes.data() + 16;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j, p += 8) {
      const double v = std::bit_cast<double>(read_le64(p));
      if (!std::isfinite(v)) fail(static_cast<std::size_t>(p - bytes.data()), "non-finite value");
      m(i, j) = v;
    }
  return m;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  return out;
}

}  // namespace

MatrixFormat parse_matrix_format(std::string_view tag) {
  if (tag == "mm") return MatrixFormat::MatrixMarket;
  if (tag == "csv") return MatrixFormat::Csv;
  if (tag == "bin") return MatrixFormat::RawBinary;
  throw Error(ErrorKind::InvalidArgument, "unknown matrix format '" + std::string(tag) + "'");
}

Matrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  switch (format) {
    case MatrixFormat::MatrixMarket: return load_matrix_market(path);
    case MatrixFormat::Csv: return load_csv(path);
    case MatrixFormat::RawBinary: return load_raw_binary(path);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown matrix format");
}

void save_matrix(const std::filesystem::path& path, const Matrix& a, MatrixFormat format) {
  switch (format) {
    case MatrixFormat::MatrixMarket: {
      std::ofstream out = open_out(path);
      out << "%%MatrixMarket matrix array real general\n" << a.rows() << ' ' << a.cols() << '\n';
      for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i) out << format_real(a(i, j)) << '\n';
      if (!out) throw Error(ErrorKind::IoError, "write failed: " + path.string());
      return;
    }
    case MatrixFormat::Csv: {
      std::ofstream out = open_out(path);
      for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) out << (j ? "," : "") << format_real(a(i, j));
        out << '\n';
      }
      if (!out) throw Error(ErrorKind::IoError, "write failed: " + path.string());
      return;
    }
    case MatrixFormat::RawBinary: {
      std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
      write_le64(out, static_cast<std::uint64_t>(a.rows()));
      write_le64(out, static_cast<std::uint64_t>(a.cols()));
      for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) write_le64(out, std::bit_cast<std::uint64_t>(a(i, j)));
      if (!out) throw Error(ErrorKind::IoError, "write failed: " + path.string());
      return;
    }
  }
}

}  // namespace fastcur
