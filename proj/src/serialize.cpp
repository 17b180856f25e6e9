#include "fastcur/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace fastcur {

std::string format_real(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

namespace {

void append_indices(std::string& out, const std::vector<Index>& idx) {
  out += '[';
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(idx[i]);
  }
  out += ']';
}

void append_matrix(std::string& out, const Matrix& m) {
  out += "{\"rows\":" + std::to_string(m.rows()) + ",\"cols\":" + std::to_string(m.cols()) +
         ",\"data\":[";
  bool first = true;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (!first) out += ',';
      first = false;
      out += format_real(m(i, j));
    }
  out += "]}";
}

Matrix read_matrix(const nlohmann::json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const auto& data = j.at("data");
  if (static_cast<Index>(data.size()) != rows * cols) {
    throw Error(ErrorKind::ParseError, "factor payload length does not match its shape");
  }
  Matrix m(rows, cols);
  std::size_t t = 0;
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) m(i, c) = data[t++].get<double>();
  return m;
}

}  // namespace

std::string to_json(const CurDecomposition& dec, bool include_factors) {
  const CurParams& p = dec.params;
  std::string out = "{\"format\":\"fastcur.cur/1\",\"algorithm\":\"" + dec.algorithm + "\"";
  out += ",\"rows\":" + std::to_string(dec.source_rows);
  out += ",\"cols\":" + std::to_string(dec.source_cols);
  out += ",\"params\":{\"k\":" + std::to_string(p.k) + ",\"eps\":" + format_real(p.eps) +
         ",\"eps0\":" + format_real(p.eps0) + ",\"c1\":" + std::to_string(p.c1) +
         ",\"c2\":" + std::to_string(p.c2) + ",\"r1\":" + std::to_string(p.r1) +
         ",\"r2\":" + std::to_string(p.r2) + "}";
  out += ",\"col_indices\":";
  append_indices(out, dec.col_indices);
  out += ",\"row_indices\":";
  append_indices(out, dec.row_indices);
  if (include_factors) {
    out += ",\"C\":";
    append_matrix(out, dec.C);
    out += ",\"U\":";
    append_matrix(out, dec.U);
    out += ",\"R\":";
    append_matrix(out, dec.R);
  }
  out += "}\n";
  return out;
}

CurDecomposition decomposition_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "fastcur.cur/1") {
      throw Error(ErrorKind::ParseError, "unknown decomposition format");
    }
    CurDecomposition dec;
    dec.algorithm = j.at("algorithm").get<std::string>();
    dec.source_rows = j.at("rows").get<Index>();
    dec.source_cols = j.at("cols").get<Index>();
    const auto& p = j.at("params");
    dec.params.k = p.at("k").get<Index>();
    dec.params.eps = p.at("eps").get<double>();
    dec.params.eps0 = p.at("eps0").get<double>();
    dec.params.c1 = p.at("c1").get<Index>();
    dec.params.c2 = p.at("c2").get<Index>();
    dec.params.r1 = p.at("r1").get<Index>();
    dec.params.r2 = p.at("r2").get<Index>();
    dec.col_indices = j.at("col_indices").get<std::vector<Index>>();
    dec.row_indices = j.at("row_indices").get<std::vector<Index>>();
    if (j.contains("C")) dec.C = read_matrix(j.at("C"));
    if (j.contains("U")) dec.U = read_matrix(j.at("U"));
    if (j.contains("R")) dec.R = read_matrix(j.at("R"));
    return dec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace fastcur
