#include "fastcur/report.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "fastcur/error.hpp"
#include "fastcur/serialize.hpp"

namespace fastcur {

namespace {

std::string json_real(double x) { return std::isfinite(x) ? format_real(x) : "null"; }

double real_or_nan(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

double parse_real_field(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
  return v;
}

}  // namespace

ReportFormat parse_report_format(std::string_view tag) {
  if (tag == "csv") return ReportFormat::Csv;
  if (tag == "json") return ReportFormat::Json;
  throw Error(ErrorKind::InvalidArgument, "unknown report format '" + std::string(tag) + "'");
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out(kReportCsvHeader);
  out += '\n';
  for (const ReportRow& r : rows) {
    out += r.algorithm + ',' + std::to_string(r.k) + ',' + format_real(r.alpha) + ',' +
           format_real(r.realized_c) + ',' + format_real(r.realized_r) + ',' +
           format_real(r.ratio_mean) + ',' + format_real(r.ratio_std) + ',' +
           format_real(r.time_mean_seconds) + ',' + format_real(r.time_std_seconds) + ',' +
           std::to_string(r.trials) + ',' + std::to_string(r.errors) + '\n';
  }
  return out;
}

std::string report_json(const std::vector<ReportRow>& rows) {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ReportRow& r = rows[i];
    out += i ? ",\n " : "\n ";
    out += "{\"algorithm\":\"" + r.algorithm + "\",\"k\":" + std::to_string(r.k) +
           ",\"alpha\":" + json_real(r.alpha) + ",\"realized_c\":" + json_real(r.realized_c) +
           ",\"realized_r\":" + json_real(r.realized_r) + ",\"ratio_mean\":" + json_real(r.ratio_mean) +
           ",\"ratio_std\":" + json_real(r.ratio_std) +
           ",\"time_mean_seconds\":" + json_real(r.time_mean_seconds) +
           ",\"time_std_seconds\":" + json_real(r.time_std_seconds) +
           ",\"trials\":" + std::to_string(r.trials) + ",\"errors\":" + std::to_string(r.errors) +
           "}";
  }
  out += "\n]\n";
  return out;
}

std::vector<ReportRow> parse_report_json(const std::string& text) {
  try {
    std::vector<ReportRow> rows;
    for (const auto& o : nlohmann::json::parse(text)) {
      ReportRow r;
      r.algorithm = o.at("algorithm").get<std::string>();
      r.k = o.at("k").get<long long>();
      r.alpha = real_or_nan(o.at("alpha"));
      r.realized_c = real_or_nan(o.at("realized_c"));
      r.realized_r = real_or_nan(o.at("realized_r"));
      r.ratio_mean = real_or_nan(o.at("ratio_mean"));
      r.ratio_std = real_or_nan(o.at("ratio_std"));
      r.time_mean_seconds = real_or_nan(o.at("time_mean_seconds"));
      r.time_std_seconds = real_or_nan(o.at("time_std_seconds"));
      r.trials = o.at("trials").get<long long>();
      r.errors = o.at("errors").get<long long>();
      rows.push_back(std::move(r));
    }
    return rows;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::vector<ReportRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kReportCsvHeader) {
    throw Error(ErrorKind::ParseError, "missing report header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) f.push_back(cell);
    if (f.size() != 11) throw Error(ErrorKind::ParseError, "report row has " + std::to_string(f.size()) + " fields");
    try {
      rows.push_back({f[0], std::stoll(f[1]), parse_real_field(f[2]), parse_real_field(f[3]),
                      parse_real_field(f[4]), parse_real_field(f[5]), parse_real_field(f[6]),
                      parse_real_field(f[7]), parse_real_field(f[8]), std::stoll(f[9]),
                      std::stoll(f[10])});
    } catch (const std::logic_error& e) {
      throw Error(ErrorKind::ParseError, std::string("bad report field: ") + e.what());
    }
  }
  return rows;
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 const std::filesystem::path& path) {
  if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "refusing to write an empty report");
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << (format == ReportFormat::Csv ? report_csv(rows) : report_json(rows));
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write failed: " + path.string());
}

}  // namespace fastcur
