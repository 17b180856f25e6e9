#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fastcur {

// One (algorithm, k, alpha) cell of an experiment grid. Means and standard
// deviations are over the trials that succeeded; the std is the sample (n-1)
// estimate and 0 for a single trial.
struct ReportRow {
  std::string algorithm;
  long long k = 0;
  double alpha = 0.0;
  double realized_c = 0.0;  // mean column count of C
  double realized_r = 0.0;  // mean row count of R
  double ratio_mean = 0.0;
  double ratio_std = 0.0;
  double time_mean_seconds = 0.0;
  double time_std_seconds = 0.0;
  long long trials = 0;
  long long errors = 0;  // trials that raised a library error

  bool operator==(const ReportRow&) const = default;
};

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view tag);

inline constexpr std::string_view kReportCsvHeader =
    "algorithm,k,alpha,realized_c,realized_r,ratio_mean,ratio_std,time_mean_seconds,"
    "time_std_seconds,trials,errors";

// Reals use 17 significant digits; a statistic with no successful trial is
// written as nan (CSV) or null (JSON).
std::string report_csv(const std::vector<ReportRow>& rows);
std::string report_json(const std::vector<ReportRow>& rows);

std::vector<ReportRow> parse_report_json(const std::string& text);
std::vector<ReportRow> parse_report_csv(const std::string& text);

// Throws InvalidArgument for an empty row set and IoError if the file cannot be written.
void emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                 const std::filesystem::path& path);

}  // namespace fastcur
