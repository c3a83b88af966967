#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sgv/theorem.hpp"

namespace sgv {

enum class OutputFormat { Csv, Json, Text };
OutputFormat parse_format(std::string_view name);

/// 12 significant digits; "inf" and "nan" for non-finite values.
std::string format_real(double x);

inline constexpr std::string_view kReportHeader = "p,d,e,H,T,u,N,bound,ratio,lambda_count,status,error";

std::string render_report(const std::vector<ReportRow>& rows, OutputFormat format);
/// Writes to path, or to `fallback` when path is empty. Throws IoError.
void emit_report(const std::vector<ReportRow>& rows, OutputFormat format, const std::string& path, std::ostream& fallback);

/// Flat table of cells with keys p, psi, H, T and optional u, as CSV with a
/// header line or as a JSON array of objects. Throws ParseError, IoError.
std::vector<SweepCell> parse_sweep_config(std::string_view text, bool json);
std::vector<SweepCell> read_sweep_config(const std::string& path);

/// "a..b" as {u = a - 1, H = b - a + 1}. Throws InvalidArgument.
Interval parse_interval(std::string_view text, bool wrap = false);

/// Full command line without the program name. Exit codes: 0 success, 1
/// domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgv
