#pragma once

// Scenario report: observable rows compared against oracle values, written
// as a CSV (`observable,measured,oracle,rel_error,pass`) and a text table.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace pfstefan {

struct ReportRow {
  std::string observable;
  double measured{0.0};
  double oracle{0.0};
  double rel_error{0.0};
  /// Empty for informational rows that carry no acceptance threshold.
  std::optional<bool> pass;
};

/// Relative error against the oracle; absolute error when the oracle is 0.
inline double relative_error(double measured, double oracle) {
  return oracle != 0.0 ? (measured - oracle) / std::abs(oracle) : measured - oracle;
}

struct Report {
  enum class Status { ok, blow_up, error };

  std::string scenario;
  std::vector<ReportRow> rows;
  std::vector<std::string> diagnostics;
  Status status{Status::ok};

  ReportRow& add(std::string observable, double measured, double oracle,
                 std::optional<bool> pass) {
    rows.push_back({std::move(observable), measured, oracle, relative_error(measured, oracle), pass});
    return rows.back();
  }

  bool all_pass() const {
    if (status != Status::ok) return false;
    for (const auto& r : rows)
      if (r.pass && !*r.pass) return false;
    return true;
  }

  /// 0 pass, 1 criterion failure, 3 numerical blow-up.
  int exit_code() const {
    if (status == Status::blow_up) return 3;
    return all_pass() ? 0 : 1;
  }
};

namespace detail {

/// Shortest decimal form that round-trips.
inline std::string format_shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string pass_text(const std::optional<bool>& p) {
  if (!p) return "n/a";
  return *p ? "true" : "false";
}

}  // namespace detail

inline void write_report_csv(std::ostream& os, const Report& r) {
  os << "observable,measured,oracle,rel_error,pass\n";
  for (const auto& row : r.rows)
    os << row.observable << ',' << detail::format_shortest(row.measured) << ','
       << detail::format_shortest(row.oracle) << ',' << detail::format_shortest(row.rel_error)
       << ',' << detail::pass_text(row.pass) << '\n';
}

inline void write_report_table(std::ostream& os, const Report& r) {
  std::size_t width = 10;
  for (const auto& row : r.rows) width = std::max(width, row.observable.size());
  char line[512];
  os << "scenario: " << r.scenario << '\n';
  std::snprintf(line, sizeof line, "%-*s  %14s  %14s  %11s  %s\n", static_cast<int>(width),
                "observable", "measured", "oracle", "rel_error", "pass");
  os << line;
  for (const auto& row : r.rows) {
    std::snprintf(line, sizeof line, "%-*s  %14.6g  %14.6g  %11.3e  %s\n",
                  static_cast<int>(width), row.observable.c_str(), row.measured, row.oracle,
                  row.rel_error, detail::pass_text(row.pass).c_str());
    os << line;
  }
  for (const auto& d : r.diagnostics) os << "note: " << d << '\n';
  const char* verdict = r.status == Report::Status::blow_up ? "BLOW-UP"
                        : r.status == Report::Status::error ? "ERROR"
                        : r.all_pass()                      ? "PASS"
                                                            : "FAIL";
  os << "result: " << verdict << '\n';
}

/// Writes the CSV to csv_path and the text table next to it (.txt).
inline void emit_report(const Report& r, const std::filesystem::path& csv_path) {
  auto txt_path = csv_path;
  txt_path.replace_extension(".txt");
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write report to " + csv_path.string());
  write_report_csv(csv, r);
  std::ofstream txt(txt_path);
  if (!txt) throw std::runtime_error("cannot write report to " + txt_path.string());
  write_report_table(txt, r);
  if (!csv || !txt) throw std::runtime_error("I/O failure writing report at " + csv_path.string());
}

}  // namespace pfstefan
