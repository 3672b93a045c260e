#include "proxzone/eval.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "proxzone/errors.hpp"

namespace proxzone {

std::string_view to_string(Denominator d) {
  return d == Denominator::Detected ? "detected" : "actual";
}

std::optional<Denominator> parse_denominator(std::string_view name) {
  if (name == "detected") return Denominator::Detected;
  if (name == "actual") return Denominator::Actual;
  return std::nullopt;
}

double percent_error(double detected, double actual, Denominator denominator) {
  require_positive(detected, "detected");
  require_positive(actual, "actual");
  const double base = denominator == Denominator::Detected ? detected : actual;
  return std::abs(detected - actual) / base * 100.0;
}

PercentErrorReport summarize(std::span<const Measurement> measurements,
                             Denominator denominator) {
  PercentErrorReport report;
  report.denominator = denominator;
  report.rows.reserve(measurements.size());
  double total = 0.0;
  for (const auto& m : measurements) {
    PercentErrorRow row{m.label, m.detected, m.actual, m.detected - m.actual,
                        percent_error(m.detected, m.actual, denominator)};
    total += row.percent_error;
    report.summary.max_percent_error = std::max(report.summary.max_percent_error, row.percent_error);
    report.rows.push_back(std::move(row));
  }
  report.summary.count = report.rows.size();
  if (!report.rows.empty()) {
    report.summary.mean_percent_error = total / static_cast<double>(report.rows.size());
  }
  return report;
}

std::string render_table(const PercentErrorReport& report) {
  std::size_t label_width = 5;
  for (const auto& r : report.rows) label_width = std::max(label_width, r.label.size());

  std::string out;
  out += fmt::format("{:<{}}  {:>12}  {:>10}  {:>14}  {:>9}\n", "label", label_width,
                     "detected (m)", "actual (m)", "difference (m)", "error (%)");
  out += fmt::format("{:-<{}}\n", "", label_width + 2 + 12 + 2 + 10 + 2 + 14 + 2 + 9);
  for (const auto& r : report.rows) {
    out += fmt::format("{:<{}}  {:>12.2f}  {:>10.2f}  {:>14.2f}  {:>9.2f}\n", r.label,
                       label_width, r.detected, r.actual, r.difference, r.percent_error);
  }
  out += fmt::format("count {}  mean error {:.2f}%  max error {:.2f}%\n", report.summary.count,
                     report.summary.mean_percent_error, report.summary.max_percent_error);
  if (report.denominator == Denominator::Actual) {
    out += "note: errors divide by the actual value (textbook form), not the detected value\n";
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string render_csv(const PercentErrorReport& report) {
  std::string out = "label,detected_m,actual_m,difference_m,percent_error\n";
  for (const auto& r : report.rows) {
    out += fmt::format("{},{:.4f},{:.4f},{:.4f},{:.4f}\n", csv_field(r.label), r.detected,
                       r.actual, r.difference, r.percent_error);
  }
  return out;
}

}  // namespace proxzone
