#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proxzone {

// Which value divides the absolute error. Detected is the measured
// (experimental) value; Actual is the textbook true-value form.
enum class Denominator { Detected, Actual };

std::string_view to_string(Denominator d);
std::optional<Denominator> parse_denominator(std::string_view name);

// |detected - actual| / denominator * 100. Both inputs must be > 0.
double percent_error(double detected, double actual,
                     Denominator denominator = Denominator::Detected);

struct Measurement {
  std::string label;
  double detected = 0.0;
  double actual = 0.0;
};

struct PercentErrorRow {
  std::string label;
  double detected = 0.0;
  double actual = 0.0;
  double difference = 0.0;  // detected - actual, signed
  double percent_error = 0.0;
};

struct PercentErrorSummary {
  std::size_t count = 0;
  double mean_percent_error = 0.0;
  double max_percent_error = 0.0;
};

struct PercentErrorReport {
  Denominator denominator = Denominator::Detected;
  std::vector<PercentErrorRow> rows;
  PercentErrorSummary summary;
};

// Rows keep input order. An empty input gives a report with count 0.
PercentErrorReport summarize(std::span<const Measurement> measurements,
                             Denominator denominator = Denominator::Detected);

// Aligned plain-text table, values at 2 decimal places.
std::string render_table(const PercentErrorReport& report);

// label,detected_m,actual_m,difference_m,percent_error at 4 decimal places.
std::string render_csv(const PercentErrorReport& report);

}  // namespace proxzone
