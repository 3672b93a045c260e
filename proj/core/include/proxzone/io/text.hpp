#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace proxzone::io {

// Shortest decimal that round-trips, always with a '.' or exponent so it reads
// back as a real ("200.0", "1.6256").
std::string format_decimal(double value);

// Strict decimal parse of the whole (trimmed) string. No locale, no thousands
// separators, no trailing junk.
std::optional<double> parse_decimal(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

std::string_view trim(std::string_view s);

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

// "key=value" lines. Blank lines and lines starting with '#' are skipped.
// Throws ValidationError naming source:line for malformed lines.
std::vector<KeyValue> parse_key_values(std::string_view text, std::string_view source);

// Throws IoError if the file cannot be read.
std::string read_file(const std::filesystem::path& path);
// Throws IoError if the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace proxzone::io
