#include "proxzone/errors.hpp"

#include <cmath>

#include <fmt/format.h>

namespace proxzone {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::string out = "validation failed";
  for (const auto& v : violations) {
    out += "\n  ";
    out += v;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

IoError::IoError(const std::string& path, const std::string& what)
    : std::runtime_error(fmt::format("{}: {}", path, what)), path_(path) {}

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw InvalidArgument(fmt::format("{} must be finite and > 0 (got {})", name, value));
  }
}

}  // namespace proxzone
