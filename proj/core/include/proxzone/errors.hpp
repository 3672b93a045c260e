#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace proxzone {

// Bad value handed to an operation. The message names the offending parameter.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An event arrived with a timestamp older than one already applied.
class OrderingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Structured input (scenario, JSONL line, config) failed validation.
// Carries every violation found, each prefixed with its field path.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Throws InvalidArgument unless value is finite and strictly positive.
void require_positive(double value, const char* name);

}  // namespace proxzone
