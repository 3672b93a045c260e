#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace proxzone {

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the uniform and Gaussian transforms
// are implemented here because the standard distributions are not specified
// bit-for-bit across library vendors.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Normal(0, sigma). sigma == 0 returns 0 without consuming randomness.
  double gaussian(double sigma);

 private:
  std::mt19937_64 engine_;
};

}  // namespace proxzone
