#include "proxzone/rng.hpp"

#include <cmath>
#include <numbers>

namespace proxzone {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian(double sigma) {
  if (sigma == 0.0) return 0.0;
  // Box-Muller, cosine branch only; u1 is shifted into (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace proxzone
