#include "dmimo/rng.hpp"

#include <numbers>

namespace dmimo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream RngStream::derive(std::uint64_t seed, StreamPurpose purpose,
                            std::uint64_t index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  h = splitmix64(h ^ index);
  return RngStream(h);
}

std::complex<double> RngStream::unit_phase() {
  const double phase = uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, phase);
}

}  // namespace dmimo
