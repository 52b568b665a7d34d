#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace dmimo {

/// Purpose tags used to split independent random streams from one seed.
enum class StreamPurpose : std::uint64_t {
  kPositions = 1,
  kShadowing = 2,
  kTrial = 3,
  kSymbols = 4,
  kMoment = 5,
  kSynthetic = 6,
};

/// Seeded pseudo-random stream. Streams derived from the same
/// (seed, purpose, index) triple are bit-identical; distinct triples are
/// decorrelated through SplitMix64 mixing.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t seed, StreamPurpose purpose,
                          std::uint64_t index = 0);

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return normal_(engine_); }

  /// Circularly-symmetric complex Gaussian with unit variance.
  std::complex<double> complex_normal() {
    constexpr double kScale = 0.70710678118654752440;
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {kScale * re, kScale * im};
  }

  /// Unit-modulus symbol with uniform phase.
  std::complex<double> unit_phase();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dmimo
