// Seeded random numbers with platform-independent output.
//
// The engine is std::mt19937_64, whose sequence is fixed by the standard. All
// derived variates are computed here rather than with <random> distributions, whose
// algorithms differ between standard libraries.
//
// Independent streams are derived from a base seed and a path of integers (cell,
// replicate, purpose, ...) by folding each path element through SplitMix64. Results
// therefore do not depend on the order in which streams are consumed.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sbn {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  static uint64_t SplitMix64(uint64_t x);
  static uint64_t DeriveSeed(uint64_t base, std::initializer_list<uint64_t> path);
  static Rng Stream(uint64_t base, std::initializer_list<uint64_t> path) {
    return Rng(DeriveSeed(base, path));
  }

  uint64_t Next() { return engine_(); }
  // Uniform on the open interval (0,1).
  double Uniform01();
  // Uniform on {0, ..., bound-1}; bound must be positive.
  uint64_t UniformInt(uint64_t bound);
  // Standard normal (Marsaglia polar method).
  double Normal();
  // Gamma(shape, 1) by Marsaglia and Tsang; shapes below 1 use the boost
  // Gamma(shape+1) * U^(1/shape).
  double Gamma(double shape);
  // log of a Gamma(shape, 1) variate, finite even when the variate underflows.
  double LogGamma(double shape);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sbn
