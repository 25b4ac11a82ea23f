#include "sbn/random.hpp"

#include <cmath>

#include "sbn/errors.hpp"

namespace sbn {

uint64_t Rng::SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t Rng::DeriveSeed(uint64_t base, std::initializer_list<uint64_t> path) {
  uint64_t state = SplitMix64(base);
  for (uint64_t element : path) state = SplitMix64(state ^ SplitMix64(element + 1));
  return state;
}

double Rng::Uniform01() {
  return (static_cast<double>(Next() >> 11) + 0.5) * 0x1.0p-53;
}

uint64_t Rng::UniformInt(uint64_t bound) {
  if (bound == 0) throw UsageError("UniformInt needs a positive bound");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x = Next();
  while (x >= limit) x = Next();
  return x % bound;
}

double Rng::Normal() {
  while (true) {
    const double u = 2.0 * Uniform01() - 1.0;
    const double v = 2.0 * Uniform01() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double Rng::LogGamma(double shape) {
  if (!(shape > 0.0)) throw UsageError("gamma shape must be positive");
  if (shape < 1.0) {
    const double boosted = LogGamma(shape + 1.0);
    return boosted + std::log(Uniform01()) / shape;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = Normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = Uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
  }
}

double Rng::Gamma(double shape) { return std::exp(LogGamma(shape)); }

}  // namespace sbn
