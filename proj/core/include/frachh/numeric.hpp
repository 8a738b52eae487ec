#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace frachh {

// hi^s - lo^s for 0 <= lo <= hi, s > 0, evaluated without cancellation when
// lo is close to hi:  hi^s - lo^s = -hi^s * expm1(s * log(lo/hi)).
inline double pow_gap(double hi, double lo, double s) {
  if (lo <= 0.0) return std::pow(hi, s);
  if (hi <= lo) return 0.0;
  const double ratio = lo / hi;
  if (ratio > 0.5) {
    // log(lo/hi) via log1p keeps full precision for ratio near 1.
    return -std::pow(hi, s) * std::expm1(s * std::log1p((lo - hi) / hi));
  }
  return std::pow(hi, s) - std::pow(lo, s);
}

// pow that forgives a tiny negative base produced by rounding noise.
inline double pow_soft(double base, double exponent) {
  if (base < 0.0) base = 0.0;
  return std::pow(base, exponent);
}

// Chebyshev extrema (Gauss-Lobatto points) of [a, b], endpoints included,
// returned in increasing order. n >= 2.
inline std::vector<double> chebyshev_points(double a, double b, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double pi = 3.14159265358979323846;
  for (int j = 0; j < n; ++j) {
    xs[static_cast<std::size_t>(j)] =
        mid - half * std::cos(pi * static_cast<double>(j) / (n - 1));
  }
  xs.front() = a;  // pin the endpoints exactly
  xs.back() = b;
  return xs;
}

// Uniform double in [0, 1) built from the top 53 bits of the generator.
// std::uniform_real_distribution is not pinned across standard libraries;
// this is, so sampled checks reproduce bit-for-bit everywhere.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Deterministic sub-stream: one generator per (seed, role, index) so
// materialization order never changes what gets drawn.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t role,
                                 std::uint64_t index) {
  // splitmix64 over the mixed key; standard seeding recipe.
  std::uint64_t z = seed ^ (role * 0x9E3779B97F4A7C15ULL) ^
                    (index * 0xBF58476D1CE4E5B9ULL);
  auto next = [&z]() {
    z += 0x9E3779B97F4A7C15ULL;
    std::uint64_t t = z;
    t = (t ^ (t >> 30)) * 0xBF58476D1CE4E5B9ULL;
    t = (t ^ (t >> 27)) * 0x94D049BB133111EBULL;
    return t ^ (t >> 31);
  };
  std::seed_seq seq{static_cast<std::uint32_t>(next() >> 32),
                    static_cast<std::uint32_t>(next()),
                    static_cast<std::uint32_t>(next() >> 32),
                    static_cast<std::uint32_t>(next())};
  return std::mt19937_64(seq);
}

}  // namespace frachh
