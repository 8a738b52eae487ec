#pragma once

#include <cstdint>
#include <optional>

#include "frachh/realfn.hpp"

namespace frachh {

// Seed used everywhere a caller does not provide one. All sampling is
// deterministic given (seed, grid_n).
inline constexpr std::uint64_t kDefaultSeed = 20170829;

// A sample at which the comparison inequality failed:
//   g(beta*x + (1-beta)*y) > g(y) + beta * eta(g(x), g(y)) + tol.
struct ConvexityWitness {
  double x = 0.0;
  double y = 0.0;
  double beta = 0.0;
  double violation = 0.0;  // left side minus right side, > tolerance
};

struct ConvexityVerdict {
  bool holds = true;
  std::optional<ConvexityWitness> witness;  // engaged exactly when !holds
  std::int64_t samples_checked = 0;
};

// Certification tolerance used when none is given:
// 1e-10 * (1 + max |g| over the size-grid_n Chebyshev grid).
double default_certification_tol(const RealFn& g, const Interval& iv,
                                 int grid_n);

// Sampled check that g is eta-convex on [a, b]:
//   g(beta*x + (1-beta)*y) <= g(y) + beta * eta(g(x), g(y))
// over a Chebyshev x/y grid crossed with a uniform beta grid (grid_n^3
// deterministic samples, endpoints included) plus grid_n^3 random triples.
// grid_n >= 8. Non-finite g or eta values raise EvaluationError.
ConvexityVerdict check_eta_convex(const RealFn& g, const EtaFn& eta,
                                  const Interval& iv, int grid_n = 64,
                                  std::optional<double> tol = std::nullopt,
                                  std::uint64_t seed = kDefaultSeed);

// Sampled upper bound M of eta over g([a,b]) x g([a,b]). Deterministic part:
// all pairs over a union of Chebyshev grids of sizes grid_n, grid_n/2, ...
// (>= 8), so doubling grid_n only ever adds points; random part: the first
// grid_n^3 draws of a seed-fixed stream. Together this makes the estimate
// monotone nondecreasing when grid_n doubles at a fixed seed.
double eta_upper_bound(const EtaFn& eta, const RealFn& g, const Interval& iv,
                       int grid_n = 64, std::uint64_t seed = kDefaultSeed);

}  // namespace frachh
