#include "frachh/etaconvex.hpp"

#include <cmath>
#include <vector>

#include "frachh/errors.hpp"
#include "frachh/numeric.hpp"

namespace frachh {
namespace {

constexpr std::uint64_t kRoleConvexity = 0x636f6e76;  // sub-stream tags
constexpr std::uint64_t kRoleEtaBound = 0x65746142;

void require_grid(int grid_n) {
  if (grid_n < 8) {
    throw DomainError("grid_n must be >= 8, got " + std::to_string(grid_n));
  }
}

double eval_checked(const RealFn& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v)) {
    throw EvaluationError("function '" + g.label + "' is non-finite", x);
  }
  return v;
}

double eta_checked(const EtaFn& eta, double u, double v) {
  const double e = eta(u, v);
  if (!std::isfinite(e)) {
    throw EvaluationError("eta '" + eta.label + "' is non-finite", u);
  }
  return e;
}

}  // namespace

double default_certification_tol(const RealFn& g, const Interval& iv,
                                 int grid_n) {
  validate(iv);
  require_grid(grid_n);
  double sup = 0.0;
  for (double x : chebyshev_points(iv.a, iv.b, grid_n)) {
    sup = std::max(sup, std::fabs(eval_checked(g, x)));
  }
  return 1e-10 * (1.0 + sup);
}

ConvexityVerdict check_eta_convex(const RealFn& g, const EtaFn& eta,
                                  const Interval& iv, int grid_n,
                                  std::optional<double> tol,
                                  std::uint64_t seed) {
  validate(iv);
  require_grid(grid_n);
  const double tol_v = tol ? *tol : default_certification_tol(g, iv, grid_n);

  double worst = -std::numeric_limits<double>::infinity();
  ConvexityWitness at{};
  std::int64_t samples = 0;

  auto consider = [&](double x, double y, double beta, double gx, double gy) {
    const double lhs = eval_checked(g, beta * x + (1.0 - beta) * y);
    const double rhs = gy + beta * eta_checked(eta, gx, gy);
    const double v = lhs - rhs;
    ++samples;
    if (v > worst) {
      worst = v;
      at = {x, y, beta, v};
    }
  };

  // Deterministic part: Chebyshev x/y grid crossed with a uniform beta grid.
  const std::vector<double> xs = chebyshev_points(iv.a, iv.b, grid_n);
  std::vector<double> gs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) gs[i] = eval_checked(g, xs[i]);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      for (int m = 0; m < grid_n; ++m) {
        const double beta = static_cast<double>(m) / (grid_n - 1);
        consider(xs[i], xs[j], beta, gs[i], gs[j]);
      }
    }
  }

  // Random part: grid_n^3 triples from the seed-fixed stream.
  std::mt19937_64 rng = substream(seed, kRoleConvexity, 0);
  const std::int64_t n_random = static_cast<std::int64_t>(grid_n) * grid_n *
                                static_cast<std::int64_t>(grid_n);
  const double w = iv.width();
  for (std::int64_t i = 0; i < n_random; ++i) {
    const double x = iv.a + uniform01(rng) * w;
    const double y = iv.a + uniform01(rng) * w;
    const double beta = uniform01(rng);
    consider(x, y, beta, eval_checked(g, x), eval_checked(g, y));
  }

  ConvexityVerdict verdict;
  verdict.samples_checked = samples;
  verdict.holds = worst <= tol_v;
  if (!verdict.holds) {
    verdict.witness = at;
  }
  return verdict;
}

double eta_upper_bound(const EtaFn& eta, const RealFn& g, const Interval& iv,
                       int grid_n, std::uint64_t seed) {
  validate(iv);
  require_grid(grid_n);

  // Union of Chebyshev grids of sizes grid_n, grid_n/2, ... >= 8. The union
  // at 2*grid_n contains the one at grid_n, which is what makes the bound
  // monotone under grid doubling.
  std::vector<double> pts;
  for (int m = grid_n; m >= 8; m /= 2) {
    const std::vector<double> layer = chebyshev_points(iv.a, iv.b, m);
    pts.insert(pts.end(), layer.begin(), layer.end());
  }
  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i] = eval_checked(g, pts[i]);
  }

  double bound = -std::numeric_limits<double>::infinity();
  for (double u : vals) {
    for (double v : vals) {
      bound = std::max(bound, eta_checked(eta, u, v));
    }
  }

  // Random part: a prefix of the seed-fixed stream (three draws per sample,
  // so prefixes nest across grid sizes).
  std::mt19937_64 rng = substream(seed, kRoleEtaBound, 0);
  const std::int64_t n_random = static_cast<std::int64_t>(grid_n) * grid_n *
                                static_cast<std::int64_t>(grid_n);
  const double w = iv.width();
  for (std::int64_t i = 0; i < n_random; ++i) {
    const double x = iv.a + uniform01(rng) * w;
    const double y = iv.a + uniform01(rng) * w;
    (void)uniform01(rng);
    bound = std::max(
        bound, eta_checked(eta, eval_checked(g, x), eval_checked(g, y)));
  }
  return bound;
}

}  // namespace frachh
