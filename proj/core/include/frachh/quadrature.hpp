#pragma once

#include <cstdint>
#include <functional>

namespace frachh {

// Numerical schemes for integrals over a finite interval [lo, hi].
//
//  - double_exponential: tanh-sinh rule with level doubling. Nodes are placed
//    by their distance to the nearer endpoint, so integrable endpoint
//    singularities are resolved down to distances ~1e-300 when that distance
//    is exactly representable (endpoint at 0, or an integrand that computes
//    from the distance). This is the default and the workhorse.
//  - adaptive_bisection: 15-point Gauss-Kronrod on a worklist, always
//    bisecting the interval with the largest error estimate, plus epsilon
//    (Wynn) extrapolation of the running totals whenever the refinement is
//    happening at an endpoint. The extrapolation is what lets plain bisection
//    reach tight tolerances on endpoint power singularities.
//  - power_substitution: substitutes u = (distance to the declared singular
//    endpoint)^(p+1), which removes a pure (distance)^p singularity exactly,
//    then integrates the transformed, regular integrand by tanh-sinh.
enum class QuadScheme {
  double_exponential,
  adaptive_bisection,
  power_substitution,
};

enum class SingularEnd { none, lower, upper };

struct QuadSpec {
  QuadScheme scheme = QuadScheme::double_exponential;
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  // Refinement budget: tanh-sinh halves its step this many times;
  // adaptive bisection may create up to 2^max_levels subintervals.
  int max_levels = 12;
  // Only read by power_substitution: which endpoint carries the
  // singularity and the exponent p (> -1) of (distance)^p there.
  SingularEnd singular_end = SingularEnd::none;
  double singular_exponent = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

// Integrate f over [lo, hi] per spec. Throws DomainError on invalid input
// (non-finite or reversed endpoints, bad tolerances, missing singular-end
// declaration for power_substitution) and EvaluationError when the integrand
// returns a non-finite value away from the endpoints. A non-finite value
// within a few ulps of an endpoint is treated as an integrable endpoint
// divergence and dropped. Failure to reach the tolerance is reported via
// converged == false, never by throwing.
QuadResult integrate(const Integrand& f, double lo, double hi,
                     const QuadSpec& spec = {});

}  // namespace frachh
