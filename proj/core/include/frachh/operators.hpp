#pragma once

#include "frachh/quadrature.hpp"
#include "frachh/realfn.hpp"

namespace frachh {

// Order/deformation parameters of the fractional operators.
struct FracParams {
  double alpha = 1.0;  // order, > 0
  double k = 1.0;      // gamma deformation, > 0
  double r = 0.0;      // power deformation, > -1
};

// Throws DomainError unless alpha > 0, k > 0 and r > -1 (all finite).
void validate(const FracParams& p);

bool nonneg_integer(double r);

// Operators integrate t^r over [a, b]-windows, so a >= 0 is required, and
// a > 0 unless r is a nonnegative integer (t^r must be evaluable at t = 0).
void validate_operator_domain(const Interval& iv, const FracParams& p);

// Left operator at x > a:
//   C * integral_a^x (x^(r+1) - t^(r+1))^(alpha/k - 1) t^r g(t) dt,
//   C = (r+1)^(1 - alpha/k) / (k * k_gamma(alpha, k)).
// The integral runs in the distance variable s = x - t so the kernel
// singularity at t = x sits at s = 0, where distances stay exactly
// representable. Throws ConvergenceError if the quadrature fails.
double frac_left(const RealFn& g, double x, double a, const FracParams& p,
                 const QuadSpec& spec = {});

// Right operator at x < b:
//   C * integral_x^b (t^(r+1) - x^(r+1))^(alpha/k - 1) t^r g(t) dt.
double frac_right(const RealFn& g, double x, double b, const FracParams& p,
                  const QuadSpec& spec = {});

// Unit-window substitution forms of the two operators (t = wx + (1-w)a and
// t = wx + (1-w)b respectively, integrated from the kernel-zero end so node
// distances stay exactly representable). They recompute the same values
// through a different parametrization and prefactor assembly and exist to
// cross-check frac_left/frac_right.
double frac_left_unit(const RealFn& g, double x, double a, const FracParams& p,
                      const QuadSpec& spec = {});
double frac_right_unit(const RealFn& g, double x, double b,
                       const FracParams& p, const QuadSpec& spec = {});

// Reflection of g across the midpoint of [a, b]: x -> g(a + b - x).
RealFn reflect(const RealFn& g, const Interval& iv);

// Symmetrization G = g + reflect(g): G(x) = g(x) + g(a + b - x).
RealFn symmetrize(const RealFn& g, const Interval& iv);

// The normalized two-sided fractional average of the symmetrization:
//   (r+1)^(alpha/k) * k_gamma(alpha + k, k)
//   ------------------------------------------ * [J_left G(b) + J_right G(a)]
//       4 * (b^(r+1) - a^(r+1))^(alpha/k)
// For any constant function c this equals c; for alpha = k = 1, r = 0 it is
// the plain integral mean of g over [a, b].
double normalized_frac_mean(const RealFn& g, const Interval& iv,
                            const FracParams& p, const QuadSpec& spec = {});

}  // namespace frachh
