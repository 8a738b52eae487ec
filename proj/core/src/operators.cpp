#include "frachh/operators.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "frachh/errors.hpp"
#include "frachh/numeric.hpp"
#include "frachh/specialfn.hpp"

namespace frachh {
namespace {

// (x+s)^p - x^p computed from the distance s >= 0 without cancellation.
double gap_above(double x, double s, double p) {
  if (s <= 0.0) return 0.0;
  if (x <= 0.0) return std::pow(s, p);
  if (s < 0.5 * x) {
    return std::pow(x, p) * std::expm1(p * std::log1p(s / x));
  }
  return pow_gap(x + s, x, p);
}

// x^p - (x-s)^p computed from the distance 0 <= s <= x without cancellation.
double gap_below(double x, double s, double p) {
  if (s <= 0.0) return 0.0;
  if (s >= x) return std::pow(x, p);
  if (s < 0.5 * x) {
    return -std::pow(x, p) * std::expm1(p * std::log1p(-s / x));
  }
  return pow_gap(x, x - s, p);
}

// Sample the integration window and reject non-finite function values before
// handing the kernel to a quadrature that would smear them around.
void probe_bounded(const RealFn& g, double lo, double hi) {
  for (double x : chebyshev_points(lo, hi, 513)) {
    if (!std::isfinite(g(x))) {
      throw EvaluationError(
          "function '" + g.label + "' is non-finite on the integration window",
          x);
    }
  }
}

// log of the operator prefactor (r+1)^(1-e) / (k * k_gamma(alpha, k)).
double log_prefactor(const FracParams& p) {
  const double e = p.alpha / p.k;
  return (1.0 - e) * std::log(p.r + 1.0) - std::log(p.k) -
         log_k_gamma(p.alpha, p.k);
}

// If the caller asked for power_substitution, declare where the kernel
// singularity lives in the distance variable.
QuadSpec route_singularity(QuadSpec spec, double kernel_exponent) {
  if (spec.scheme == QuadScheme::power_substitution) {
    spec.singular_end = SingularEnd::lower;
    spec.singular_exponent = std::min(kernel_exponent, 0.0);
  }
  return spec;
}

double run_quadrature(const Integrand& kern, double length,
                      const QuadSpec& spec, const char* op, double x) {
  const QuadResult qr = integrate(kern, 0.0, length, spec);
  if (!qr.converged) {
    char msg[96];
    std::snprintf(msg, sizeof msg,
                  ": quadrature did not converge at x = %.9g "
                  "(error estimate %.3g)",
                  x, qr.error_estimate);
    throw ConvergenceError(std::string(op) + msg);
  }
  return qr.value;
}

}  // namespace

void validate(const FracParams& p) {
  if (!std::isfinite(p.alpha) || !(p.alpha > 0.0)) {
    throw DomainError("alpha must be finite and > 0, got " +
                      std::to_string(p.alpha));
  }
  if (!std::isfinite(p.k) || !(p.k > 0.0)) {
    throw DomainError("k must be finite and > 0, got " + std::to_string(p.k));
  }
  if (!std::isfinite(p.r) || !(p.r > -1.0)) {
    throw DomainError("r must be finite and > -1, got " + std::to_string(p.r));
  }
}

bool nonneg_integer(double r) {
  return r >= 0.0 && std::floor(r) == r;
}

void validate_operator_domain(const Interval& iv, const FracParams& p) {
  validate(iv);
  validate(p);
  if (iv.a < 0.0) {
    throw DomainError("fractional operators require a >= 0, got a = " +
                      std::to_string(iv.a));
  }
  if (iv.a == 0.0 && !nonneg_integer(p.r)) {
    throw DomainError(
        "a = 0 requires r to be a nonnegative integer (t^r at t = 0)");
  }
}

double frac_left(const RealFn& g, double x, double a, const FracParams& p,
                 const QuadSpec& spec) {
  if (!(x > a)) {
    throw DomainError("frac_left requires x > a");
  }
  validate_operator_domain({a, x}, p);
  probe_bounded(g, a, x);
  const double e = p.alpha / p.k;
  const double s_exp = p.r + 1.0;
  const double r = p.r;
  // t = x - s: the kernel zero of (x^(r+1) - t^(r+1)) sits at s = 0.
  auto kern = [&g, x, e, s_exp, r](double s) {
    const double t = x - s;
    return std::pow(gap_below(x, s, s_exp), e - 1.0) * std::pow(t, r) * g(t);
  };
  const double integral = run_quadrature(
      kern, x - a, route_singularity(spec, e - 1.0), "frac_left", x);
  return std::exp(log_prefactor(p)) * integral;
}

double frac_right(const RealFn& g, double x, double b, const FracParams& p,
                  const QuadSpec& spec) {
  if (!(x < b)) {
    throw DomainError("frac_right requires x < b");
  }
  validate_operator_domain({x, b}, p);
  probe_bounded(g, x, b);
  const double e = p.alpha / p.k;
  const double s_exp = p.r + 1.0;
  const double r = p.r;
  // t = x + s: the kernel zero of (t^(r+1) - x^(r+1)) sits at s = 0.
  auto kern = [&g, x, e, s_exp, r](double s) {
    const double t = x + s;
    return std::pow(gap_above(x, s, s_exp), e - 1.0) * std::pow(t, r) * g(t);
  };
  const double integral = run_quadrature(
      kern, b - x, route_singularity(spec, e - 1.0), "frac_right", x);
  return std::exp(log_prefactor(p)) * integral;
}

double frac_left_unit(const RealFn& g, double x, double a, const FracParams& p,
                      const QuadSpec& spec) {
  if (!(x > a)) {
    throw DomainError("frac_left requires x > a");
  }
  validate_operator_domain({a, x}, p);
  probe_bounded(g, a, x);
  const double e = p.alpha / p.k;
  const double s_exp = p.r + 1.0;
  const double r = p.r;
  const double width = x - a;
  // v = 1 - w puts the kernel zero (t -> x) at v = 0, where the distance
  // v * width is exactly representable however small it gets.
  auto kern = [&g, x, width, e, s_exp, r](double v) {
    const double t = x - v * width;
    return std::pow(gap_below(x, v * width, s_exp), e - 1.0) *
           std::pow(t, r) * g(t);
  };
  const double integral = run_quadrature(
      kern, 1.0, route_singularity(spec, e - 1.0), "frac_left_unit", x);
  return width * std::exp(log_prefactor(p)) * integral;
}

double frac_right_unit(const RealFn& g, double x, double b,
                       const FracParams& p, const QuadSpec& spec) {
  if (!(x < b)) {
    throw DomainError("frac_right requires x < b");
  }
  validate_operator_domain({x, b}, p);
  probe_bounded(g, x, b);
  const double e = p.alpha / p.k;
  const double s_exp = p.r + 1.0;
  const double r = p.r;
  const double width = b - x;
  // v = 1 - w puts the kernel zero (t -> x) at v = 0, where the distance
  // v * width is exactly representable however small it gets.
  auto kern = [&g, x, width, e, s_exp, r](double v) {
    const double t = x + v * width;
    return std::pow(gap_above(x, v * width, s_exp), e - 1.0) *
           std::pow(t, r) * g(t);
  };
  const double integral = run_quadrature(
      kern, 1.0, route_singularity(spec, e - 1.0), "frac_right_unit", x);
  return width * std::exp(log_prefactor(p)) * integral;
}

RealFn reflect(const RealFn& g, const Interval& iv) {
  validate(iv);
  const double sum = iv.a + iv.b;
  RealFn out;
  out.label = "reflect(" + g.label + ")";
  auto eval = g.eval;
  out.eval = [eval, sum](double x) { return eval(sum - x); };
  if (g.has_deriv()) {
    auto deriv = g.deriv;
    out.deriv = [deriv, sum](double x) { return -deriv(sum - x); };
  }
  return out;
}

RealFn symmetrize(const RealFn& g, const Interval& iv) {
  validate(iv);
  const double sum = iv.a + iv.b;
  RealFn out;
  out.label = "sym(" + g.label + ")";
  auto eval = g.eval;
  out.eval = [eval, sum](double x) { return eval(x) + eval(sum - x); };
  if (g.has_deriv()) {
    auto deriv = g.deriv;
    out.deriv = [deriv, sum](double x) { return deriv(x) - deriv(sum - x); };
  }
  return out;
}

double normalized_frac_mean(const RealFn& g, const Interval& iv,
                            const FracParams& p, const QuadSpec& spec) {
  validate_operator_domain(iv, p);
  const double e = p.alpha / p.k;
  const RealFn big_g = symmetrize(g, iv);
  const double sum = frac_left(big_g, iv.b, iv.a, p, spec) +
                     frac_right(big_g, iv.a, iv.b, p, spec);
  const double log_pref = e * std::log(p.r + 1.0) +
                          log_k_gamma(p.alpha + p.k, p.k) - std::log(4.0) -
                          e * std::log(pow_gap(iv.b, iv.a, p.r + 1.0));
  return std::exp(log_pref) * sum;
}

}  // namespace frachh
