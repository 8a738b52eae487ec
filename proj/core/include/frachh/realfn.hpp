#pragma once

#include <functional>
#include <string>

namespace frachh {

// A closed interval [a, b] of the real line.
struct Interval {
  double a = 0.0;
  double b = 1.0;

  double width() const { return b - a; }
  double midpoint() const { return a + 0.5 * (b - a); }
};

// Throws DomainError unless a < b with both finite.
void validate(const Interval& iv);

// A scalar function with an optional analytic derivative and a label used in
// reports. The label is part of the CSV contract, so registry names are
// stable identifiers, not descriptions.
struct RealFn {
  std::function<double(double)> eval;
  std::function<double(double)> deriv;  // empty when only eval is known
  std::string label;

  double operator()(double x) const { return eval(x); }
  bool has_deriv() const { return static_cast<bool>(deriv); }
};

// A bivariate comparison function eta(u, v) with a label.
struct EtaFn {
  std::function<double(double, double)> eval;
  std::string label;

  double operator()(double u, double v) const { return eval(u, v); }
};

// Derivative of g usable on [a, b]: the analytic one when present, otherwise
// central differences with step 1e-6 * (b - a), switching to second-order
// one-sided stencils within one step of the interval ends.
std::function<double(double)> derivative_on(const RealFn& g,
                                            const Interval& iv);

}  // namespace frachh
