#include "frachh/realfn.hpp"

#include <cmath>

#include "frachh/errors.hpp"

namespace frachh {

void validate(const Interval& iv) {
  if (!std::isfinite(iv.a) || !std::isfinite(iv.b)) {
    throw DomainError("interval endpoints must be finite");
  }
  if (!(iv.a < iv.b)) {
    throw DomainError("interval requires a < b, got [" +
                      std::to_string(iv.a) + ", " + std::to_string(iv.b) +
                      "]");
  }
}

std::function<double(double)> derivative_on(const RealFn& g,
                                            const Interval& iv) {
  validate(iv);
  if (g.has_deriv()) {
    return g.deriv;
  }
  const double h = 1e-6 * iv.width();
  auto f = g.eval;
  const double a = iv.a;
  const double b = iv.b;
  return [f, h, a, b](double x) -> double {
    if (x - h < a) {
      // second-order forward stencil
      return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
    }
    if (x + h > b) {
      // second-order backward stencil
      return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
    }
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
}

}  // namespace frachh
