#pragma once

namespace frachh {

// Euler gamma function for z > 0 (Lanczos rational approximation,
// ~double precision). Throws DomainError for z <= 0 or non-finite z.
double gamma_fn(double z);

// log(gamma_fn(z)) for z > 0, safe far beyond the overflow range of gamma_fn.
double log_gamma_fn(double z);

// k-deformed gamma function, k > 0, x > 0:
//   k_gamma(x, k) = k^(x/k - 1) * gamma_fn(x / k)
// which is the closed reduction of  integral_0^inf t^(x-1) exp(-t^k/k) dt.
// Satisfies k_gamma(x + k, k) = x * k_gamma(x, k) and k_gamma(k, k) = 1.
// For x/k > 30 the value is assembled in log space; +inf is returned when
// the true value exceeds double range.
double k_gamma(double x, double k);

// log(k_gamma(x, k)); always finite for valid input.
double log_k_gamma(double x, double k);

// k_gamma(alpha + k, k) = alpha * k_gamma(alpha, k): the normalization
// constant that appears in front of averaged fractional operators.
double k_gamma_shifted(double alpha, double k);

}  // namespace frachh
