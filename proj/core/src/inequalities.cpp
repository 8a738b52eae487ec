#include "frachh/inequalities.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "frachh/errors.hpp"
#include "frachh/numeric.hpp"
#include "frachh/specialfn.hpp"

namespace frachh {
namespace {

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double scale_of(double lhs, double rhs) {
  return 1.0 + std::max(std::fabs(lhs), std::fabs(rhs));
}

BoundReport make_report(const std::string& theorem, double lhs, double rhs) {
  BoundReport rep;
  rep.theorem = theorem;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.holds = bound_holds(lhs, rhs);
  return rep;
}

double run_or_throw(const Integrand& f, double lo, double hi,
                    const QuadSpec& spec, const char* what) {
  const QuadResult qr = integrate(f, lo, hi, spec);
  if (!qr.converged) {
    throw ConvergenceError(std::string(what) +
                           ": quadrature did not converge (error estimate " +
                           fmt_short(qr.error_estimate) + ")");
  }
  return qr.value;
}

double eta_val(const EtaFn& eta, double u, double v) {
  const double e = eta(u, v);
  if (!std::isfinite(e)) {
    throw EvaluationError("eta '" + eta.label + "' is non-finite", u);
  }
  return e;
}

double fn_val(const RealFn& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v)) {
    throw EvaluationError("function '" + g.label + "' is non-finite", x);
  }
  return v;
}

// |g'| as a function usable on [a, b].
RealFn abs_deriv(const RealFn& g, const Interval& iv) {
  auto gd = derivative_on(g, iv);
  RealFn out;
  out.label = "|" + g.label + "'|";
  out.eval = [gd](double x) { return std::fabs(gd(x)); };
  return out;
}

// |g'|^q as a function usable on [a, b].
RealFn abs_deriv_pow(const RealFn& g, const Interval& iv, double q) {
  auto gd = derivative_on(g, iv);
  RealFn out;
  out.label = "|" + g.label + "'|^q";
  out.eval = [gd, q](double x) { return std::pow(std::fabs(gd(x)), q); };
  return out;
}

void require_eta_convex(const RealFn& fn, const EtaFn& eta, const Interval& iv,
                        const char* what) {
  const ConvexityVerdict v = check_eta_convex(fn, eta, iv, 32);
  if (!v.holds) {
    const ConvexityWitness& w = *v.witness;
    throw PreconditionError(
        std::string(what) + ": '" + fn.label + "' is not eta-convex w.r.t. '" +
        eta.label + "' (violation " + fmt_short(w.violation) + " at x=" +
        fmt_short(w.x) + ", y=" + fmt_short(w.y) + ", beta=" +
        fmt_short(w.beta) + ")");
  }
}

void require_convex(const RealFn& fn, const Interval& iv, const char* what) {
  EtaFn diff{[](double u, double v) { return u - v; }, "diff"};
  require_eta_convex(fn, diff, iv, what);
}

void require_positive(const RealFn& g, const Interval& iv, const char* what) {
  for (double x : chebyshev_points(iv.a, iv.b, 513)) {
    if (!(fn_val(g, x) > 0.0)) {
      throw PreconditionError(std::string(what) + ": '" + g.label +
                              "' is not positive at x = " + std::to_string(x));
    }
  }
}

void cross_check(double a, double b, const char* what) {
  if (std::fabs(a - b) > 1e-8 * scale_of(a, b)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, " cross-check failed: %.9g vs %.9g", a, b);
    throw ConvergenceError(std::string(what) + msg);
  }
}

// D = (b^(r+1) - a^(r+1))^(alpha/k), the normalization in all rhs's.
double gap_power(const Interval& iv, const FracParams& p) {
  return std::pow(pow_gap(iv.b, iv.a, p.r + 1.0), p.alpha / p.k);
}

void validate_theta_domain(const Interval& iv, const FracParams& p) {
  validate(iv);
  validate(p);
  if (iv.a < 0.0) {
    throw DomainError("kernel requires a >= 0, got a = " +
                      std::to_string(iv.a));
  }
}

}  // namespace

void validate(const HolderParams& hp) {
  if (!std::isfinite(hp.p) || !std::isfinite(hp.q) || !(hp.p > 1.0) ||
      !(hp.q > 1.0)) {
    throw DomainError("Hoelder exponents must be finite and > 1");
  }
  if (std::fabs(1.0 / hp.p + 1.0 / hp.q - 1.0) > 1e-12) {
    throw DomainError("Hoelder exponents must satisfy 1/p + 1/q = 1, got p=" +
                      std::to_string(hp.p) + ", q=" + std::to_string(hp.q));
  }
}

bool bound_holds(double lhs, double rhs) {
  return rhs - lhs >= -kVerifyTol * scale_of(lhs, rhs);
}

bool identity_holds(double lhs, double rhs) {
  return std::fabs(rhs - lhs) <= kVerifyTol * scale_of(lhs, rhs);
}

double theta(double t, const Interval& iv, const FracParams& p) {
  validate_theta_domain(iv, p);
  if (!(t >= 0.0) || !(t <= 1.0)) {
    throw DomainError("kernel argument must lie in [0, 1], got " +
                      std::to_string(t));
  }
  const double s = p.r + 1.0;
  const double e = p.alpha / p.k;
  const double tau1 = t * iv.a + (1.0 - t) * iv.b;
  const double tau2 = t * iv.b + (1.0 - t) * iv.a;
  return std::pow(pow_gap(tau1, iv.a, s), e) -
         std::pow(pow_gap(tau2, iv.a, s), e) +
         std::pow(pow_gap(iv.b, tau2, s), e) -
         std::pow(pow_gap(iv.b, tau1, s), e);
}

double theta_abs_integral(const Interval& iv, const FracParams& p,
                          const QuadSpec& spec) {
  validate_theta_domain(iv, p);
  auto f = [&iv, &p](double t) { return std::fabs(theta(t, iv, p)); };
  // Split at the kernel's sign change so each piece is smooth.
  return run_or_throw(f, 0.0, 0.5, spec, "kernel integral") +
         run_or_throw(f, 0.5, 1.0, spec, "kernel integral");
}

double theta_abs_t_integral(const Interval& iv, const FracParams& p,
                            const QuadSpec& spec) {
  validate_theta_domain(iv, p);
  auto f = [&iv, &p](double t) { return t * std::fabs(theta(t, iv, p)); };
  return run_or_throw(f, 0.0, 0.5, spec, "weighted kernel integral") +
         run_or_throw(f, 0.5, 1.0, spec, "weighted kernel integral");
}

double theta_p_norm(const Interval& iv, const FracParams& p, double norm_p,
                    const QuadSpec& spec) {
  validate_theta_domain(iv, p);
  if (!(norm_p > 1.0)) {
    throw DomainError("kernel norm exponent must be > 1");
  }
  auto f = [&iv, &p, norm_p](double t) {
    return std::pow(std::fabs(theta(t, iv, p)), norm_p);
  };
  const double total = run_or_throw(f, 0.0, 0.5, spec, "kernel p-norm") +
                       run_or_throw(f, 0.5, 1.0, spec, "kernel p-norm");
  return std::pow(total, 1.0 / norm_p);
}

RTerms R_terms(const Interval& iv, const FracParams& p, const QuadSpec& spec) {
  validate_theta_domain(iv, p);
  const double s = p.r + 1.0;
  const double e = p.alpha / p.k;
  const double a = iv.a;
  const double b = iv.b;
  const double mid = iv.midpoint();
  const double ab = a + b;
  auto fa = [a, s, e](double w) { return std::pow(pow_gap(w, a, s), e); };
  auto fb = [a, ab, s, e](double w) {
    return std::pow(pow_gap(ab - w, a, s), e);
  };
  auto fc = [b, ab, s, e](double w) {
    return std::pow(pow_gap(b, ab - w, s), e);
  };
  auto fd = [b, s, e](double w) { return std::pow(pow_gap(b, w, s), e); };
  auto part = [&spec](const Integrand& f, double lo, double hi) {
    return run_or_throw(f, lo, hi, spec, "kernel half-integral");
  };
  RTerms out;
  out.r1 = part(fa, mid, b) - part(fa, a, mid);
  out.r2 = part(fc, mid, b) - part(fc, a, mid);
  out.r3 = part(fd, a, mid) - part(fd, mid, b);
  out.r4 = part(fb, a, mid) - part(fb, mid, b);
  return out;
}

XiTerms Xi_terms(const Interval& iv, const FracParams& p,
                 const QuadSpec& spec) {
  validate_theta_domain(iv, p);
  const double s = p.r + 1.0;
  const double e = p.alpha / p.k;
  const double a = iv.a;
  const double b = iv.b;
  const double mid = iv.midpoint();
  const double ab = a + b;
  auto fa = [a, b, s, e](double w) {
    return (b - w) * std::pow(pow_gap(w, a, s), e);
  };
  auto fb = [a, b, ab, s, e](double w) {
    return (b - w) * std::pow(pow_gap(ab - w, a, s), e);
  };
  auto fc = [b, ab, s, e](double w) {
    return (b - w) * std::pow(pow_gap(b, ab - w, s), e);
  };
  auto fd = [b, s, e](double w) {
    return (b - w) * std::pow(pow_gap(b, w, s), e);
  };
  auto part = [&spec](const Integrand& f, double lo, double hi) {
    return run_or_throw(f, lo, hi, spec, "weighted kernel half-integral");
  };
  XiTerms out;
  out.xi1 = part(fd, a, mid) - part(fd, mid, b);
  out.xi2 = part(fa, mid, b) - part(fa, a, mid);
  out.xi3 = part(fb, a, mid) - part(fb, mid, b);
  out.xi4 = part(fc, mid, b) - part(fc, a, mid);
  return out;
}

double lemma1_lhs(const RealFn& g, const Interval& iv, const FracParams& p,
                  const QuadSpec& spec) {
  validate_operator_domain(iv, p);
  const double trap = 0.5 * (fn_val(g, iv.a) + fn_val(g, iv.b));
  return trap - normalized_frac_mean(g, iv, p, spec);
}

double lemma1_rhs(const RealFn& g, const Interval& iv, const FracParams& p,
                  const QuadSpec& spec) {
  validate_operator_domain(iv, p);
  auto gd = derivative_on(g, iv);
  const double a = iv.a;
  const double b = iv.b;
  auto f = [&iv, &p, &gd, a, b](double t) {
    return theta(t, iv, p) * gd(t * a + (1.0 - t) * b);
  };
  const double integral =
      run_or_throw(f, 0.0, 1.0, spec, "trapezoid identity integral");
  return iv.width() / (4.0 * gap_power(iv, p)) * integral;
}

double integral_mean(const RealFn& g, const Interval& iv,
                     const QuadSpec& spec) {
  validate(iv);
  auto f = [&g](double x) { return g(x); };
  return run_or_throw(f, iv.a, iv.b, spec, "integral mean") / iv.width();
}

BoundReport bound_mr1(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      const FracParams& p, const QuadSpec& spec,
                      bool check_preconditions) {
  validate_operator_domain(iv, p);
  if (check_preconditions) {
    require_positive(g, iv, "mr1");
    require_eta_convex(g, eta, iv, "mr1");
  }
  const double lhs = normalized_frac_mean(g, iv, p, spec);
  const double rhs =
      fn_val(g, iv.b) + 0.5 * eta_val(eta, fn_val(g, iv.a), fn_val(g, iv.b));
  return make_report("mr1", lhs, rhs);
}

BoundReport bound_mr2(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      const FracParams& p, const QuadSpec& spec,
                      bool check_preconditions) {
  validate_operator_domain(iv, p);
  if (check_preconditions) {
    require_eta_convex(abs_deriv(g, iv), eta, iv, "mr2");
  }
  const double lhs = std::fabs(lemma1_lhs(g, iv, p, spec));
  const RTerms rt = R_terms(iv, p, spec);
  const XiTerms xt = Xi_terms(iv, p, spec);
  const double w = iv.width();
  cross_check(rt.sum() / w, theta_abs_integral(iv, p, spec),
              "kernel integral decomposition");
  cross_check(xt.sum() / (w * w), theta_abs_t_integral(iv, p, spec),
              "weighted kernel integral decomposition");
  auto gd = derivative_on(g, iv);
  const double da = std::fabs(gd(iv.a));
  const double db = std::fabs(gd(iv.b));
  const double rhs =
      (rt.sum() * db + (xt.sum() / w) * eta_val(eta, da, db)) /
      (4.0 * gap_power(iv, p));
  return make_report("mr2", lhs, rhs);
}

BoundReport bound_mr3(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      const FracParams& p, const HolderParams& hp,
                      const QuadSpec& spec, bool check_preconditions) {
  validate_operator_domain(iv, p);
  validate(hp);
  if (check_preconditions) {
    require_eta_convex(abs_deriv_pow(g, iv, hp.q), eta, iv, "mr3");
  }
  const double lhs = std::fabs(lemma1_lhs(g, iv, p, spec));
  auto gd = derivative_on(g, iv);
  const double daq = std::pow(std::fabs(gd(iv.a)), hp.q);
  const double dbq = std::pow(std::fabs(gd(iv.b)), hp.q);
  const double bracket = dbq + 0.5 * eta_val(eta, daq, dbq);
  if (bracket < 0.0) {
    throw PreconditionError(
        "mr3: eta drives the power bracket negative; the bound is undefined");
  }
  const double rhs = iv.width() / (4.0 * gap_power(iv, p)) *
                     std::pow(bracket, 1.0 / hp.q) *
                     theta_p_norm(iv, p, hp.p, spec);
  return make_report("mr3", lhs, rhs);
}

namespace {

BoundReport mr4_impl(const RealFn& g, const EtaFn& eta, const Interval& iv,
                     const FracParams& p, const HolderParams& hp,
                     const QuadSpec& spec, bool check_preconditions,
                     bool r_inside_bracket, const char* name) {
  validate_operator_domain(iv, p);
  validate(hp);
  if (check_preconditions) {
    require_eta_convex(abs_deriv_pow(g, iv, hp.q), eta, iv, name);
  }
  const double lhs = std::fabs(lemma1_lhs(g, iv, p, spec));
  const RTerms rt = R_terms(iv, p, spec);
  const XiTerms xt = Xi_terms(iv, p, spec);
  const double w = iv.width();
  cross_check(rt.sum() / w, theta_abs_integral(iv, p, spec),
              "kernel integral decomposition");
  cross_check(xt.sum() / (w * w), theta_abs_t_integral(iv, p, spec),
              "weighted kernel integral decomposition");
  auto gd = derivative_on(g, iv);
  const double daq = std::pow(std::fabs(gd(iv.a)), hp.q);
  const double dbq = std::pow(std::fabs(gd(iv.b)), hp.q);
  const double lead = r_inside_bracket ? rt.sum() * dbq : dbq;
  const double bracket = lead + (xt.sum() / w) * eta_val(eta, daq, dbq);
  if (bracket < 0.0) {
    throw PreconditionError(std::string(name) +
                            ": eta drives the power bracket negative; the "
                            "bound is undefined");
  }
  const double rhs = std::pow(rt.sum(), 1.0 / hp.p) *
                     std::pow(bracket, 1.0 / hp.q) /
                     (4.0 * gap_power(iv, p));
  return make_report(name, lhs, rhs);
}

}  // namespace

BoundReport bound_mr4(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      const FracParams& p, const HolderParams& hp,
                      const QuadSpec& spec, bool check_preconditions) {
  return mr4_impl(g, eta, iv, p, hp, spec, check_preconditions, true, "mr4");
}

BoundReport bound_mr4_stated(const RealFn& g, const EtaFn& eta,
                             const Interval& iv, const FracParams& p,
                             const HolderParams& hp, const QuadSpec& spec,
                             bool check_preconditions) {
  return mr4_impl(g, eta, iv, p, hp, spec, check_preconditions, false,
                  "mr4_stated");
}

BoundReport bound_kka(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      double alpha, const QuadSpec& spec,
                      bool check_preconditions) {
  const FracParams classic{alpha, 1.0, 0.0};
  validate_operator_domain(iv, classic);
  if (check_preconditions) {
    require_eta_convex(abs_deriv(g, iv), eta, iv, "kka");
  }
  const double w = iv.width();
  const double pair = frac_left(g, iv.b, iv.a, classic, spec) +
                      frac_right(g, iv.a, iv.b, classic, spec);
  const double mean =
      k_gamma_shifted(alpha, 1.0) / (2.0 * std::pow(w, alpha)) * pair;
  const double trap = 0.5 * (fn_val(g, iv.a) + fn_val(g, iv.b));
  const double lhs = std::fabs(trap - mean);
  auto gd = derivative_on(g, iv);
  const double da = std::fabs(gd(iv.a));
  const double db = std::fabs(gd(iv.b));
  const double rhs = w / (2.0 * (alpha + 1.0)) *
                     (1.0 - std::pow(2.0, -alpha)) *
                     (2.0 * db + eta_val(eta, da, db));
  return make_report("kka", lhs, rhs);
}

std::pair<BoundReport, BoundReport> bound_amt(const RealFn& g,
                                              const Interval& iv,
                                              const FracParams& p,
                                              const QuadSpec& spec,
                                              bool check_preconditions) {
  validate_operator_domain(iv, p);
  if (check_preconditions) {
    require_convex(g, iv, "amt");
  }
  const double mean = normalized_frac_mean(g, iv, p, spec);
  const double left_lhs = fn_val(g, iv.midpoint());
  const double trap = 0.5 * (fn_val(g, iv.a) + fn_val(g, iv.b));
  return {make_report("amt(left)", left_lhs, mean),
          make_report("amt(right)", mean, trap)};
}

std::pair<BoundReport, BoundReport> bound_classic_hh(const RealFn& g,
                                                     const Interval& iv,
                                                     const QuadSpec& spec,
                                                     bool check_preconditions) {
  validate(iv);
  if (check_preconditions) {
    require_convex(g, iv, "hh1");
  }
  const double mean = integral_mean(g, iv, spec);
  const double left_lhs = fn_val(g, iv.midpoint());
  const double trap = 0.5 * (fn_val(g, iv.a) + fn_val(g, iv.b));
  return {make_report("hh1(left)", left_lhs, mean),
          make_report("hh1(right)", mean, trap)};
}

std::pair<BoundReport, BoundReport> bound_eta_hh(const RealFn& g,
                                                 const EtaFn& eta,
                                                 const Interval& iv,
                                                 const QuadSpec& spec,
                                                 bool check_preconditions) {
  validate(iv);
  if (check_preconditions) {
    require_eta_convex(g, eta, iv, "eta_hh");
  }
  const double mean = integral_mean(g, iv, spec);
  const double m_eta = eta_upper_bound(eta, g, iv, 64);
  const double left_lhs = 2.0 * fn_val(g, iv.midpoint()) - m_eta;
  const double rhs_right =
      fn_val(g, iv.b) + 0.5 * eta_val(eta, fn_val(g, iv.a), fn_val(g, iv.b));
  return {make_report("eta_hh(left)", left_lhs, mean),
          make_report("eta_hh(right)", mean, rhs_right)};
}

namespace {

BoundReport ds_impl(const RealFn& g, const EtaFn& eta, const Interval& iv,
                    const QuadSpec& spec, bool check_preconditions,
                    bool abs_args, const char* name) {
  validate(iv);
  if (check_preconditions) {
    require_eta_convex(abs_deriv(g, iv), eta, iv, name);
  }
  const double mean = integral_mean(g, iv, spec);
  const double trap = 0.5 * (fn_val(g, iv.a) + fn_val(g, iv.b));
  const double lhs = std::fabs(trap - mean);
  auto gd = derivative_on(g, iv);
  const double da = gd(iv.a);
  const double db = gd(iv.b);
  const double ua = abs_args ? std::fabs(da) : da;
  const double ub = abs_args ? std::fabs(db) : db;
  const double k1 = std::fabs(db) + 0.5 * std::fabs(eta_val(eta, ua, ub));
  const double k2 = std::fabs(da) + 0.5 * std::fabs(eta_val(eta, ub, ua));
  const double rhs = iv.width() * std::min(k1, k2) / 8.0;
  return make_report(name, lhs, rhs);
}

}  // namespace

BoundReport bound_ds(const RealFn& g, const EtaFn& eta, const Interval& iv,
                     const QuadSpec& spec, bool check_preconditions) {
  return ds_impl(g, eta, iv, spec, check_preconditions, true, "ds");
}

BoundReport bound_ds_signed(const RealFn& g, const EtaFn& eta,
                            const Interval& iv, const QuadSpec& spec,
                            bool check_preconditions) {
  return ds_impl(g, eta, iv, spec, check_preconditions, false, "ds_signed");
}

}  // namespace frachh
