#pragma once

#include <string>
#include <utility>

#include "frachh/etaconvex.hpp"
#include "frachh/operators.hpp"
#include "frachh/quadrature.hpp"
#include "frachh/realfn.hpp"

namespace frachh {

// Conjugate Hoelder exponents: p > 1, q > 1, 1/p + 1/q = 1.
struct HolderParams {
  double p = 2.0;
  double q = 2.0;
};

// Throws DomainError unless p, q > 1 and |1/p + 1/q - 1| <= 1e-12.
void validate(const HolderParams& hp);

// Verification tolerance: a bound "holds" when
//   margin = rhs - lhs >= -kVerifyTol * (1 + max(|lhs|, |rhs|)),
// and an identity "holds" when |rhs - lhs| is within the same scale.
inline constexpr double kVerifyTol = 1e-7;
bool bound_holds(double lhs, double rhs);
bool identity_holds(double lhs, double rhs);

// One verified inequality or identity: lhs (<=) rhs with margin = rhs - lhs.
struct BoundReport {
  std::string theorem;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = false;
};

// ---------------------------------------------------------------------------
// kernel and its integral decompositions
// ---------------------------------------------------------------------------

// The four-term difference kernel on t in [0, 1] (e = alpha/k, s = r+1,
// with tau1 = ta+(1-t)b and tau2 = tb+(1-t)a):
//   theta(t) = (tau1^s - a^s)^e - (tau2^s - a^s)^e
//            + (b^s - tau2^s)^e - (b^s - tau1^s)^e.
// Antisymmetric about 1/2, theta(1/2) = 0 exactly,
// theta(0) = +2 (b^s - a^s)^e, theta(1) = -2 (b^s - a^s)^e.
double theta(double t, const Interval& iv, const FracParams& p);

// integral_0^1 |theta| dt and integral_0^1 t |theta| dt, each split at the
// sign change t = 1/2. Throw ConvergenceError if a quadrature fails.
double theta_abs_integral(const Interval& iv, const FracParams& p,
                          const QuadSpec& spec = {});
double theta_abs_t_integral(const Interval& iv, const FracParams& p,
                            const QuadSpec& spec = {});

// (integral_0^1 |theta|^p dt)^(1/p), p > 1.
double theta_p_norm(const Interval& iv, const FracParams& p, double norm_p,
                    const QuadSpec& spec = {});

// Half-interval decompositions of the kernel integrals in the window
// variable w: sum()/ (b-a) equals theta_abs_integral, and the weighted
// version sum() / (b-a)^2 equals theta_abs_t_integral. Each term is the
// stated difference of two integrals, all computed as written.
struct RTerms {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
  double sum() const { return r1 + r2 + r3 + r4; }
};
struct XiTerms {
  double xi1 = 0.0, xi2 = 0.0, xi3 = 0.0, xi4 = 0.0;
  double sum() const { return xi1 + xi2 + xi3 + xi4; }
};
RTerms R_terms(const Interval& iv, const FracParams& p,
               const QuadSpec& spec = {});
XiTerms Xi_terms(const Interval& iv, const FracParams& p,
                 const QuadSpec& spec = {});

// ---------------------------------------------------------------------------
// identity sides
// ---------------------------------------------------------------------------

// Trapezoid-minus-average identity:
//   lhs = (g(a)+g(b))/2 - normalized_frac_mean(g)
//   rhs = (b-a) / (4 (b^(r+1)-a^(r+1))^(alpha/k)) *
//         integral_0^1 theta(t) g'(ta+(1-t)b) dt
double lemma1_lhs(const RealFn& g, const Interval& iv, const FracParams& p,
                  const QuadSpec& spec = {});
double lemma1_rhs(const RealFn& g, const Interval& iv, const FracParams& p,
                  const QuadSpec& spec = {});

// Plain integral mean of g over [a, b].
double integral_mean(const RealFn& g, const Interval& iv,
                     const QuadSpec& spec = {});

// ---------------------------------------------------------------------------
// verified bounds
// ---------------------------------------------------------------------------
//
// Every bound_* evaluates its theorem's two sides numerically and reports
// lhs, rhs, margin and holds. With check_preconditions (the default) the
// theorem's hypotheses are first verified by sampling (grid 32) and a
// failure raises PreconditionError; callers that have already verified the
// hypotheses pass false. Quadrature failures raise ConvergenceError.

// Fractional comparison-mean upper bound ("mr1"): for positive eta-convex g,
//   normalized_frac_mean(g) <= g(b) + eta(g(a), g(b)) / 2.
BoundReport bound_mr1(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      const FracParams& p, const QuadSpec& spec = {},
                      bool check_preconditions = true);

// Trapezoid-deviation bound ("mr2"): for |g'| eta-convex,
//   |lemma1_lhs| <= [R |g'(b)| + (Xi/(b-a)) eta(|g'(a)|, |g'(b)|)] / (4 D),
// D = (b^(r+1)-a^(r+1))^(alpha/k). The R and Xi decompositions are
// cross-checked against direct kernel integrals before use.
BoundReport bound_mr2(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      const FracParams& p, const QuadSpec& spec = {},
                      bool check_preconditions = true);

// Hoelder bound ("mr3"): for |g'|^q eta-convex,
//   |lemma1_lhs| <= (b-a)/(4D) * (|g'(b)|^q + eta(|g'(a)|^q,|g'(b)|^q)/2)^(1/q)
//                   * ||theta||_p.
BoundReport bound_mr3(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      const FracParams& p, const HolderParams& hp,
                      const QuadSpec& spec = {},
                      bool check_preconditions = true);

// Power-mean bound ("mr4"), in the reading consistent with its derivation
// (the R factor appears inside the q-bracket):
//   |lemma1_lhs| <= R^(1/p)/(4D) *
//                   [R |g'(b)|^q + (Xi/(b-a)) eta(|g'(a)|^q,|g'(b)|^q)]^(1/q).
BoundReport bound_mr4(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      const FracParams& p, const HolderParams& hp,
                      const QuadSpec& spec = {},
                      bool check_preconditions = true);

// The same bound as literally displayed (no R on the |g'(b)|^q term),
// reported side by side with bound_mr4 for comparison.
BoundReport bound_mr4_stated(const RealFn& g, const EtaFn& eta,
                             const Interval& iv, const FracParams& p,
                             const HolderParams& hp, const QuadSpec& spec = {},
                             bool check_preconditions = true);

// Classical-operator trapezoid bound ("kka", k = 1, r = 0): for |g'|
// eta-convex,
//   |(g(a)+g(b))/2 - Gamma(alpha+1)/(2(b-a)^alpha) [J_left g(b) + J_right g(a)]|
//   <= (b-a)/(2(alpha+1)) (1 - 2^-alpha) (2|g'(b)| + eta(|g'(a)|,|g'(b)|)).
BoundReport bound_kka(const RealFn& g, const EtaFn& eta, const Interval& iv,
                      double alpha, const QuadSpec& spec = {},
                      bool check_preconditions = true);

// Two-sided fractional mean bounds for convex g ("amt"):
//   g((a+b)/2) <= normalized_frac_mean(g) <= (g(a)+g(b))/2.
std::pair<BoundReport, BoundReport> bound_amt(const RealFn& g,
                                              const Interval& iv,
                                              const FracParams& p,
                                              const QuadSpec& spec = {},
                                              bool check_preconditions = true);

// Classical two-sided mean bounds for convex g ("hh1"):
//   g((a+b)/2) <= integral_mean(g) <= (g(a)+g(b))/2.
std::pair<BoundReport, BoundReport> bound_classic_hh(
    const RealFn& g, const Interval& iv, const QuadSpec& spec = {},
    bool check_preconditions = true);

// Two-sided comparison-mean bounds for eta-convex g ("eta_hh"):
//   2 g((a+b)/2) - M <= integral_mean(g) <= g(b) + eta(g(a), g(b))/2,
// with M the sampled upper bound of eta over the image rectangle.
std::pair<BoundReport, BoundReport> bound_eta_hh(const RealFn& g,
                                                 const EtaFn& eta,
                                                 const Interval& iv,
                                                 const QuadSpec& spec = {},
                                                 bool check_preconditions =
                                                     true);

// Eighth-rule trapezoid bound ("ds"): |g'| eta-convex,
//   |(g(a)+g(b))/2 - integral_mean(g)| <= (b-a) K / 8.
// bound_ds feeds eta the magnitudes |g'(a)|, |g'(b)| (the reading used for
// reporting); bound_ds_signed feeds the signed derivatives as displayed.
// This bound can genuinely fail; it is reported, not asserted.
BoundReport bound_ds(const RealFn& g, const EtaFn& eta, const Interval& iv,
                     const QuadSpec& spec = {},
                     bool check_preconditions = true);
BoundReport bound_ds_signed(const RealFn& g, const EtaFn& eta,
                            const Interval& iv, const QuadSpec& spec = {},
                            bool check_preconditions = true);

}  // namespace frachh
