#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "frachh/errors.hpp"
#include "frachh/inequalities.hpp"
#include "frachh/registry.hpp"
#include "test_util.hpp"

using namespace frachh;
using frachh::testutil::rel_err;

namespace {

const Interval kUnit{0.0, 1.0};
const FracParams kClassical{1.0, 1.0, 0.0};

// Closed forms of the kernel integrals at k = 1, r = 0 on any [a, b]:
//   integral_0^1 |theta|   = 4 (b-a)^alpha (1 - 2^-alpha) / (alpha+1)
//   integral_0^1 t |theta| = 2 (b-a)^alpha (1 - 2^-alpha) / (alpha+1)
double classical_abs_theta(const Interval& iv, double alpha) {
  return 4.0 * std::pow(iv.width(), alpha) *
         (1.0 - std::pow(2.0, -alpha)) / (alpha + 1.0);
}

}  // namespace

TEST_CASE("theta has the pinned endpoint and symmetry structure") {
  const Interval iv{0.2, 1.7};
  for (double alpha : {0.5, 1.0, 2.5}) {
    for (double k : {0.5, 1.0, 2.0}) {
      for (double r : {-0.5, 0.0, 2.0}) {
        CAPTURE(alpha);
        CAPTURE(k);
        CAPTURE(r);
        const FracParams p{alpha, k, r};
        const double e = alpha / k;
        const double s = r + 1.0;
        const double gap =
            std::pow(std::pow(iv.b, s) - std::pow(iv.a, s), e);

        CHECK(rel_err(theta(0.0, iv, p), 2.0 * gap) < 1e-12);
        CHECK(rel_err(theta(1.0, iv, p), -2.0 * gap) < 1e-12);
        CHECK(theta(0.5, iv, p) == 0.0);
        for (double t : {0.05, 0.21, 0.4, 0.77}) {
          CAPTURE(t);
          CHECK(std::fabs(theta(t, iv, p) + theta(1.0 - t, iv, p)) <
                1e-12 * (1.0 + std::fabs(theta(t, iv, p))));
        }
      }
    }
  }
}

TEST_CASE("theta rejects arguments outside its domain") {
  CHECK_THROWS_AS(theta(-0.1, kUnit, kClassical), DomainError);
  CHECK_THROWS_AS(theta(1.1, kUnit, kClassical), DomainError);
  CHECK_THROWS_AS(theta(0.5, Interval{-0.5, 1.0}, kClassical), DomainError);
  CHECK_THROWS_AS(theta(0.5, kUnit, FracParams{0.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("kernel integrals match their classical closed forms") {
  for (const Interval& iv : {Interval{0.0, 1.0}, Interval{0.1, 1.1}}) {
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
      CAPTURE(iv.a);
      CAPTURE(alpha);
      const FracParams p{alpha, 1.0, 0.0};
      const double want = classical_abs_theta(iv, alpha);
      CHECK(rel_err(theta_abs_integral(iv, p), want) < 1e-10);
      // By the t <-> 1-t antisymmetry the weighted integral is half the
      // plain one.
      CHECK(rel_err(theta_abs_t_integral(iv, p), 0.5 * want) < 1e-10);
    }
  }
}

TEST_CASE("the classical p-norm of theta is explicit") {
  // theta(t) = 2(1-2t) at alpha = k = 1, r = 0 on [0,1], so
  // ||theta||_p = 2 / (p+1)^(1/p).
  for (double p : {2.0, 3.0, 1.5}) {
    CAPTURE(p);
    CHECK(rel_err(theta_p_norm(kUnit, kClassical, p),
                  2.0 * std::pow(p + 1.0, -1.0 / p)) < 1e-10);
  }
}

TEST_CASE("the half-window decompositions reproduce the kernel integrals") {
  SUBCASE("classical values are exact quarters") {
    const RTerms R = R_terms(kUnit, kClassical);
    CHECK(rel_err(R.r1, 0.25) < 1e-11);
    CHECK(rel_err(R.r2, 0.25) < 1e-11);
    CHECK(rel_err(R.r3, 0.25) < 1e-11);
    CHECK(rel_err(R.r4, 0.25) < 1e-11);
    const XiTerms X = Xi_terms(kUnit, kClassical);
    CHECK(rel_err(X.xi1, 0.25) < 1e-11);
    CHECK(std::fabs(X.xi2) < 1e-11);
    CHECK(rel_err(X.xi3, 0.25) < 1e-11);
    CHECK(std::fabs(X.xi4) < 1e-11);
    CHECK(rel_err(X.sum(), 0.5) < 1e-11);
  }
  SUBCASE("fractional parameters agree with the direct integrals") {
    const Interval iv{0.2, 1.2};
    for (const FracParams& p :
         {FracParams{0.5, 2.0, 1.0}, FracParams{2.5, 1.0, -0.5},
          FracParams{1.5, 0.5, 2.0}}) {
      CAPTURE(p.alpha);
      CAPTURE(p.k);
      CAPTURE(p.r);
      const double w = iv.width();
      CHECK(rel_err(R_terms(iv, p).sum() / w, theta_abs_integral(iv, p)) <
            1e-8);
      CHECK(rel_err(Xi_terms(iv, p).sum() / (w * w),
                    theta_abs_t_integral(iv, p)) < 1e-8);
    }
  }
}

TEST_CASE("the trapezoid identity balances classically at one sixth") {
  const RealFn sq = make_named_fn("square");
  // (g(0)+g(1))/2 - mean = 1/2 - 1/3 on [0,1], and the kernel side agrees.
  CHECK(rel_err(lemma1_lhs(sq, kUnit, kClassical), 1.0 / 6.0) < 1e-10);
  CHECK(rel_err(lemma1_rhs(sq, kUnit, kClassical), 1.0 / 6.0) < 1e-10);
}

TEST_CASE("the trapezoid identity balances at fractional parameters") {
  const RealFn g = make_named_fn("cube_plus_x");
  const Interval iv{0.2, 1.2};
  for (const FracParams& p :
       {FracParams{0.5, 2.0, 1.0}, FracParams{2.5, 1.0, 2.0},
        FracParams{1.0, 0.5, -0.5}}) {
    CAPTURE(p.alpha);
    CAPTURE(p.k);
    CAPTURE(p.r);
    const double lhs = lemma1_lhs(g, iv, p);
    const double rhs = lemma1_rhs(g, iv, p);
    CAPTURE(lhs);
    CAPTURE(rhs);
    CHECK(identity_holds(lhs, rhs));
  }
}

TEST_CASE("integral_mean is the plain average") {
  CHECK(rel_err(integral_mean(make_named_fn("square"), kUnit), 1.0 / 3.0) <
        1e-12);
  CHECK(rel_err(integral_mean(make_named_fn("exp"), Interval{-1.0, 2.0}),
                (std::exp(2.0) - std::exp(-1.0)) / 3.0) < 1e-12);
}

TEST_CASE("comparison-mean upper bound reduces to the trapezoid for diff") {
  const RealFn g = make_named_fn("square");
  const EtaFn diff = make_named_eta("diff");
  const Interval iv{0.5, 1.5};
  const BoundReport rep = bound_mr1(g, diff, iv, FracParams{0.5, 2.0, 1.0});
  CHECK(rep.holds);
  CHECK(rep.margin == rep.rhs - rep.lhs);
  // g(b) + (g(a)-g(b))/2 is exactly the trapezoid value.
  CHECK(rel_err(rep.rhs, 0.5 * (g(iv.a) + g(iv.b))) < 1e-12);
}

TEST_CASE("trapezoid-deviation bounds hold on pinned scenarios") {
  const RealFn g = make_named_fn("cube_plus_x");
  const EtaFn diff = make_named_eta("diff");
  const Interval iv{0.1, 1.1};
  const FracParams p{0.5, 2.0, 1.0};
  const HolderParams hp{2.0, 2.0};

  const BoundReport m2 = bound_mr2(g, diff, iv, p);
  CHECK(m2.holds);
  const BoundReport m3 = bound_mr3(g, diff, iv, p, hp);
  CHECK(m3.holds);
  const BoundReport m4 = bound_mr4(g, diff, iv, p, hp);
  CHECK(m4.holds);
  // All three bound the same deviation.
  CHECK(rel_err(m3.lhs, m2.lhs) < 1e-12);
  CHECK(rel_err(m4.lhs, m2.lhs) < 1e-12);
}

TEST_CASE("the classical-operator bound matches the general one at k=1,r=0") {
  const RealFn g = make_named_fn("cube_plus_x");
  const EtaFn diff = make_named_eta("diff");
  const Interval iv{0.1, 1.1};
  for (double alpha : {0.5, 2.0}) {
    CAPTURE(alpha);
    const BoundReport kka = bound_kka(g, diff, iv, alpha);
    const BoundReport mr2 = bound_mr2(g, diff, iv, FracParams{alpha, 1, 0});
    CHECK(kka.holds);
    CHECK(mr2.holds);
    CHECK(rel_err(kka.lhs, mr2.lhs) < 1e-9);
    CHECK(rel_err(kka.rhs, mr2.rhs) < 1e-9);
  }
}

TEST_CASE("the power-mean bound collapses to the linear one as q drops to 1") {
  const RealFn g = make_named_fn("cube_plus_x");
  const EtaFn diff = make_named_eta("diff");
  const Interval iv{0.1, 1.1};
  const FracParams p{0.5, 2.0, 1.0};
  const BoundReport m2 = bound_mr2(g, diff, iv, p);
  const double big_p = 1e9;
  const BoundReport m4 =
      bound_mr4(g, diff, iv, p, HolderParams{big_p, big_p / (big_p - 1.0)});
  CHECK(rel_err(m4.rhs, m2.rhs) < 1e-8);
}

TEST_CASE("the two power-mean readings genuinely differ") {
  // At alpha = 2.5, k = 1, r = 2 on [0.1, 1.1] with p = q = 2 the derivation
  // reading holds comfortably while the as-displayed one fails; at k = 0.5
  // the displayed q-bracket goes negative and the bound is undefined.
  const RealFn g = make_named_fn("square");
  const EtaFn diff = make_named_eta("diff");
  const Interval iv{0.1, 1.1};
  const HolderParams hp{2.0, 2.0};

  const FracParams violated{2.5, 1.0, 2.0};
  const BoundReport m4 = bound_mr4(g, diff, iv, violated, hp);
  CHECK(m4.holds);
  const BoundReport stated = bound_mr4_stated(g, diff, iv, violated, hp);
  CHECK_FALSE(stated.holds);
  CHECK(stated.lhs == doctest::Approx(m4.lhs));
  CHECK(stated.rhs < stated.lhs);

  const FracParams undefined{2.5, 0.5, 2.0};
  CHECK(bound_mr4(g, diff, iv, undefined, hp).holds);
  CHECK_THROWS_AS(bound_mr4_stated(g, diff, iv, undefined, hp),
                  PreconditionError);
}

TEST_CASE("two-sided mean bounds hold for convex functions") {
  const RealFn g = make_named_fn("quartic");
  const Interval iv{0.2, 1.4};

  const auto [hl, hr] = bound_classic_hh(g, iv);
  CHECK(hl.holds);
  CHECK(hr.holds);
  CHECK(rel_err(hl.lhs, g(iv.midpoint())) < 1e-12);
  CHECK(rel_err(hr.rhs, 0.5 * (g(iv.a) + g(iv.b))) < 1e-12);
  // Lower lhs feeds the upper side's lhs: mean appears on both sides.
  CHECK(rel_err(hl.rhs, hr.lhs) < 1e-12);

  const auto [al, ar] = bound_amt(g, iv, FracParams{0.5, 2.0, 1.0});
  CHECK(al.holds);
  CHECK(ar.holds);
  CHECK(rel_err(al.rhs, ar.lhs) < 1e-12);
}

TEST_CASE("the comparison-mean two-sided bound covers the flagship pair") {
  const RealFn g = make_named_fn("neg_abs");
  const EtaFn eta = make_named_eta("neg_sum");
  const Interval iv{-1.0, 1.0};
  // The kink of -|x| sits mid-interval, where the endpoint-graded default
  // scheme cannot reach tight tolerances; bisection splits exactly at the
  // kink and is then exact on each linear half.
  QuadSpec spec;
  spec.scheme = QuadScheme::adaptive_bisection;
  const auto [left, right] = bound_eta_hh(g, eta, iv, spec);
  CHECK(left.holds);
  CHECK(right.holds);
  // mean of -|x| over [-1,1] is -1/2; the upper side is g(1) + eta(g(-1),
  // g(1))/2 = -1 + 1 = 0.
  CHECK(rel_err(left.rhs, -0.5) < 1e-12);
  CHECK(rel_err(right.lhs, -0.5) < 1e-12);
  CHECK(std::fabs(right.rhs) < 1e-12);
}

TEST_CASE("the eighth-rule bound genuinely fails where expected") {
  const BoundReport ds =
      bound_ds(make_named_fn("square"), make_named_eta("diff"), kUnit);
  CHECK_FALSE(ds.holds);
  CHECK(rel_err(ds.lhs, 1.0 / 6.0) < 1e-11);
  CHECK(rel_err(ds.rhs, 1.0 / 8.0) < 1e-12);
  CHECK(ds.margin == doctest::Approx(-1.0 / 24.0).epsilon(1e-9));

  // The signed reading feeds eta the signed derivatives; on [0, 1] the
  // derivative of x^2 is nonnegative, so the two readings coincide.
  const BoundReport signed_ds =
      bound_ds_signed(make_named_fn("square"), make_named_eta("diff"), kUnit);
  CHECK(signed_ds.lhs == doctest::Approx(ds.lhs));
  CHECK(signed_ds.rhs == doctest::Approx(ds.rhs));
  CHECK_FALSE(signed_ds.holds);
}

TEST_CASE("bound and identity verdicts use the scaled tolerance") {
  CHECK(bound_holds(1.0, 1.0));
  CHECK(bound_holds(1.0, 1.0 - 1e-8));       // within tolerance slack
  CHECK_FALSE(bound_holds(1.0, 1.0 - 1e-6)); // beyond it
  CHECK(bound_holds(0.0, 1.0));
  CHECK_FALSE(bound_holds(1.0, 0.0));
  CHECK(identity_holds(1e6, 1e6 * (1.0 + 1e-9)));
  CHECK_FALSE(identity_holds(1.0, 1.001));
}

TEST_CASE("conjugate exponent validation") {
  CHECK_NOTHROW(validate(HolderParams{2.0, 2.0}));
  CHECK_NOTHROW(validate(HolderParams{3.0, 1.5}));
  CHECK_THROWS_AS(validate(HolderParams{3.0, 1.4}), DomainError);
  CHECK_THROWS_AS(validate(HolderParams{1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(validate(HolderParams{0.5, -1.0}), DomainError);
}

TEST_CASE("hypothesis failures surface as PreconditionError") {
  const Interval iv{0.1, 1.1};
  // -|x| is not convex: the two-sided means require convexity.
  CHECK_THROWS_AS(bound_classic_hh(make_named_fn("neg_abs"),
                                   Interval{-1.0, 1.0}),
                  PreconditionError);
  // Concave on every interval, so the fractional two-sided bound refuses.
  const RealFn neg_square{[](double x) { return -x * x; },
                          [](double x) { return -2.0 * x; }, "neg_square"};
  CHECK_THROWS_AS(bound_amt(neg_square, iv, kClassical), PreconditionError);
  // mr1 needs positivity: x - 2 is negative on [0.1, 1.1].
  const RealFn negative{[](double x) { return x - 2.0; },
                        [](double) { return 1.0; }, "shifted"};
  CHECK_THROWS_AS(bound_mr1(negative, make_named_eta("diff"), iv, kClassical),
                  PreconditionError);
  // mr2 needs |g'| eta-convex; against eta = 0 that fails for square.
  CHECK_THROWS_AS(bound_mr2(make_named_fn("square"), make_named_eta("zero"),
                            iv, kClassical),
                  PreconditionError);
  // Callers that vouch for the hypotheses skip the check and get a report.
  CHECK_NOTHROW(bound_mr2(make_named_fn("square"), make_named_eta("zero"), iv,
                          kClassical, QuadSpec{}, false));
}
