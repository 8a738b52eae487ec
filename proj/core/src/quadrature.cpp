#include "frachh/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "frachh/errors.hpp"

namespace frachh {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kOflow = std::numeric_limits<double>::max();
constexpr double kUflow = std::numeric_limits<double>::min();
constexpr double kHalfPi = 1.57079632679489661923;

// Shared policy for a non-finite integrand value: a divergence within a few
// ulps of an endpoint is integrable garbage (its quadrature weight is
// negligible) and is dropped; anything further in is a genuine error.
struct EvalPolicy {
  double drop_below;  // distance threshold for dropping non-finite values

  double check(double v, double x, double dist) const {
    if (std::isfinite(v)) return v;
    if (dist <= drop_below) return 0.0;
    throw EvaluationError("integrand returned a non-finite value", x);
  }
};

double drop_threshold(double lo, double hi) {
  return 8.0 * kEps * (std::fabs(lo) + std::fabs(hi) + (hi - lo));
}

// ---------------------------------------------------------------------------
// tanh-sinh (double exponential)
// ---------------------------------------------------------------------------
//
// x(u) = mid + half*tanh(w), w = (pi/2)*sinh(u). Nodes are formed as
// x = endpoint -/+ delta with delta = half*(1 - |tanh(w)|) computed from
// exp(-2w), which stays accurate down to delta ~ 1e-300 instead of being
// absorbed by mid + half*tanh(w) rounding.

struct DeNode {
  double delta;   // distance from the nearer endpoint; 0 => skip entirely
  double weight;  // x'(u) (without the step h)
};

DeNode de_node(double u, double half) {
  const double w = kHalfPi * std::sinh(u);
  if (2.0 * w > 744.0) return {0.0, 0.0};  // exp(-2w) underflows: past the grid
  const double e2w = std::exp(-2.0 * w);
  const double delta = half * 2.0 * e2w / (1.0 + e2w);
  const double sech2 = 4.0 * e2w / ((1.0 + e2w) * (1.0 + e2w));
  const double weight = half * kHalfPi * std::cosh(u) * sech2;
  return {delta, weight};
}

QuadResult tanh_sinh(const Integrand& f, double lo, double hi,
                     const QuadSpec& spec, std::int64_t& evals) {
  const double half = 0.5 * (hi - lo);
  const double mid = lo + half;
  const EvalPolicy policy{drop_threshold(lo, hi)};

  constexpr double kTrunc = 5e-17;  // outward truncation, relative to the sum
  constexpr double kUmax = 7.5;     // hard cap on |u| (delta underflows before)

  auto eval = [&](double x, double dist) {
    ++evals;
    return policy.check(f(x), x, dist);
  };

  // One symmetric pair of nodes at +/- u; returns its (unstepped) term.
  auto pair_term = [&](double u) -> double {
    const DeNode n = de_node(u, half);
    if (n.delta <= 0.0) return 0.0;
    const double x_hi = hi - n.delta;
    const double x_lo = lo + n.delta;
    return n.weight * (eval(x_hi, n.delta) + eval(x_lo, n.delta));
  };

  // Level 0: step h = 1, nodes at u = 0, +/-1, +/-2, ...
  double raw = de_node(0.0, half).weight * eval(mid, half);
  {
    int small = 0;
    for (int j = 1; j * 1.0 <= kUmax && small < 2; ++j) {
      const double term = pair_term(static_cast<double>(j));
      raw += term;
      if (std::fabs(term) <= kTrunc * std::fabs(raw)) {
        ++small;
      } else {
        small = 0;
      }
    }
  }

  double h = 1.0;
  double s_prev2 = 0.0;
  double s_prev = raw;  // h = 1
  double s_cur = s_prev;
  double err = kOflow;

  for (int level = 1; level <= spec.max_levels; ++level) {
    h *= 0.5;
    // New nodes of this level sit at odd multiples of h.
    double newsum = 0.0;
    int small = 0;
    for (long j = 1; j * h <= kUmax && small < 2; j += 2) {
      const double term = pair_term(static_cast<double>(j) * h);
      newsum += term;
      if (std::fabs(term) <= kTrunc * (std::fabs(raw) + std::fabs(newsum))) {
        ++small;
      } else {
        small = 0;
      }
    }
    raw += newsum;

    s_prev2 = s_prev;
    s_prev = s_cur;
    s_cur = h * raw;

    const double d1 = std::fabs(s_cur - s_prev);
    if (level >= 2) {
      if (d1 == 0.0) {
        err = 0.5 * kEps * std::fabs(s_cur);
      } else {
        const double d2 = std::fabs(s_prev - s_prev2);
        // Geometric decay estimate: next difference ~ d1 * (d1/d2).
        err = (d2 > d1) ? d1 * (d1 / d2) : d1;
        err = std::max(err, 0.5 * kEps * std::fabs(s_cur));
      }
      const double tol =
          std::max(spec.abs_tol, spec.rel_tol * std::fabs(s_cur));
      if (err <= tol) {
        return {s_cur, err, evals, true};
      }
    } else {
      err = d1;
    }
  }
  return {s_cur, err, evals, false};
}

// ---------------------------------------------------------------------------
// 15-point Gauss-Kronrod cell rule
// ---------------------------------------------------------------------------

// Abscissae/weights of the 15-point Kronrod rule and embedded 7-point Gauss
// rule on [-1, 1].
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

struct CellEstimate {
  double val = 0.0;
  double err = 0.0;
};

CellEstimate gk15(const Integrand& f, double lo, double hi,
                  const EvalPolicy& policy, std::int64_t& evals) {
  const double centr = 0.5 * (lo + hi);
  const double hlgth = 0.5 * (hi - lo);

  auto eval = [&](double x) {
    ++evals;
    const double dist = std::min(x - lo, hi - x);
    return policy.check(f(x), x, dist);
  };

  double fv1[7];
  double fv2[7];
  const double fc = eval(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = eval(centr - absc);
    const double f2 = eval(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    const double fsum = f1 + f2;
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::fabs(f1) + std::fabs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = eval(centr - absc);
    const double f2 = eval(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    const double fsum = f1 + f2;
    resk += kWgk[jtwm1] * fsum;
    resabs += kWgk[jtwm1] * (std::fabs(f1) + std::fabs(f2));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }
  const double result = resk * hlgth;
  resabs *= std::fabs(hlgth);
  resasc *= std::fabs(hlgth);
  double abserr = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  if (resabs > kUflow / (50.0 * kEps)) {
    abserr = std::max(kEps * 50.0 * resabs, abserr);
  }
  return {result, abserr};
}

// ---------------------------------------------------------------------------
// Epsilon (Wynn) extrapolation of a slowly convergent sequence of totals.
// ---------------------------------------------------------------------------

class EpsilonTable {
 public:
  void reset() {
    n_ = 0;
    nres_ = 0;
  }

  // Feed the newest sequence element; returns the current extrapolated value
  // and an error estimate (DBL_MAX until the table has enough history).
  std::pair<double, double> next(double s_new) {
    ++nres_;
    ++n_;
    tab_[n_] = s_new;
    double result = s_new;
    double abserr = kOflow;
    if (n_ < 3) return {result, abserr};

    tab_[n_ + 2] = tab_[n_];
    const int newelm = (n_ - 1) / 2;
    tab_[n_] = kOflow;
    const int num = n_;
    int k1 = n_;
    for (int i = 1; i <= newelm; ++i) {
      const int k2 = k1 - 1;
      const int k3 = k1 - 2;
      double res = tab_[k1 + 2];
      const double e0 = tab_[k3];
      const double e1 = tab_[k2];
      const double e2 = res;
      const double e1abs = std::fabs(e1);
      const double delta2 = e2 - e1;
      const double err2 = std::fabs(delta2);
      const double tol2 = std::max(std::fabs(e2), e1abs) * kEps;
      const double delta3 = e1 - e0;
      const double err3 = std::fabs(delta3);
      const double tol3 = std::max(e1abs, std::fabs(e0)) * kEps;
      if (err2 <= tol2 && err3 <= tol3) {
        // The sequence has converged to machine accuracy.
        result = res;
        abserr = std::max(err2 + err3, 5.0 * kEps * std::fabs(result));
        return {result, abserr};
      }
      const double e3 = tab_[k1];
      tab_[k1] = e1;
      const double delta1 = e1 - e3;
      const double err1 = std::fabs(delta1);
      const double tol1 = std::max(e1abs, std::fabs(e3)) * kEps;
      // A degenerate difference makes the next column unreliable: stop here.
      if (err1 <= tol1 || err2 <= tol2 || err3 <= tol3) {
        n_ = i + i - 1;
        break;
      }
      const double ss = 1.0 / delta1 + 1.0 / delta2 - 1.0 / delta3;
      if (std::fabs(ss * e1) <= 1e-4) {
        n_ = i + i - 1;
        break;
      }
      res = e1 + 1.0 / ss;
      tab_[k1] = res;
      k1 -= 2;
      const double error = err2 + std::fabs(res - e2) + err3;
      if (error <= abserr) {
        abserr = error;
        result = res;
      }
    }

    // Shift the table to make room for the next element.
    if (n_ == kLimexp) n_ = 2 * (kLimexp / 2) - 1;
    int ib = (num % 2 == 0) ? 2 : 1;
    const int ie = newelm + 1;
    for (int i = 1; i <= ie; ++i) {
      const int ib2 = ib + 2;
      tab_[ib] = tab_[ib2];
      ib = ib2;
    }
    if (num != n_) {
      int indx = num - n_ + 1;
      for (int i = 1; i <= n_; ++i) {
        tab_[i] = tab_[indx];
        ++indx;
      }
    }
    // Error estimate: distance to the three previous extrapolated results.
    if (nres_ >= 4) {
      abserr = std::fabs(result - res3la_[3]) +
               std::fabs(result - res3la_[2]) + std::fabs(result - res3la_[1]);
      res3la_[1] = res3la_[2];
      res3la_[2] = res3la_[3];
      res3la_[3] = result;
    } else {
      res3la_[nres_] = result;
      abserr = kOflow;
    }
    return {result, std::max(abserr, 5.0 * kEps * std::fabs(result))};
  }

 private:
  static constexpr int kLimexp = 50;
  double tab_[kLimexp + 3] = {};  // 1-based, indices up to kLimexp + 2
  double res3la_[4] = {};         // 1-based
  int n_ = 0;
  int nres_ = 0;
};

// ---------------------------------------------------------------------------
// adaptive bisection (worst-interval refinement + extrapolation)
// ---------------------------------------------------------------------------

struct Cell {
  double lo, hi;
  double val, err;
  bool at_lo, at_hi;  // whether the cell touches an endpoint of [lo, hi]
};

QuadResult adaptive_bisection(const Integrand& f, double lo, double hi,
                              const QuadSpec& spec, std::int64_t& evals) {
  const EvalPolicy policy{drop_threshold(lo, hi)};
  const std::size_t limit = static_cast<std::size_t>(1)
                            << std::min(spec.max_levels, 20);

  std::vector<Cell> cells;
  cells.reserve(256);
  {
    const CellEstimate e = gk15(f, lo, hi, policy, evals);
    cells.push_back({lo, hi, e.val, e.err, true, true});
  }

  EpsilonTable table;
  double ex_val = 0.0;
  double ex_err = kOflow;  // includes the frozen interior error
  bool ex_valid = false;
  table.next(cells[0].val);

  auto bisectable = [](const Cell& c) {
    return (c.hi - c.lo) > 50.0 * kEps * (std::fabs(c.lo) + std::fabs(c.hi));
  };

  while (true) {
    double area = 0.0;
    double errsum = 0.0;
    for (const Cell& c : cells) {
      area += c.val;
      errsum += c.err;
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(area));
    if (errsum <= tol) {
      return {area, errsum, evals, true};
    }
    if (ex_valid &&
        ex_err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(ex_val))) {
      return {ex_val, ex_err, evals, true};
    }
    if (cells.size() >= limit) break;

    std::size_t worst = cells.size();
    double worst_err = -1.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].err > worst_err && bisectable(cells[i])) {
        worst_err = cells[i].err;
        worst = i;
      }
    }
    if (worst == cells.size()) break;  // nothing left that can be refined

    const Cell c = cells[worst];
    const double cm = 0.5 * (c.lo + c.hi);
    const CellEstimate l = gk15(f, c.lo, cm, policy, evals);
    const CellEstimate r = gk15(f, cm, c.hi, policy, evals);
    cells[worst] = {c.lo, cm, l.val, l.err, c.at_lo, false};
    cells.push_back({cm, c.hi, r.val, r.err, false, c.at_hi});

    if (c.at_lo || c.at_hi) {
      // Endpoint refinement: the totals follow the geometric tail of the
      // endpoint behaviour, which is exactly what the table accelerates.
      double total = 0.0;
      double frozen = 0.0;  // error of cells the extrapolation cannot fix
      for (const Cell& cc : cells) {
        total += cc.val;
        if (!cc.at_lo && !cc.at_hi) frozen += cc.err;
      }
      const auto [v, e] = table.next(total);
      if (e < kOflow / 2) {
        ex_val = v;
        ex_err = e + frozen;
        ex_valid = true;
      }
    } else {
      // Interior refinement shifts the limit of the totals sequence:
      // restart the table from the current state.
      table.reset();
      ex_valid = false;
      double total = 0.0;
      for (const Cell& cc : cells) total += cc.val;
      table.next(total);
    }
  }

  double area = 0.0;
  double errsum = 0.0;
  for (const Cell& c : cells) {
    area += c.val;
    errsum += c.err;
  }
  if (ex_valid && ex_err < errsum) {
    const bool ok =
        ex_err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(ex_val));
    return {ex_val, ex_err, evals, ok};
  }
  return {area, errsum, evals, false};
}

// ---------------------------------------------------------------------------
// power substitution
// ---------------------------------------------------------------------------

QuadResult power_substitution(const Integrand& f, double lo, double hi,
                              const QuadSpec& spec, std::int64_t& evals) {
  if (spec.singular_end == SingularEnd::none) {
    throw DomainError(
        "power_substitution requires a declared singular endpoint");
  }
  if (!(spec.singular_exponent > -1.0)) {
    throw DomainError("power_substitution exponent must be > -1, got " +
                      std::to_string(spec.singular_exponent));
  }
  const double s = spec.singular_exponent + 1.0;  // in (0, 1] typically
  const double q = 1.0 / s;
  const double width = hi - lo;
  const double upper = std::pow(width, s);
  const bool at_lower = spec.singular_end == SingularEnd::lower;
  const EvalPolicy policy{drop_threshold(lo, hi)};

  // u = dist^s  =>  dist = u^q, dt = q u^(q-1) du; (dist)^p * dt is exactly
  // regular in u for the declared p. Non-finite f is judged in t-space.
  auto g = [&](double u) -> double {
    const double dist = std::pow(u, q);
    const double t = at_lower ? lo + dist : hi - dist;
    const double jac = q * std::pow(u, q - 1.0);
    ++evals;
    return policy.check(f(t), t, dist) * jac;
  };

  QuadSpec inner = spec;
  inner.scheme = QuadScheme::double_exponential;
  inner.singular_end = SingularEnd::none;
  std::int64_t inner_evals = 0;
  QuadResult res = tanh_sinh(g, 0.0, upper, inner, inner_evals);
  res.evaluations = evals;
  return res;
}

}  // namespace

QuadResult integrate(const Integrand& f, double lo, double hi,
                     const QuadSpec& spec) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("integration endpoints must be finite");
  }
  if (!(lo < hi)) {
    throw DomainError("integration requires lo < hi");
  }
  if (!(spec.abs_tol >= 0.0) || !(spec.rel_tol >= 0.0) ||
      (spec.abs_tol == 0.0 && spec.rel_tol == 0.0)) {
    throw DomainError("tolerances must be nonnegative and not both zero");
  }
  if (spec.max_levels < 2 || spec.max_levels > 20) {
    throw DomainError("max_levels must be in [2, 20]");
  }

  std::int64_t evals = 0;
  switch (spec.scheme) {
    case QuadScheme::double_exponential: {
      QuadResult r = tanh_sinh(f, lo, hi, spec, evals);
      r.evaluations = evals;
      return r;
    }
    case QuadScheme::adaptive_bisection:
      return adaptive_bisection(f, lo, hi, spec, evals);
    case QuadScheme::power_substitution:
      return power_substitution(f, lo, hi, spec, evals);
  }
  throw DomainError("unknown quadrature scheme");
}

}  // namespace frachh
