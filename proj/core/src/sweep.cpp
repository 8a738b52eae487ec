#include "frachh/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frachh/errors.hpp"
#include "frachh/inequalities.hpp"
#include "frachh/numeric.hpp"
#include "frachh/operators.hpp"
#include "frachh/quadrature.hpp"
#include "frachh/registry.hpp"

namespace frachh {
namespace {

constexpr const char* kCsvHeader =
    "scenario_id,theorem,fn,eta,alpha,k,r,a,b,p,q,lhs,rhs,margin,status";

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void config_fail(int lineno, const std::string& what) {
  throw ConfigError("config line " + std::to_string(lineno) + ": " + what);
}

double parse_double_or(const std::string& tok, int lineno,
                       const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    config_fail(lineno, "key '" + key + "': '" + tok + "' is not a number");
  }
}

std::vector<double> parse_doubles(const std::vector<std::string>& items,
                                  int lineno, const std::string& key) {
  std::vector<double> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    out.push_back(parse_double_or(item, lineno, key));
  }
  return out;
}

std::string single_value(const std::vector<std::string>& items, int lineno,
                         const std::string& key) {
  if (items.size() != 1) {
    config_fail(lineno, "key '" + key + "' takes exactly one value");
  }
  return items.front();
}

// Semantic validation shared by parsed and programmatically built configs.
void validate_config(const SweepConfig& c) {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (c.functions.empty()) fail("config requires at least one function");
  if (c.etas.empty()) fail("config requires at least one eta");
  if (c.theorems.empty()) fail("config requires at least one theorem");
  if (c.intervals.empty()) fail("config requires at least one interval");
  for (double a : c.alphas) {
    if (!std::isfinite(a) || !(a > 0.0)) {
      fail("alphas must be finite and > 0, got " + fmt_g(a));
    }
  }
  for (double k : c.ks) {
    if (!std::isfinite(k) || !(k > 0.0)) {
      fail("ks must be finite and > 0, got " + fmt_g(k));
    }
  }
  for (double r : c.rs) {
    if (!std::isfinite(r)) fail("rs must be finite, got " + fmt_g(r));
  }
  for (double p : c.holder_ps) {
    if (!std::isfinite(p) || !(p > 1.0)) {
      fail("holder_p values must be finite and > 1, got " + fmt_g(p));
    }
  }
  for (const auto& [a, b] : c.intervals) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
      fail("intervals must satisfy a < b, got " + fmt_g(a) + ".." + fmt_g(b));
    }
  }
  if (!(c.abs_tol >= 0.0) || !(c.rel_tol >= 0.0) ||
      (c.abs_tol == 0.0 && c.rel_tol == 0.0)) {
    fail("tolerances must be >= 0 and not both zero");
  }
  if (c.max_levels < 2 || c.max_levels > 20) {
    fail("max_levels must be in [2, 20], got " +
         std::to_string(c.max_levels));
  }
  if (c.grid_n < 8) {
    fail("grid_n must be >= 8, got " + std::to_string(c.grid_n));
  }
}

// ---------------------------------------------------------------------------
// hypothesis checks, memoized per (fn, eta, interval [, q])
// ---------------------------------------------------------------------------

RealFn abs_deriv_fn(const RealFn& g, const Interval& iv) {
  auto d = derivative_on(g, iv);
  RealFn out;
  out.label = "|" + g.label + "'|";
  out.eval = [d](double x) { return std::abs(d(x)); };
  return out;
}

RealFn abs_deriv_pow_fn(const RealFn& g, const Interval& iv, double q) {
  auto d = derivative_on(g, iv);
  RealFn out;
  out.label = "|" + g.label + "'|^" + fmt_g(q);
  out.eval = [d, q](double x) { return std::pow(std::abs(d(x)), q); };
  return out;
}

std::string describe_witness(const ConvexityWitness& w) {
  return "x = " + fmt_g(w.x) + ", y = " + fmt_g(w.y) +
         ", beta = " + fmt_g(w.beta) + ", excess = " + fmt_g(w.violation);
}

// Each checker returns a failure description, or nullopt when the
// hypothesis holds.
class HypothesisCache {
 public:
  HypothesisCache(int grid_n, std::uint64_t seed)
      : grid_n_(grid_n), seed_(seed) {}

  std::optional<std::string> convex(const std::string& key, const RealFn& g,
                                    const Interval& iv) {
    return memo(key + "|convex", [&] {
      const EtaFn diff = make_named_eta("diff");
      const ConvexityVerdict v = check_eta_convex(g, diff, iv, grid_n_,
                                                  std::nullopt, seed_);
      if (v.holds) return std::optional<std::string>{};
      return std::optional<std::string>("'" + g.label + "' is not convex (" +
                                        describe_witness(*v.witness) + ")");
    });
  }

  std::optional<std::string> eta_convex(const std::string& key,
                                        const RealFn& g, const EtaFn& eta,
                                        const Interval& iv) {
    return memo(key + "|eta", [&] {
      const ConvexityVerdict v =
          check_eta_convex(g, eta, iv, grid_n_, std::nullopt, seed_);
      if (v.holds) return std::optional<std::string>{};
      return std::optional<std::string>("'" + g.label + "' is not " +
                                        eta.label + "-convex (" +
                                        describe_witness(*v.witness) + ")");
    });
  }

  std::optional<std::string> positive(const std::string& key, const RealFn& g,
                                      const Interval& iv) {
    return memo(key + "|pos", [&] {
      for (double x : chebyshev_points(iv.a, iv.b, 513)) {
        if (!(g(x) > 0.0)) {
          return std::optional<std::string>("'" + g.label +
                                            "' is not positive (g(" +
                                            fmt_g(x) + ") = " + fmt_g(g(x)) +
                                            ")");
        }
      }
      return std::optional<std::string>{};
    });
  }

 private:
  template <typename F>
  std::optional<std::string> memo(const std::string& key, F&& compute) {
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, compute()).first;
    }
    return it->second;
  }

  int grid_n_;
  std::uint64_t seed_;
  std::map<std::string, std::optional<std::string>> cache_;
};

// ---------------------------------------------------------------------------
// per-row evaluation
// ---------------------------------------------------------------------------

void fill_bound(VerificationRow& row, const BoundReport& rep) {
  row.lhs = rep.lhs;
  row.rhs = rep.rhs;
  row.margin = rep.margin;
  row.status = rep.holds ? RowStatus::holds : RowStatus::violated;
}

// Two-sided theorems are condensed to their binding side (smaller margin);
// the row holds only if both sides hold.
void fill_two_sided(VerificationRow& row,
                    const std::pair<BoundReport, BoundReport>& both) {
  const BoundReport& binding =
      both.first.margin <= both.second.margin ? both.first : both.second;
  row.lhs = binding.lhs;
  row.rhs = binding.rhs;
  row.margin = binding.margin;
  row.status = (both.first.holds && both.second.holds) ? RowStatus::holds
                                                       : RowStatus::violated;
}

double identity_scale(double lhs, double rhs) {
  return 1.0 + std::max(std::abs(lhs), std::abs(rhs));
}

// Identities are reported with margin = rhs - lhs; a pair of identities is
// condensed to the one with the larger scaled residual.
void fill_identity(VerificationRow& row, double lhs, double rhs) {
  row.lhs = lhs;
  row.rhs = rhs;
  row.margin = rhs - lhs;
  row.status =
      identity_holds(lhs, rhs) ? RowStatus::holds : RowStatus::violated;
}

void fill_identity_pair(VerificationRow& row, double lhs1, double rhs1,
                        double lhs2, double rhs2) {
  const double res1 = std::abs(rhs1 - lhs1) / identity_scale(lhs1, rhs1);
  const double res2 = std::abs(rhs2 - lhs2) / identity_scale(lhs2, rhs2);
  if (res1 >= res2) {
    row.lhs = lhs1;
    row.rhs = rhs1;
    row.margin = rhs1 - lhs1;
  } else {
    row.lhs = lhs2;
    row.rhs = rhs2;
    row.margin = rhs2 - lhs2;
  }
  row.status = (identity_holds(lhs1, rhs1) && identity_holds(lhs2, rhs2))
                   ? RowStatus::holds
                   : RowStatus::violated;
}

struct Scenario {
  std::int64_t id = 0;
  const FnFactory* fn = nullptr;
  const EtaFactory* eta = nullptr;
  Interval iv;
  FracParams fp;
};

std::string describe(const Scenario& sc) {
  return "fn=" + sc.fn->label + ", eta=" + sc.eta->label + ", [" +
         fmt_g(sc.iv.a) + ", " + fmt_g(sc.iv.b) + "], alpha=" +
         fmt_g(sc.fp.alpha) + ", k=" + fmt_g(sc.fp.k) +
         ", r=" + fmt_g(sc.fp.r);
}

std::optional<std::string> skip_reason(const Scenario& sc) {
  if (!(sc.fp.r > -1.0)) {
    return "r = " + fmt_g(sc.fp.r) +
           " is outside the operator domain (requires r > -1)";
  }
  if (sc.iv.a < 0.0) {
    return "a = " + fmt_g(sc.iv.a) +
           " is outside the operator domain (requires a >= 0)";
  }
  if (sc.iv.a == 0.0 && !nonneg_integer(sc.fp.r)) {
    return "a = 0 requires a nonnegative integer r, got r = " +
           fmt_g(sc.fp.r);
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::hh1:
      return "hh1";
    case TheoremId::eta_hh:
      return "eta_hh";
    case TheoremId::ds:
      return "ds";
    case TheoremId::kka:
      return "kka";
    case TheoremId::amt:
      return "amt";
    case TheoremId::mr1:
      return "mr1";
    case TheoremId::mr2:
      return "mr2";
    case TheoremId::mr3:
      return "mr3";
    case TheoremId::mr4:
      return "mr4";
    case TheoremId::lemma1:
      return "lemma1";
    case TheoremId::lemma2:
      return "lemma2";
    case TheoremId::eq_id:
      return "eq_id";
  }
  return "?";
}

std::optional<TheoremId> theorem_from_string(const std::string& s) {
  static const std::map<std::string, TheoremId> kMap = {
      {"hh1", TheoremId::hh1},       {"eta_hh", TheoremId::eta_hh},
      {"ds", TheoremId::ds},         {"kka", TheoremId::kka},
      {"amt", TheoremId::amt},       {"mr1", TheoremId::mr1},
      {"mr2", TheoremId::mr2},       {"mr3", TheoremId::mr3},
      {"mr4", TheoremId::mr4},       {"lemma1", TheoremId::lemma1},
      {"lemma2", TheoremId::lemma2}, {"eq_id", TheoremId::eq_id},
  };
  const auto it = kMap.find(s);
  if (it == kMap.end()) return std::nullopt;
  return it->second;
}

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::holds:
      return "holds";
    case RowStatus::violated:
      return "violated";
    case RowStatus::precondition_failed:
      return "precondition-failed";
    case RowStatus::skipped:
      return "skipped";
    case RowStatus::nonconverged:
      return "nonconverged";
  }
  return "?";
}

std::optional<RowStatus> status_from_string(const std::string& s) {
  static const std::map<std::string, RowStatus> kMap = {
      {"holds", RowStatus::holds},
      {"violated", RowStatus::violated},
      {"precondition-failed", RowStatus::precondition_failed},
      {"skipped", RowStatus::skipped},
      {"nonconverged", RowStatus::nonconverged},
  };
  const auto it = kMap.find(s);
  if (it == kMap.end()) return std::nullopt;
  return it->second;
}

SweepConfig parse_config(const std::string& text) {
  SweepConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    const std::string line =
        trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      config_fail(lineno, "expected 'key = value, ...', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) config_fail(lineno, "missing key before '='");
    if (!seen.insert(key).second) {
      config_fail(lineno, "duplicate key '" + key + "'");
    }
    std::vector<std::string> items;
    for (const auto& piece : split(line.substr(eq + 1), ',')) {
      const std::string item = trim(piece);
      if (item.empty()) config_fail(lineno, "key '" + key + "': empty value");
      items.push_back(item);
    }

    if (key == "functions") {
      cfg.functions = items;
    } else if (key == "etas") {
      cfg.etas = items;
    } else if (key == "theorems") {
      cfg.theorems.clear();
      for (const auto& item : items) {
        const auto id = theorem_from_string(item);
        if (!id) config_fail(lineno, "unknown theorem '" + item + "'");
        cfg.theorems.push_back(*id);
      }
    } else if (key == "intervals") {
      cfg.intervals.clear();
      for (const auto& item : items) {
        const std::size_t dots = item.find("..");
        if (dots == std::string::npos) {
          config_fail(lineno, "interval '" + item + "' must be 'a..b'");
        }
        const double a = parse_double_or(trim(item.substr(0, dots)), lineno,
                                         key);
        const double b = parse_double_or(trim(item.substr(dots + 2)), lineno,
                                         key);
        cfg.intervals.emplace_back(a, b);
      }
    } else if (key == "alphas") {
      cfg.alphas = parse_doubles(items, lineno, key);
    } else if (key == "ks") {
      cfg.ks = parse_doubles(items, lineno, key);
    } else if (key == "rs") {
      cfg.rs = parse_doubles(items, lineno, key);
    } else if (key == "holder_p") {
      cfg.holder_ps = parse_doubles(items, lineno, key);
    } else if (key == "seed") {
      const std::string tok = single_value(items, lineno, key);
      try {
        std::size_t pos = 0;
        cfg.seed = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        config_fail(lineno, "seed '" + tok + "' is not an unsigned integer");
      }
    } else if (key == "grid_n") {
      const double v = parse_double_or(single_value(items, lineno, key),
                                       lineno, key);
      if (v != std::floor(v) || v < 1.0 || v > 4096.0) {
        config_fail(lineno, "grid_n must be an integer in [1, 4096]");
      }
      cfg.grid_n = static_cast<int>(v);
    } else if (key == "abs_tol") {
      cfg.abs_tol =
          parse_double_or(single_value(items, lineno, key), lineno, key);
    } else if (key == "rel_tol") {
      cfg.rel_tol =
          parse_double_or(single_value(items, lineno, key), lineno, key);
    } else if (key == "max_levels") {
      const double v = parse_double_or(single_value(items, lineno, key),
                                       lineno, key);
      if (v != std::floor(v)) config_fail(lineno, "max_levels: not an integer");
      cfg.max_levels = static_cast<int>(v);
    } else {
      config_fail(lineno, "unknown key '" + key + "'");
    }
  }
  for (const char* required : {"functions", "etas", "theorems", "intervals"}) {
    if (!seen.count(required)) {
      throw ConfigError(std::string("config is missing required key '") +
                        required + "'");
    }
  }
  validate_config(cfg);  // a parsed config is immediately usable
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

SweepResult run_sweep(const SweepConfig& config) {
  validate_config(config);
  const auto fns = resolve_fn_entries(config.functions, config.seed);
  const auto etas = resolve_eta_entries(config.etas, config.seed);

  QuadSpec spec;
  spec.abs_tol = config.abs_tol;
  spec.rel_tol = config.rel_tol;
  spec.max_levels = config.max_levels;

  SweepResult result;
  std::ostringstream log;
  HypothesisCache checks(config.grid_n, config.seed);

  auto emit = [&result](VerificationRow row) {
    result.counts[static_cast<std::size_t>(row.status)]++;
    result.rows.push_back(std::move(row));
  };

  Scenario sc;
  for (std::size_t fi = 0; fi < fns.size(); ++fi) {
    for (std::size_t ei = 0; ei < etas.size(); ++ei) {
      for (std::size_t ii = 0; ii < config.intervals.size(); ++ii) {
        for (double alpha : config.alphas) {
          for (double k : config.ks) {
            for (double r : config.rs) {
              sc.id++;
              sc.fn = &fns[fi];
              sc.eta = &etas[ei];
              sc.iv = {config.intervals[ii].first,
                       config.intervals[ii].second};
              sc.fp = {alpha, k, r};
              result.scenarios_total++;

              VerificationRow base;
              base.scenario_id = sc.id;
              base.fn = sc.fn->label;
              base.eta = sc.eta->label;
              base.alpha = alpha;
              base.k = k;
              base.r = r;
              base.a = sc.iv.a;
              base.b = sc.iv.b;

              const auto skip = skip_reason(sc);
              if (skip) {
                result.scenarios_skipped++;
                log << "scenario " << sc.id << " skipped: " << *skip << " ("
                    << describe(sc) << ")\n";
                for (TheoremId th : config.theorems) {
                  const bool holder =
                      th == TheoremId::mr3 || th == TheoremId::mr4;
                  for (double p :
                       holder ? config.holder_ps : std::vector<double>{0.0}) {
                    VerificationRow row = base;
                    row.theorem = th;
                    if (holder) {
                      row.p = p;
                      row.q = p / (p - 1.0);
                    }
                    row.status = RowStatus::skipped;
                    emit(row);
                  }
                }
                continue;
              }

              const RealFn g = sc.fn->make(sc.iv);
              const EtaFn& eta = sc.eta->eta;
              // Hypothesis checks depend on (fn, eta, interval) but not on
              // (alpha, k, r), so they are memoized across the inner loops.
              const std::string ck = std::to_string(fi) + ":" +
                                     std::to_string(ei) + ":" +
                                     std::to_string(ii);

              for (TheoremId th : config.theorems) {
                const bool holder =
                    th == TheoremId::mr3 || th == TheoremId::mr4;
                for (double p :
                     holder ? config.holder_ps : std::vector<double>{0.0}) {
                  VerificationRow row = base;
                  row.theorem = th;
                  HolderParams hp;
                  if (holder) {
                    hp.p = p;
                    hp.q = p / (p - 1.0);
                    row.p = hp.p;
                    row.q = hp.q;
                  }

                  // Sweep-level hypothesis gate (memoized); the bound
                  // functions then run with their own checks disabled.
                  std::optional<std::string> unmet;
                  try {
                  switch (th) {
                    case TheoremId::hh1:
                    case TheoremId::amt:
                      unmet = checks.convex(ck, g, sc.iv);
                      break;
                    case TheoremId::eta_hh:
                      unmet = checks.eta_convex(ck + "|g", g, eta, sc.iv);
                      break;
                    case TheoremId::mr1:
                      unmet = checks.positive(ck, g, sc.iv);
                      if (!unmet) {
                        unmet = checks.eta_convex(ck + "|g", g, eta, sc.iv);
                      }
                      break;
                    case TheoremId::ds:
                    case TheoremId::kka:
                    case TheoremId::mr2:
                      unmet = checks.eta_convex(ck + "|d",
                                                abs_deriv_fn(g, sc.iv), eta,
                                                sc.iv);
                      break;
                    case TheoremId::mr3:
                    case TheoremId::mr4:
                      unmet = checks.eta_convex(
                          ck + "|d^" + fmt_g(hp.q),
                          abs_deriv_pow_fn(g, sc.iv, hp.q), eta, sc.iv);
                      break;
                    default:
                      break;
                  }
                  } catch (const EvaluationError& ex) {
                    unmet = std::string("hypothesis check failed: ") +
                            ex.what();
                  }
                  if (unmet) {
                    row.status = RowStatus::precondition_failed;
                    log << "scenario " << sc.id << " " << to_string(th)
                        << ": hypothesis not met: " << *unmet << "\n";
                    emit(row);
                    continue;
                  }

                  try {
                    switch (th) {
                      case TheoremId::hh1:
                        fill_two_sided(row,
                                       bound_classic_hh(g, sc.iv, spec,
                                                        false));
                        break;
                      case TheoremId::eta_hh:
                        fill_two_sided(
                            row, bound_eta_hh(g, eta, sc.iv, spec, false));
                        break;
                      case TheoremId::ds: {
                        fill_bound(row, bound_ds(g, eta, sc.iv, spec, false));
                        // The signed-argument reading is informational only;
                        // its failure must not taint the row.
                        try {
                          const BoundReport signed_rep =
                              bound_ds_signed(g, eta, sc.iv, spec, false);
                          log << "scenario " << sc.id
                              << " ds (signed-argument reading): lhs = "
                              << fmt_g(signed_rep.lhs)
                              << ", rhs = " << fmt_g(signed_rep.rhs) << ", "
                              << (signed_rep.holds ? "holds" : "violated")
                              << "\n";
                        } catch (const std::exception& ex) {
                          log << "scenario " << sc.id
                              << " ds (signed-argument reading): "
                              << ex.what() << "\n";
                        }
                        break;
                      }
                      case TheoremId::kka:
                        fill_bound(row, bound_kka(g, eta, sc.iv, sc.fp.alpha,
                                                  spec, false));
                        break;
                      case TheoremId::amt:
                        fill_two_sided(
                            row, bound_amt(g, sc.iv, sc.fp, spec, false));
                        break;
                      case TheoremId::mr1:
                        fill_bound(
                            row, bound_mr1(g, eta, sc.iv, sc.fp, spec, false));
                        break;
                      case TheoremId::mr2:
                        fill_bound(
                            row, bound_mr2(g, eta, sc.iv, sc.fp, spec, false));
                        break;
                      case TheoremId::mr3:
                        fill_bound(row, bound_mr3(g, eta, sc.iv, sc.fp, hp,
                                                  spec, false));
                        break;
                      case TheoremId::mr4: {
                        fill_bound(row, bound_mr4(g, eta, sc.iv, sc.fp, hp,
                                                  spec, false));
                        // The as-displayed reading is informational only;
                        // its failure must not taint the row.
                        try {
                          const BoundReport stated = bound_mr4_stated(
                              g, eta, sc.iv, sc.fp, hp, spec, false);
                          log << "scenario " << sc.id << " mr4 (p = "
                              << fmt_g(hp.p) << "): derivation rhs = "
                              << fmt_g(*row.rhs) << ", displayed rhs = "
                              << fmt_g(stated.rhs) << ", lhs = "
                              << fmt_g(stated.lhs)
                              << (stated.holds ? "" : " (displayed form "
                                                      "violated)")
                              << "\n";
                        } catch (const std::exception& ex) {
                          log << "scenario " << sc.id << " mr4 (p = "
                              << fmt_g(hp.p) << "), displayed form: "
                              << ex.what() << "\n";
                        }
                        break;
                      }
                      case TheoremId::lemma1:
                        fill_identity(row, lemma1_lhs(g, sc.iv, sc.fp, spec),
                                      lemma1_rhs(g, sc.iv, sc.fp, spec));
                        break;
                      case TheoremId::lemma2: {
                        const double w = sc.iv.width();
                        fill_identity_pair(
                            row, R_terms(sc.iv, sc.fp, spec).sum() / w,
                            theta_abs_integral(sc.iv, sc.fp, spec),
                            Xi_terms(sc.iv, sc.fp, spec).sum() / (w * w),
                            theta_abs_t_integral(sc.iv, sc.fp, spec));
                        break;
                      }
                      case TheoremId::eq_id:
                        fill_identity_pair(
                            row, frac_left(g, sc.iv.b, sc.iv.a, sc.fp, spec),
                            frac_left_unit(g, sc.iv.b, sc.iv.a, sc.fp, spec),
                            frac_right(g, sc.iv.a, sc.iv.b, sc.fp, spec),
                            frac_right_unit(g, sc.iv.a, sc.iv.b, sc.fp,
                                            spec));
                        break;
                    }
                  } catch (const PreconditionError& ex) {
                    row.status = RowStatus::precondition_failed;
                    row.lhs.reset();
                    row.rhs.reset();
                    row.margin.reset();
                    log << "scenario " << sc.id << " " << to_string(th)
                        << ": " << ex.what() << "\n";
                  } catch (const ConvergenceError& ex) {
                    row.status = RowStatus::nonconverged;
                    row.lhs.reset();
                    row.rhs.reset();
                    row.margin.reset();
                    log << "scenario " << sc.id << " " << to_string(th)
                        << ": " << ex.what() << "\n";
                  } catch (const EvaluationError& ex) {
                    row.status = RowStatus::nonconverged;
                    row.lhs.reset();
                    row.rhs.reset();
                    row.margin.reset();
                    log << "scenario " << sc.id << " " << to_string(th)
                        << ": " << ex.what() << "\n";
                  }
                  if (row.status == RowStatus::violated) {
                    log << "scenario " << sc.id << " " << to_string(th)
                        << " VIOLATED: lhs = " << fmt_g(*row.lhs)
                        << ", rhs = " << fmt_g(*row.rhs) << " ("
                        << describe(sc) << ")\n";
                  }
                  emit(row);
                }
              }
            }
          }
        }
      }
    }
  }

  log << "rows: " << result.rows.size()
      << " total, " << result.count(RowStatus::holds) << " holds, "
      << result.count(RowStatus::violated) << " violated, "
      << result.count(RowStatus::precondition_failed)
      << " precondition-failed, " << result.count(RowStatus::skipped)
      << " skipped, " << result.count(RowStatus::nonconverged)
      << " nonconverged\n";
  result.log = log.str();
  return result;
}

std::string to_csv(const std::vector<VerificationRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  auto opt = [](const std::optional<double>& v) {
    return v ? fmt_g(*v) : std::string();
  };
  for (const auto& row : rows) {
    out += std::to_string(row.scenario_id);
    out += ',';
    out += to_string(row.theorem);
    out += ',';
    out += row.fn;
    out += ',';
    out += row.eta;
    out += ',';
    out += fmt_g(row.alpha);
    out += ',';
    out += fmt_g(row.k);
    out += ',';
    out += fmt_g(row.r);
    out += ',';
    out += fmt_g(row.a);
    out += ',';
    out += fmt_g(row.b);
    out += ',';
    out += opt(row.p);
    out += ',';
    out += opt(row.q);
    out += ',';
    out += opt(row.lhs);
    out += ',';
    out += opt(row.rhs);
    out += ',';
    out += opt(row.margin);
    out += ',';
    out += to_string(row.status);
    out += '\n';
  }
  return out;
}

void write_csv_file(const std::vector<VerificationRow>& rows,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << to_csv(rows);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<VerificationRow> parse_csv(const std::string& text) {
  auto fail = [](std::size_t line, const std::string& what) {
    throw ConfigError("csv line " + std::to_string(line) + ": " + what);
  };
  if (text.empty() || text.back() != '\n') {
    throw ConfigError("csv must end with a newline");
  }
  std::vector<std::string> lines = split(text, '\n');
  lines.pop_back();  // artifact of the trailing newline
  if (lines.empty()) throw ConfigError("csv has no header");
  if (lines.front() != kCsvHeader) fail(1, "unexpected header");

  auto parse_num = [&fail](const std::string& tok, std::size_t line,
                           const char* what) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail(line, std::string(what) + ": '" + tok + "' is not a number");
    }
    return 0.0;  // unreachable
  };

  std::vector<VerificationRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::vector<std::string> f = split(lines[i], ',');
    if (f.size() != 15) {
      fail(lineno, "expected 15 fields, got " + std::to_string(f.size()));
    }
    VerificationRow row;
    try {
      std::size_t pos = 0;
      row.scenario_id = std::stoll(f[0], &pos);
      if (pos != f[0].size()) throw std::invalid_argument(f[0]);
    } catch (const std::exception&) {
      fail(lineno, "bad scenario_id '" + f[0] + "'");
    }
    const auto th = theorem_from_string(f[1]);
    if (!th) fail(lineno, "unknown theorem '" + f[1] + "'");
    row.theorem = *th;
    if (f[2].empty() || f[3].empty()) fail(lineno, "empty fn or eta label");
    row.fn = f[2];
    row.eta = f[3];
    row.alpha = parse_num(f[4], lineno, "alpha");
    row.k = parse_num(f[5], lineno, "k");
    row.r = parse_num(f[6], lineno, "r");
    row.a = parse_num(f[7], lineno, "a");
    row.b = parse_num(f[8], lineno, "b");
    auto opt = [&](const std::string& tok,
                   const char* what) -> std::optional<double> {
      if (tok.empty()) return std::nullopt;
      return parse_num(tok, lineno, what);
    };
    row.p = opt(f[9], "p");
    row.q = opt(f[10], "q");
    row.lhs = opt(f[11], "lhs");
    row.rhs = opt(f[12], "rhs");
    row.margin = opt(f[13], "margin");
    const auto st = status_from_string(f[14]);
    if (!st) fail(lineno, "unknown status '" + f[14] + "'");
    row.status = *st;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace frachh
