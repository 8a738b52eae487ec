// frac-hh: batch verifier and calculator for generalized fractional-integral
// mean inequalities. See README.md for the full command reference.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "frachh/errors.hpp"
#include "frachh/etaconvex.hpp"
#include "frachh/operators.hpp"
#include "frachh/quadrature.hpp"
#include "frachh/registry.hpp"
#include "frachh/specialfn.hpp"
#include "frachh/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 3;
constexpr int kExitBadInput = 4;
constexpr int kExitNonconverged = 5;

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

frachh::QuadScheme scheme_from(const std::string& name) {
  if (name == "de") return frachh::QuadScheme::double_exponential;
  if (name == "adaptive") return frachh::QuadScheme::adaptive_bisection;
  if (name == "power") return frachh::QuadScheme::power_substitution;
  throw frachh::ConfigError("unknown scheme '" + name + "'");
}

struct SweepArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double abs_tol = -1.0;
  double rel_tol = -1.0;
};

int cmd_sweep(const SweepArgs& args) {
  frachh::SweepConfig cfg = frachh::load_config(args.config);
  if (args.seed_set) cfg.seed = args.seed;
  if (args.abs_tol >= 0.0) cfg.abs_tol = args.abs_tol;
  if (args.rel_tol >= 0.0) cfg.rel_tol = args.rel_tol;

  const frachh::SweepResult res = frachh::run_sweep(cfg);
  if (args.out.empty()) {
    std::cerr << res.log;
    std::cout << frachh::to_csv(res.rows);
  } else {
    frachh::write_csv_file(res.rows, args.out);
    std::cout << res.log;
    std::cout << "wrote " << res.rows.size() << " rows to " << args.out
              << "\n";
  }
  if (res.any_violated()) return kExitViolated;
  if (res.any_nonconverged()) return kExitNonconverged;
  return kExitOk;
}

struct FracintArgs {
  std::string side;
  std::string fn;
  double x = std::numeric_limits<double>::quiet_NaN();
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = std::numeric_limits<double>::quiet_NaN();
  frachh::FracParams params;
  std::string scheme = "de";
};

int cmd_fracint(const FracintArgs& args) {
  const frachh::RealFn g = frachh::make_named_fn(args.fn);
  frachh::QuadSpec spec;
  spec.scheme = scheme_from(args.scheme);
  double value = 0.0;
  if (args.side == "left") {
    if (!std::isfinite(args.a)) {
      throw frachh::ConfigError("--side left requires --a (lower limit)");
    }
    value = frachh::frac_left(g, args.x, args.a, args.params, spec);
  } else {
    if (!std::isfinite(args.b)) {
      throw frachh::ConfigError("--side right requires --b (upper limit)");
    }
    value = frachh::frac_right(g, args.x, args.b, args.params, spec);
  }
  std::cout << fmt15(value) << "\n";
  return kExitOk;
}

struct CheckEtaArgs {
  std::string fn;
  std::string eta;
  double a = 0.0;
  double b = 1.0;
  int grid = 64;
  std::uint64_t seed = frachh::kDefaultSeed;
};

int cmd_check_eta(const CheckEtaArgs& args) {
  const frachh::RealFn g = frachh::make_named_fn(args.fn);
  const frachh::EtaFn eta = frachh::make_named_eta(args.eta);
  const frachh::Interval iv{args.a, args.b};
  const frachh::ConvexityVerdict v =
      frachh::check_eta_convex(g, eta, iv, args.grid, std::nullopt, args.seed);
  if (v.holds) {
    std::cout << "eta-convex: yes (checked " << v.samples_checked
              << " samples)\n";
    return kExitOk;
  }
  const frachh::ConvexityWitness& w = *v.witness;
  std::cout << "eta-convex: no (x = " << fmt15(w.x) << ", y = " << fmt15(w.y)
            << ", beta = " << fmt15(w.beta)
            << ", excess = " << fmt15(w.violation) << ")\n";
  return kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "frac-hh: generalized fractional-integral operators and batch "
      "verification of mean-inequality families"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run every configured theorem over a scenario grid");
  sweep->add_option("--config", sweep_args.config, "sweep configuration file")
      ->required();
  sweep->add_option("--out", sweep_args.out,
                    "CSV output path (default: CSV to stdout, log to stderr)");
  sweep->add_option("--seed", sweep_args.seed,
                    "override the configured RNG seed")
      ->each([&sweep_args](const std::string&) { sweep_args.seed_set = true; });
  sweep->add_option("--abs-tol", sweep_args.abs_tol,
                    "override quadrature absolute tolerance");
  sweep->add_option("--rel-tol", sweep_args.rel_tol,
                    "override quadrature relative tolerance");

  double kg_x = 0.0;
  double kg_k = 0.0;
  CLI::App* kgamma = app.add_subcommand(
      "kgamma", "evaluate the k-parametrized gamma function");
  kgamma->add_option("x", kg_x, "argument")->required();
  kgamma->add_option("k", kg_k, "family parameter (k > 0)")->required();

  FracintArgs fi;
  CLI::App* fracint = app.add_subcommand(
      "fracint", "evaluate one generalized fractional integral");
  fracint->add_option("--side", fi.side, "operator side")
      ->required()
      ->check(CLI::IsMember({"left", "right"}));
  fracint->add_option("--fn", fi.fn, "named function (see README)")
      ->required();
  fracint->add_option("--x", fi.x, "evaluation point")->required();
  fracint->add_option("--a", fi.a, "lower limit (left side)");
  fracint->add_option("--b", fi.b, "upper limit (right side)");
  fracint->add_option("--alpha", fi.params.alpha, "order alpha > 0")
      ->required();
  fracint->add_option("--k", fi.params.k, "gamma-family parameter k > 0");
  fracint->add_option("--r", fi.params.r, "power weight exponent r > -1");
  fracint->add_option("--scheme", fi.scheme,
                      "quadrature scheme: de | adaptive | power")
      ->check(CLI::IsMember({"de", "adaptive", "power"}));

  CheckEtaArgs ce;
  CLI::App* check_eta = app.add_subcommand(
      "check-eta", "sample-test a comparison-convexity hypothesis");
  check_eta->add_option("--fn", ce.fn, "named function")->required();
  check_eta->add_option("--eta", ce.eta, "named comparison function")
      ->required();
  check_eta->add_option("--a", ce.a, "interval start")->required();
  check_eta->add_option("--b", ce.b, "interval end")->required();
  check_eta->add_option("--grid", ce.grid, "grid resolution (>= 8)");
  check_eta->add_option("--seed", ce.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (kgamma->parsed()) {
      std::cout << fmt15(frachh::k_gamma(kg_x, kg_k)) << "\n";
      return kExitOk;
    }
    if (fracint->parsed()) return cmd_fracint(fi);
    if (check_eta->parsed()) return cmd_check_eta(ce);
  } catch (const frachh::ConvergenceError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitNonconverged;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
