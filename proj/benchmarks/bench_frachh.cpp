// Microbenchmarks for the hot paths: special functions, the three
// quadrature schemes on smooth and singular integrands, the fractional
// operators, and the kernel-integral machinery behind the verified bounds.

#include <benchmark/benchmark.h>

#include <cmath>

#include "frachh/etaconvex.hpp"
#include "frachh/inequalities.hpp"
#include "frachh/operators.hpp"
#include "frachh/quadrature.hpp"
#include "frachh/registry.hpp"
#include "frachh/specialfn.hpp"

using namespace frachh;

namespace {

void bm_k_gamma(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_gamma(x, 1.5));
    x = x < 50.0 ? x + 0.7 : 0.3;
  }
}
BENCHMARK(bm_k_gamma);

void bm_quad_smooth(benchmark::State& state) {
  const auto scheme = static_cast<QuadScheme>(state.range(0));
  QuadSpec spec;
  spec.scheme = scheme;
  if (scheme == QuadScheme::power_substitution) {
    spec.singular_end = SingularEnd::lower;
  }
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(f, 0.0, 2.0, spec));
  }
}
BENCHMARK(bm_quad_smooth)->Arg(0)->Arg(1)->Arg(2);

void bm_quad_singular(benchmark::State& state) {
  const auto scheme = static_cast<QuadScheme>(state.range(0));
  QuadSpec spec;
  spec.scheme = scheme;
  if (scheme == QuadScheme::power_substitution) {
    spec.singular_end = SingularEnd::lower;
    spec.singular_exponent = -0.75;
  }
  auto f = [](double t) { return std::pow(t, -0.75) * std::cos(t); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(f, 0.0, 1.0, spec));
  }
}
BENCHMARK(bm_quad_singular)->Arg(0)->Arg(1)->Arg(2);

void bm_frac_left(benchmark::State& state) {
  const RealFn g = make_named_fn("cube_plus_x");
  const FracParams p{0.5, 2.0, 1.0};  // singular kernel, alpha/k = 0.25
  for (auto _ : state) {
    benchmark::DoNotOptimize(frac_left(g, 1.1, 0.1, p));
  }
}
BENCHMARK(bm_frac_left);

void bm_normalized_mean(benchmark::State& state) {
  const RealFn g = make_named_fn("exp");
  const Interval iv{0.1, 1.1};
  const FracParams p{0.5, 2.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalized_frac_mean(g, iv, p));
  }
}
BENCHMARK(bm_normalized_mean);

void bm_theta(benchmark::State& state) {
  const Interval iv{0.1, 1.1};
  const FracParams p{0.5, 2.0, 1.0};
  int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta(static_cast<double>(i) / 1000.0, iv, p));
    i = i < 1000 ? i + 1 : 0;
  }
}
BENCHMARK(bm_theta);

void bm_theta_abs_integral(benchmark::State& state) {
  const Interval iv{0.1, 1.1};
  const FracParams p{0.5, 2.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta_abs_integral(iv, p));
  }
}
BENCHMARK(bm_theta_abs_integral);

void bm_R_terms(benchmark::State& state) {
  const Interval iv{0.1, 1.1};
  const FracParams p{0.5, 2.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(R_terms(iv, p));
  }
}
BENCHMARK(bm_R_terms);

void bm_bound_mr2(benchmark::State& state) {
  const RealFn g = make_named_fn("cube_plus_x");
  const EtaFn eta = make_named_eta("diff");
  const Interval iv{0.1, 1.1};
  const FracParams p{0.5, 2.0, 1.0};
  for (auto _ : state) {
    // Hypotheses are vouched for so the benchmark isolates the bound.
    benchmark::DoNotOptimize(bound_mr2(g, eta, iv, p, QuadSpec{}, false));
  }
}
BENCHMARK(bm_bound_mr2);

void bm_check_eta_convex(benchmark::State& state) {
  const RealFn g = make_named_fn("square");
  const EtaFn eta = make_named_eta("diff");
  const Interval iv{0.1, 1.1};
  const int grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_eta_convex(g, eta, iv, grid_n));
  }
}
BENCHMARK(bm_check_eta_convex)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
