#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frachh/realfn.hpp"

namespace frachh {

// Named test functions (all with analytic derivatives):
//   square       x^2
//   cube_plus_x  x^3 + x
//   quartic      x^4 + 1
//   exp          e^x
//   identity     x
//   const1       1
//   neg_abs      -|x|
// Throws ConfigError for an unknown name.
RealFn make_named_fn(const std::string& name);
std::vector<std::string> named_fn_names();

// Named comparison functions:
//   diff     u - v      (recovers classical convexity)
//   neg_sum  -u - v
//   zero     0
EtaFn make_named_eta(const std::string& name);
std::vector<std::string> named_eta_names();

// A function entry resolved from a sweep configuration. Family members may
// depend on the scenario interval (e.g. a kink placed inside it), so an
// entry is a factory, not a function.
struct FnFactory {
  std::string label;
  std::function<RealFn(const Interval&)> make;
};

struct EtaFactory {
  std::string label;
  EtaFn eta;
};

// Resolve config entries. Each entry is either a registry name ("square")
// or family:count ("rquad:3"). Families (members drawn deterministically
// from the seed):
//   rquad:N   convex positive quadratics   c2 x^2 + c1 x + c0
//   rquart:N  convex positive quartics     c4 x^4 + c2 x^2 + c1 x + c0
//   negabs:N  -|x - c|, kink placed inside the scenario interval
// Eta families:
//   sdiff:N   u - v + c, c in (0, 1)
// Throws ConfigError on unknown entries or bad counts.
std::vector<FnFactory> resolve_fn_entries(
    const std::vector<std::string>& entries, std::uint64_t seed);
std::vector<EtaFactory> resolve_eta_entries(
    const std::vector<std::string>& entries, std::uint64_t seed);

}  // namespace frachh
