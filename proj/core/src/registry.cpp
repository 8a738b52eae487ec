#include "frachh/registry.hpp"

#include <cmath>

#include "frachh/errors.hpp"
#include "frachh/numeric.hpp"

namespace frachh {
namespace {

constexpr std::uint64_t kRoleFnFamily = 0x666e66616d;
constexpr std::uint64_t kRoleEtaFamily = 0x6574616661;

RealFn poly_fn(std::string label, std::vector<double> coeffs) {
  // coeffs[i] multiplies x^i.
  std::vector<double> dcoeffs;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    dcoeffs.push_back(static_cast<double>(i) * coeffs[i]);
  }
  auto horner = [](const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  };
  RealFn out;
  out.label = std::move(label);
  out.eval = [coeffs, horner](double x) { return horner(coeffs, x); };
  out.deriv = [dcoeffs, horner](double x) { return horner(dcoeffs, x); };
  return out;
}

// Parse "name" or "family:count"; count == 0 means a plain name.
std::pair<std::string, int> split_entry(const std::string& entry) {
  const auto pos = entry.find(':');
  if (pos == std::string::npos) return {entry, 0};
  const std::string head = entry.substr(0, pos);
  const std::string tail = entry.substr(pos + 1);
  std::size_t used = 0;
  int count = 0;
  try {
    count = std::stoi(tail, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad family count in entry '" + entry + "'");
  }
  if (used != tail.size() || count < 1) {
    throw ConfigError("bad family count in entry '" + entry + "'");
  }
  return {head, count};
}

}  // namespace

RealFn make_named_fn(const std::string& name) {
  if (name == "square") return poly_fn("square", {0.0, 0.0, 1.0});
  if (name == "cube_plus_x") return poly_fn("cube_plus_x", {0.0, 1.0, 0.0, 1.0});
  if (name == "quartic") return poly_fn("quartic", {1.0, 0.0, 0.0, 0.0, 1.0});
  if (name == "identity") return poly_fn("identity", {0.0, 1.0});
  if (name == "const1") return poly_fn("const1", {1.0});
  if (name == "exp") {
    RealFn out;
    out.label = "exp";
    out.eval = [](double x) { return std::exp(x); };
    out.deriv = [](double x) { return std::exp(x); };
    return out;
  }
  if (name == "neg_abs") {
    RealFn out;
    out.label = "neg_abs";
    out.eval = [](double x) { return -std::fabs(x); };
    out.deriv = [](double x) { return x >= 0.0 ? -1.0 : 1.0; };
    return out;
  }
  throw ConfigError("unknown function '" + name + "'");
}

std::vector<std::string> named_fn_names() {
  return {"square", "cube_plus_x", "quartic", "exp",
          "identity", "const1", "neg_abs"};
}

EtaFn make_named_eta(const std::string& name) {
  if (name == "diff") {
    return {[](double u, double v) { return u - v; }, "diff"};
  }
  if (name == "neg_sum") {
    return {[](double u, double v) { return -u - v; }, "neg_sum"};
  }
  if (name == "zero") {
    return {[](double, double) { return 0.0; }, "zero"};
  }
  throw ConfigError("unknown eta '" + name + "'");
}

std::vector<std::string> named_eta_names() {
  return {"diff", "neg_sum", "zero"};
}

std::vector<FnFactory> resolve_fn_entries(
    const std::vector<std::string>& entries, std::uint64_t seed) {
  std::vector<FnFactory> out;
  for (const std::string& entry : entries) {
    const auto [head, count] = split_entry(entry);
    if (count == 0) {
      const RealFn fn = make_named_fn(head);  // validates the name
      out.push_back({head, [head](const Interval&) {
                       return make_named_fn(head);
                     }});
      (void)fn;
      continue;
    }
    for (int i = 0; i < count; ++i) {
      const std::string label = head + "#" + std::to_string(i);
      std::mt19937_64 rng =
          substream(seed, kRoleFnFamily, static_cast<std::uint64_t>(i));
      if (head == "rquad") {
        const double c2 = 0.5 + 1.5 * uniform01(rng);
        const double c1 = uniform01(rng);
        const double c0 = 1.0 + uniform01(rng);
        out.push_back({label, [label, c0, c1, c2](const Interval&) {
                         return poly_fn(label, {c0, c1, c2});
                       }});
      } else if (head == "rquart") {
        const double c4 = 0.25 + 0.75 * uniform01(rng);
        const double c2 = uniform01(rng);
        const double c1 = uniform01(rng);
        const double c0 = 1.0 + uniform01(rng);
        out.push_back({label, [label, c0, c1, c2, c4](const Interval&) {
                         return poly_fn(label, {c0, c1, c2, 0.0, c4});
                       }});
      } else if (head == "negabs") {
        const double u = uniform01(rng);
        // Kink placed strictly inside the scenario interval.
        out.push_back({label, [label, u](const Interval& iv) {
                         const double c = iv.a + (0.2 + 0.6 * u) * iv.width();
                         RealFn fn;
                         fn.label = label;
                         fn.eval = [c](double x) { return -std::fabs(x - c); };
                         fn.deriv = [c](double x) {
                           return x >= c ? -1.0 : 1.0;
                         };
                         return fn;
                       }});
      } else {
        throw ConfigError("unknown function family '" + head + "'");
      }
    }
  }
  return out;
}

std::vector<EtaFactory> resolve_eta_entries(
    const std::vector<std::string>& entries, std::uint64_t seed) {
  std::vector<EtaFactory> out;
  for (const std::string& entry : entries) {
    const auto [head, count] = split_entry(entry);
    if (count == 0) {
      out.push_back({head, make_named_eta(head)});
      continue;
    }
    if (head != "sdiff") {
      throw ConfigError("unknown eta family '" + head + "'");
    }
    for (int i = 0; i < count; ++i) {
      std::mt19937_64 rng =
          substream(seed, kRoleEtaFamily, static_cast<std::uint64_t>(i));
      const double c = uniform01(rng);
      const std::string label = "sdiff#" + std::to_string(i);
      out.push_back(
          {label, {[c](double u, double v) { return u - v + c; }, label}});
    }
  }
  return out;
}

}  // namespace frachh
