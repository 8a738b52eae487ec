#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frachh/etaconvex.hpp"
#include "frachh/realfn.hpp"

namespace frachh {

// Theorems a sweep can verify. lemma1/lemma2/eq_id are identities (two ways
// of computing the same quantity), the rest are one- or two-sided bounds.
enum class TheoremId {
  hh1,
  eta_hh,
  ds,
  kka,
  amt,
  mr1,
  mr2,
  mr3,
  mr4,
  lemma1,
  lemma2,
  eq_id,
};

std::string to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(const std::string& s);

enum class RowStatus {
  holds,
  violated,
  precondition_failed,
  skipped,
  nonconverged,
};

std::string to_string(RowStatus s);
std::optional<RowStatus> status_from_string(const std::string& s);

// Batch description: the cross product of all lists below is the scenario
// set; every theorem is evaluated on every scenario.
struct SweepConfig {
  std::vector<std::string> functions;  // registry names / family:count
  std::vector<std::string> etas;
  std::vector<double> alphas{1.0};
  std::vector<double> ks{1.0};
  std::vector<double> rs{0.0};
  std::vector<std::pair<double, double>> intervals;
  std::vector<TheoremId> theorems;
  std::vector<double> holder_ps{2.0};  // p for the Hoelder/power-mean bounds
  std::uint64_t seed = kDefaultSeed;
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  int max_levels = 12;
  int grid_n = 32;  // sampling resolution for hypothesis checks
};

// Parse the key = value, v2, ... configuration format (see README).
// Throws ConfigError with a line reference on malformed input.
SweepConfig parse_config(const std::string& text);
SweepConfig load_config(const std::string& path);  // IoError if unreadable

// One CSV row: a theorem evaluated on a scenario. For two-sided theorems
// the reported side is the one with the smaller margin; holds only if both
// sides hold. lhs/rhs/margin are absent for rows that never got evaluated
// (skipped / precondition-failed / nonconverged before producing values).
struct VerificationRow {
  std::int64_t scenario_id = 0;
  TheoremId theorem = TheoremId::hh1;
  std::string fn;
  std::string eta;
  double alpha = 0.0;
  double k = 0.0;
  double r = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> p;  // Hoelder exponents, mr3/mr4 rows only
  std::optional<double> q;
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::optional<double> margin;
  RowStatus status = RowStatus::skipped;
};

struct SweepResult {
  std::vector<VerificationRow> rows;
  std::string log;  // human-readable run log (skips, side-by-side values)
  std::int64_t scenarios_total = 0;
  std::int64_t scenarios_skipped = 0;
  std::array<std::int64_t, 5> counts{};  // indexed by RowStatus

  std::int64_t count(RowStatus s) const {
    return counts[static_cast<std::size_t>(s)];
  }
  bool any_violated() const { return count(RowStatus::violated) > 0; }
  bool any_nonconverged() const { return count(RowStatus::nonconverged) > 0; }
};

SweepResult run_sweep(const SweepConfig& config);

// CSV with the fixed header
//   scenario_id,theorem,fn,eta,alpha,k,r,a,b,p,q,lhs,rhs,margin,status
// numbers formatted %.12g, absent optionals left empty, \n line endings,
// exactly one trailing newline. Emission is deterministic: same config and
// seed produce byte-identical output.
std::string to_csv(const std::vector<VerificationRow>& rows);
void write_csv_file(const std::vector<VerificationRow>& rows,
                    const std::string& path);  // IoError on failure

// Strict inverse of to_csv (used to verify round-trips). ConfigError on any
// malformed content.
std::vector<VerificationRow> parse_csv(const std::string& text);

}  // namespace frachh
