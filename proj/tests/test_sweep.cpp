#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "frachh/errors.hpp"
#include "frachh/sweep.hpp"
#include "test_util.hpp"

using namespace frachh;

namespace {

// A minimal valid configuration text to mutate in the parser tests.
const char* kGoodConfig =
    "functions = square\n"
    "etas = diff\n"
    "alphas = 0.5, 1\n"
    "ks = 1\n"
    "rs = 0\n"
    "intervals = 0.1..1.1\n"
    "theorems = hh1, lemma1\n";

}  // namespace

TEST_CASE("theorem and status names round-trip through their strings") {
  for (TheoremId id :
       {TheoremId::hh1, TheoremId::eta_hh, TheoremId::ds, TheoremId::kka,
        TheoremId::amt, TheoremId::mr1, TheoremId::mr2, TheoremId::mr3,
        TheoremId::mr4, TheoremId::lemma1, TheoremId::lemma2,
        TheoremId::eq_id}) {
    const auto back = theorem_from_string(to_string(id));
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK_FALSE(theorem_from_string("hh2").has_value());

  for (RowStatus s :
       {RowStatus::holds, RowStatus::violated, RowStatus::precondition_failed,
        RowStatus::skipped, RowStatus::nonconverged}) {
    const auto back = status_from_string(to_string(s));
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
  // The CSV word uses a dash, not an underscore.
  CHECK(to_string(RowStatus::precondition_failed) == "precondition-failed");
  CHECK_FALSE(status_from_string("precondition_failed").has_value());
}

TEST_CASE("a well-formed configuration parses into the right fields") {
  const SweepConfig c = parse_config(
      "# comment line\n"
      "functions = square, rquad:2\n"
      "etas = diff, sdiff:1\n"
      "alphas = 0.5, 1, 2.5\n"
      "ks = 0.5, 2\n"
      "rs = -0.5, 0\n"
      "intervals = 0.1..1.1, 0.5..2\n"
      "\n"
      "theorems = hh1, mr3\n"
      "holder_p = 2, 3\n"
      "seed = 42\n"
      "abs_tol = 1e-9\n"
      "rel_tol = 1e-8\n"
      "max_levels = 10\n"
      "grid_n = 16\n");
  CHECK(c.functions == std::vector<std::string>{"square", "rquad:2"});
  CHECK(c.etas == std::vector<std::string>{"diff", "sdiff:1"});
  CHECK(c.alphas == std::vector<double>{0.5, 1.0, 2.5});
  CHECK(c.ks == std::vector<double>{0.5, 2.0});
  CHECK(c.rs == std::vector<double>{-0.5, 0.0});
  REQUIRE(c.intervals.size() == 2);
  CHECK(c.intervals[0].first == 0.1);
  CHECK(c.intervals[0].second == 1.1);
  CHECK(c.intervals[1].first == 0.5);
  CHECK(c.intervals[1].second == 2.0);
  CHECK(c.theorems == std::vector<TheoremId>{TheoremId::hh1, TheoremId::mr3});
  CHECK(c.holder_ps == std::vector<double>{2.0, 3.0});
  CHECK(c.seed == 42);
  CHECK(c.abs_tol == 1e-9);
  CHECK(c.rel_tol == 1e-8);
  CHECK(c.max_levels == 10);
  CHECK(c.grid_n == 16);
}

TEST_CASE("omitted optional keys keep their defaults") {
  const SweepConfig c = parse_config(kGoodConfig);
  CHECK(c.holder_ps == std::vector<double>{2.0});
  CHECK(c.seed == kDefaultSeed);
  CHECK(c.abs_tol == 1e-11);
  CHECK(c.rel_tol == 1e-10);
  CHECK(c.max_levels == 12);
  CHECK(c.grid_n == 32);
}

TEST_CASE("malformed configurations are rejected with a line reference") {
  auto check_rejected = [](const std::string& text, const char* fragment) {
    CAPTURE(text);
    CAPTURE(fragment);
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains(fragment),
                         ConfigError);
  };
  // required keys missing entirely
  check_rejected("functions = square\n", "etas");
  // unknown key
  check_rejected(std::string(kGoodConfig) + "colour = red\n", "unknown key");
  // duplicate key
  check_rejected(std::string(kGoodConfig) + "ks = 2\n", "duplicate");
  // no equals sign
  check_rejected(std::string(kGoodConfig) + "grid_n\n", "line 8");
  // empty value
  check_rejected(std::string(kGoodConfig) + "grid_n =\n", "empty");
  // unparseable number
  check_rejected("alphas = fast\n" + std::string(kGoodConfig), "line 1");
  // malformed interval
  check_rejected(
      "intervals = 0.1--1.1\n"
      "functions = square\netas = diff\ntheorems = hh1\n",
      "interval");
  // unknown theorem
  check_rejected(
      "theorems = hh9\n"
      "functions = square\netas = diff\nintervals = 0..1\n",
      "theorem");
  // constraint violations caught at validation time
  check_rejected(std::string(kGoodConfig) + "alphas = -1\n", "duplicate");
  check_rejected(
      "alphas = -1\nfunctions = square\netas = diff\n"
      "intervals = 0..1\ntheorems = hh1\n",
      "alpha");
  check_rejected(
      "intervals = 1..0.5\nfunctions = square\netas = diff\ntheorems = hh1\n",
      "interval");
  check_rejected(std::string(kGoodConfig) + "grid_n = 4\n", "grid_n");
  check_rejected(std::string(kGoodConfig) + "max_levels = 1\n", "max_levels");
  check_rejected(std::string(kGoodConfig) + "holder_p = 1\n", "holder_p");
  check_rejected(std::string(kGoodConfig) + "abs_tol = 0\nrel_tol = 0\n",
                 "tolerance");
}

TEST_CASE("csv emission hits the format contract byte for byte") {
  SUBCASE("no rows means header only") {
    CHECK(to_csv({}) ==
          "scenario_id,theorem,fn,eta,alpha,k,r,a,b,p,q,lhs,rhs,margin,"
          "status\n");
  }
  SUBCASE("optionals render as empty fields, numbers as %.12g") {
    VerificationRow row;
    row.scenario_id = 7;
    row.theorem = TheoremId::mr3;
    row.fn = "square";
    row.eta = "diff";
    row.alpha = 0.5;
    row.k = 2.0;
    row.r = -0.5;
    row.a = 0.1;
    row.b = 1.1;
    row.p = 2.0;
    row.q = 2.0;
    row.lhs = 1.0 / 3.0;
    row.rhs = 0.5;
    row.margin = 0.5 - 1.0 / 3.0;
    row.status = RowStatus::holds;

    VerificationRow bare;
    bare.scenario_id = 8;
    bare.theorem = TheoremId::hh1;
    bare.fn = "exp";
    bare.eta = "zero";
    bare.alpha = 1.0;
    bare.k = 1.0;
    bare.r = 0.0;
    bare.a = 0.0;
    bare.b = 1.0;
    bare.status = RowStatus::skipped;

    CHECK(to_csv({row, bare}) ==
          "scenario_id,theorem,fn,eta,alpha,k,r,a,b,p,q,lhs,rhs,margin,"
          "status\n"
          "7,mr3,square,diff,0.5,2,-0.5,0.1,1.1,2,2,0.333333333333,0.5,"
          "0.166666666667,holds\n"
          "8,hh1,exp,zero,1,1,0,0,1,,,,,,skipped\n");
  }
}

TEST_CASE("csv parses back exactly and re-emits identical bytes") {
  VerificationRow row;
  row.scenario_id = 3;
  row.theorem = TheoremId::eq_id;
  row.fn = "rquad#1";
  row.eta = "sdiff#0";
  row.alpha = 2.5;
  row.k = 0.5;
  row.r = 2.0;
  row.a = 0.1;
  row.b = 1.1;
  row.lhs = 0.123456789012345;  // 15 significant digits survive %.12g? no:
                                // 12 digits are emitted, and parsing those
                                // back re-emits the same 12 digits.
  row.rhs = 1e-30;
  row.margin = -1e+30;
  row.status = RowStatus::violated;

  const std::string once = to_csv({row});
  const std::vector<VerificationRow> parsed = parse_csv(once);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].scenario_id == 3);
  CHECK(parsed[0].theorem == TheoremId::eq_id);
  CHECK(parsed[0].fn == "rquad#1");
  CHECK(parsed[0].eta == "sdiff#0");
  CHECK_FALSE(parsed[0].p.has_value());
  CHECK(parsed[0].lhs.has_value());
  CHECK(parsed[0].status == RowStatus::violated);
  CHECK(to_csv(parsed) == once);
}

TEST_CASE("csv parsing is strict about shape") {
  const std::string header =
      "scenario_id,theorem,fn,eta,alpha,k,r,a,b,p,q,lhs,rhs,margin,status\n";
  CHECK_NOTHROW(parse_csv(header));
  // wrong header
  CHECK_THROWS_AS(parse_csv("id,theorem\n1,hh1\n"), ConfigError);
  // missing trailing newline
  CHECK_THROWS_AS(
      parse_csv(header + "1,hh1,square,diff,1,1,0,0,1,,,,,,skipped"),
      ConfigError);
  // wrong field count
  CHECK_THROWS_AS(parse_csv(header + "1,hh1,square,diff,1,1,0,0,1,,,,skipped\n"),
                  ConfigError);
  // unknown status word
  CHECK_THROWS_AS(
      parse_csv(header + "1,hh1,square,diff,1,1,0,0,1,,,,,,maybe\n"),
      ConfigError);
  // trailing garbage in a numeric field
  CHECK_THROWS_AS(
      parse_csv(header + "1,hh1,square,diff,1x,1,0,0,1,,,,,,skipped\n"),
      ConfigError);
  // empty required numeric field
  CHECK_THROWS_AS(
      parse_csv(header + "1,hh1,square,diff,,1,0,0,1,,,,,,skipped\n"),
      ConfigError);
}

TEST_CASE("a tiny sweep produces complete, ordered, deterministic results") {
  SweepConfig c;
  c.functions = {"square", "exp"};
  c.etas = {"diff"};
  c.alphas = {0.5, 1.0};
  c.ks = {1.0};
  c.rs = {0.0};
  c.intervals = {{0.1, 1.1}};
  c.theorems = {TheoremId::hh1, TheoremId::mr3, TheoremId::lemma1};
  c.holder_ps = {2.0, 3.0};
  c.grid_n = 16;

  const SweepResult res = run_sweep(c);
  // 2 fns x 1 eta x 1 interval x 2 alphas = 4 scenarios; mr3 contributes one
  // row per Hoelder exponent, so 4 rows per scenario.
  CHECK(res.scenarios_total == 4);
  CHECK(res.scenarios_skipped == 0);
  REQUIRE(res.rows.size() == 16);
  CHECK(res.count(RowStatus::holds) == 16);
  CHECK_FALSE(res.any_violated());
  CHECK_FALSE(res.any_nonconverged());

  // Scenario ids are 1-based and contiguous; theorem order follows the
  // config; mr3 rows carry their exponents, the rest leave them empty.
  CHECK(res.rows[0].scenario_id == 1);
  CHECK(res.rows[0].theorem == TheoremId::hh1);
  CHECK_FALSE(res.rows[0].p.has_value());
  CHECK(res.rows[1].theorem == TheoremId::mr3);
  CHECK(res.rows[1].p == 2.0);
  CHECK(res.rows[1].q == 2.0);
  CHECK(res.rows[2].theorem == TheoremId::mr3);
  CHECK(res.rows[2].p == 3.0);
  CHECK(res.rows[2].q == 1.5);
  CHECK(res.rows[3].theorem == TheoremId::lemma1);
  CHECK(res.rows[15].scenario_id == 4);

  // Determinism: identical runs emit identical bytes.
  const SweepResult again = run_sweep(c);
  CHECK(to_csv(res.rows) == to_csv(again.rows));
  CHECK(res.log == again.log);
}

TEST_CASE("out-of-domain scenarios are skipped with a logged reason") {
  SweepConfig c;
  c.functions = {"square"};
  c.etas = {"diff"};
  c.alphas = {1.0};
  c.ks = {1.0};
  c.rs = {-1.5};  // r <= -1 cannot be an operator power
  c.intervals = {{0.1, 1.1}};
  c.theorems = {TheoremId::hh1, TheoremId::lemma1};

  const SweepResult res = run_sweep(c);
  CHECK(res.scenarios_total == 1);
  CHECK(res.scenarios_skipped == 1);
  REQUIRE(res.rows.size() == 2);
  for (const auto& row : res.rows) {
    CHECK(row.status == RowStatus::skipped);
    CHECK_FALSE(row.lhs.has_value());
  }
  CHECK(res.log.find("skip") != std::string::npos);

  // Negative left endpoints and a zero endpoint with fractional r likewise.
  c.rs = {0.0};
  c.intervals = {{-0.5, 1.0}};
  CHECK(run_sweep(c).scenarios_skipped == 1);
  c.rs = {-0.5};
  c.intervals = {{0.0, 1.0}};
  CHECK(run_sweep(c).scenarios_skipped == 1);
}

TEST_CASE("hypothesis failures mark rows instead of aborting the sweep") {
  SweepConfig c;
  c.functions = {"cube_plus_x"};  // not convex left of zero
  c.etas = {"diff"};
  c.alphas = {1.0};
  c.ks = {1.0};
  c.rs = {0.0};
  c.intervals = {{0.1, 1.1}, {0.0, 1.0}};
  c.theorems = {TheoremId::hh1, TheoremId::lemma1};
  c.grid_n = 16;

  // On [0.1, 1.1] everything holds; force a failure by replacing the
  // function with one that is not convex anywhere near the window.
  c.functions = {"negabs:1"};
  const SweepResult res = run_sweep(c);
  REQUIRE(res.rows.size() == 4);
  for (const auto& row : res.rows) {
    if (row.theorem == TheoremId::hh1) {
      // convexity hypothesis fails, the row says so, values stay empty
      CHECK(row.status == RowStatus::precondition_failed);
      CHECK_FALSE(row.lhs.has_value());
      CHECK_FALSE(row.margin.has_value());
    } else {
      // the identity has no hypotheses and still runs; the kinked function
      // may or may not integrate to tolerance, but it must not be skipped
      CHECK(row.status != RowStatus::skipped);
      CHECK(row.status != RowStatus::precondition_failed);
    }
  }
  CHECK(res.count(RowStatus::precondition_failed) == 2);
  CHECK(res.log.find("is not convex") != std::string::npos);
}

TEST_CASE("a constant function makes the comparison bound exactly tight") {
  SweepConfig c;
  c.functions = {"const1"};
  c.etas = {"diff"};
  c.alphas = {1.0};
  c.ks = {1.0};
  c.rs = {0.0};
  c.intervals = {{0.1, 1.1}};
  c.theorems = {TheoremId::mr1};
  c.grid_n = 16;

  const SweepResult res = run_sweep(c);
  REQUIRE(res.rows.size() == 1);
  const VerificationRow& row = res.rows[0];
  CHECK(row.status == RowStatus::holds);
  REQUIRE(row.lhs.has_value());
  REQUIRE(row.rhs.has_value());
  REQUIRE(row.margin.has_value());
  // mean of 1 is 1; rhs = g(b) + (g(a)-g(b))/2 = 1; margin ~ 0
  CHECK(frachh::testutil::rel_err(*row.lhs, 1.0) < 1e-10);
  CHECK(frachh::testutil::rel_err(*row.rhs, 1.0) < 1e-12);
  CHECK(std::fabs(*row.margin) < 1e-10);
}
