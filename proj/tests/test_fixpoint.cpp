// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "njust/selfcheck.hpp"
#include "njust/fixpoint.hpp"
#include "njust/text.hpp"

#include <fstream>
#include <sstream>

using namespace njust;
using fixtures::F;

namespace {

std::string slurp(const std::string &name) {
  std::ifstream in(std::string(NJUST_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// u clashes with the logical fact and is stored as u_.
Assignment expected_fd() {
  return {{"p", false}, {"q", false}, {"r", false},
          {"s", true},  {"t2", true}, {"u_", true}};
}

} // namespace

TEST_CASE("nested definition: direct solution") {
  auto d = parse_fixpoint(slurp("fd.lfp"));
  CHECK(d.defined().size() == 6);
  CHECK(d.opens().empty());
  CHECK(d.display("u_") == "u");
  CHECK(oracle::brute_fixpoint(d, {}) == expected_fd());
  CHECK(solve_direct(d, {}) == expected_fd());
}

TEST_CASE("one operator step from all false") {
  auto d = parse_fixpoint(slurp("fd.lfp"));
  Assignment zero;
  for (const auto &p : d.defined())
    zero[p] = false;
  // children solve under p = q = u = f: r = f, s = t2 = t; then u = s.
  Assignment want{{"p", false}, {"q", false}, {"r", false},
                  {"s", true},  {"t2", true}, {"u_", true}};
  CHECK(gamma_step(d, {}, zero) == want);
}

TEST_CASE("translation of the nested definition") {
  auto d = parse_fixpoint(slurp("fd.lfp"));
  auto ns = translate_to_nested(d);
  CHECK(ns.evaluation == EvalKind::WF);
  REQUIRE(ns.children.size() == 1);
  CHECK(ns.children[0].evaluation == EvalKind::CWF);
  CHECK(validate_nested(ns).valid());
  for (const char *r : {"p <- q.", "p <- r.", "~p <- ~q, ~r.", "u_ <- s."})
    CHECK(std::count(ns.rules.begin(), ns.rules.end(), Rule::parse(r)) == 1);
  auto merged = merge(ns);
  Interpretation none;
  for (const auto &[p, v] : expected_fd()) {
    CAPTURE(p);
    CHECK(supported_value(merged, F(p), none) == (v ? Truth::True : Truth::False));
  }
  auto models = enumerate_models(merged, false);
  REQUIRE(models.size() == 1);
  for (const auto &[p, v] : expected_fd())
    CHECK(models[0](F(p)) == (v ? Truth::True : Truth::False));
  auto rep = check_equivalence(ns, SamplingPolicy{});
  CHECK(rep.equivalent());
}

TEST_CASE("reserved names are renamed and shown under their own name") {
  auto d = parse_fixpoint("lfp { t <- s. gfp { s <- s | t. } }");
  CHECK(d.defined() == std::set<std::string>{"s", "t_"});
  CHECK(d.display("t_") == "t");
  CHECK(solve_direct(d, {}) == Assignment{{"s", true}, {"t_", true}});
  auto text = print_fixpoint(d);
  CHECK(text.find("t <- s.") != std::string::npos);
  CHECK(parse_fixpoint(text) == d);
}

TEST_CASE("decomposition into rule bodies") {
  auto d = parse_fixpoint("lfp { p <- (a | !b) & (q | a). q <- !(a & b) . }");
  std::set<std::string> defined{"p", "q"};
  auto bodies = decompose_formula(d.rules[0].second, defined);
  std::vector<std::vector<Fact>> want{
      {F("a")}, {F("a"), F("q")}, {F("~b"), F("a")}, {F("~b"), F("q")}};
  for (auto &b : want)
    std::sort(b.begin(), b.end());
  std::sort(want.begin(), want.end());
  CHECK(bodies == want);
  CHECK(decompose_formula(d.rules[1].second, defined) ==
        std::vector<std::vector<Fact>>{{F("~a")}, {F("~b")}});
  CHECK_THROWS_AS((void)decompose_formula(Formula::negation(Formula::var("p")),
                                          defined),
                  ContractError);
}

TEST_CASE("definition validation") {
  CHECK_THROWS_AS((void)parse_fixpoint("lfp { p <- a. p <- b. }"), ValidationError);
  CHECK_THROWS_AS((void)parse_fixpoint("lfp { p <- !q. q <- a. }"), ValidationError);
  CHECK_THROWS_AS((void)parse_fixpoint("lfp { p <- a. gfp { q <- r. } gfp { r <- a. } }"),
                  ValidationError);
  CHECK_THROWS_AS((void)parse_fixpoint("lfp { p <- . }"), ParseError);
  CHECK_THROWS_AS((void)parse_fixpoint("fp { p <- a. }"), ParseError);
}

TEST_CASE("random definitions: iteration matches enumeration and translation") {
  std::mt19937_64 rng(7);
  std::vector<FixpointDefinition> defs;
  for (int i = 0; i < 40; ++i)
    defs.push_back(random_definition(rng));
  for (const auto &d : defs) {
    CAPTURE(print_fixpoint(d));
    REQUIRE(validate_definition(d).empty());
    auto opens = d.opens();
    std::vector<std::string> list(opens.begin(), opens.end());
    for_each_interpretation(list, true, [&](const Interpretation &i) {
      Assignment o;
      for (const auto &a : list)
        o[a] = i(F(a)) == Truth::True;
      CHECK(solve_direct(d, o) == oracle::brute_fixpoint(d, o));
      return true;
    });
  }
  auto suite = check_fixpoints(defs);
  CHECK(suite.checked > 0);
  for (const auto &f : suite.failures)
    FAIL_CHECK(f);
}
