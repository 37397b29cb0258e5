// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace njust;
using fixtures::F;

namespace {

std::vector<Rule> sorted(std::vector<Rule> r) { return normalize_rules(std::move(r)); }

const std::vector<Rule> &flat_child() {
  static const auto r = sorted(fixtures::rules(
      {"p <- t, r", "~p <- f", "~p <- ~r", "q <- f", "~q <- t"}));
  return r;
}

} // namespace

TEST_CASE("running example is valid and compressible") {
  auto report = validate_nested(fixtures::running());
  CHECK(report.valid());
  CHECK(report.compressibility.compressible);
  auto ctx = locality_context(fixtures::running());
  CHECK(ctx->system_of.at(F("r")) == 0);
  CHECK(ctx->system_of.at(F("~q")) == 1);
  CHECK(ctx->parent == std::vector<int>{-1, 0});
}

TEST_CASE("clause violations") {
  auto a = NestedSystem::make(EvalKind::WF, fixtures::rules({"q <- t", "~q <- f"}));
  auto b = NestedSystem::make(EvalKind::WF, fixtures::rules({"q <- p", "~q <- ~p"}));
  auto both = NestedSystem::make(EvalKind::KK, fixtures::rules({"p <- q", "~p <- ~q"}), {a, b});
  auto report = validate_nested(both);
  REQUIRE(!report.valid());
  bool clause3 = false;
  for (const auto &v : report.violations)
    clause3 = clause3 || v.clause == 3;
  CHECK(clause3);

  // a child that reads a fact defined by its sibling
  auto c = NestedSystem::make(EvalKind::WF, fixtures::rules({"s <- q", "~s <- ~q"}));
  auto siblings = NestedSystem::make(EvalKind::KK, fixtures::rules({"p <- s", "~p <- ~s"}), {a, c});
  auto r2 = validate_nested(siblings);
  REQUIRE(r2.violations.size() == 1);
  CHECK(r2.violations[0].clause == 5);

  // a rule missing for a defined fact
  auto missing = NestedSystem::make(EvalKind::WF, fixtures::rules({"p <- q"}));
  auto r3 = validate_nested(missing);
  REQUIRE(r3.violations.size() == 1);
  CHECK(r3.violations[0].clause == 1);
  CHECK_THROWS_AS((void)merge(missing), ValidationError);
}

TEST_CASE("compressibility is reported per node") {
  auto st_child = NestedSystem::make(EvalKind::ST, fixtures::rules({"q <- t", "~q <- f"}));
  auto ns = NestedSystem::make(EvalKind::WF, fixtures::rules({"p <- q", "~p <- ~q"}), {st_child});
  auto report = validate_nested(ns);
  CHECK(report.valid());
  CHECK(!report.compressibility.compressible);
  CHECK(report.compressibility.offending == std::vector<std::string>{"root/0: st"});
  CHECK_THROWS_AS((void)compress(ns), ContractError);
  auto eq = check_equivalence(ns, {});
  CHECK(!eq.in_hypothesis);
  CHECK(!eq.equivalent());
  // a stable root is allowed
  CHECK(validate_nested(fixtures::aggregate_flp()).compressibility.compressible);
}

TEST_CASE("flattening the three-atom frame") {
  auto child = fixtures::running().children[0];
  JustificationSystem sys{child.local_frame(), BranchEvaluation(EvalKind::WF)};
  auto flat = flatten(sys);
  CHECK(flat.system.frame.rules() == flat_child());
  for (const auto &[rule, witness] : flat.source) {
    auto values = branch_values(sys, witness);
    CHECK(std::vector<Fact>(values.begin(), values.end()) == rule.body);
  }
  CHECK_THROWS_AS((void)flatten({child.local_frame(), BranchEvaluation(EvalKind::ST)}),
                  ContractError);
}

TEST_CASE("unfolding the running example") {
  auto ns = fixtures::running();
  std::set<Fact> X{F("p"), F("~p"), F("q"), F("~q")};
  auto got = unfold(ns.rules, flat_child(), X);
  CHECK(got == sorted(fixtures::rules({"r <- t, r, f", "~r <- ~r", "~r <- f", "~r <- t"})));

  auto c = compress(ns);
  auto expected = fixtures::rules({"r <- t, r, f", "~r <- ~r", "~r <- f", "~r <- t"});
  for (const auto &r : flat_child())
    expected.push_back(r);
  CHECK(c.system.frame.rules() == sorted(expected));
  CHECK(c.system.evaluation.kind() == EvalKind::KK);
  const auto &origin = c.origin.at(Rule::parse("~r <- t"));
  CHECK(origin.kind == RuleOrigin::Kind::Unfolded);
  CHECK(*origin.source == Rule::parse("~r <- ~q"));
  CHECK(origin.substitution.at(F("~q")) == Rule::parse("~q <- t"));
}

TEST_CASE("merge values of the running example") {
  auto sys = merge(fixtures::running());
  auto js = enumerate_justifications(sys, F("r"));
  REQUIRE(js.size() == 1);
  CHECK(branch_values(sys, js[0]) == std::set<Fact>{F("u"), F("f"), F("t")});
  CHECK(oracle::tail_values(sys, js[0]) == branch_values(sys, js[0]));
}

TEST_CASE("compressed and merged running example agree") {
  auto report = check_equivalence(fixtures::running(), {});
  CHECK(report.in_hypothesis);
  CHECK(report.interpretations == 27);
  CHECK(report.counterexamples.empty());
}

TEST_CASE("aggregates: one stable model for FLP, none for GZ") {
  auto flp = compress(fixtures::aggregate_flp());
  for (const char *r : {"s <- p, s", "s <- p, q, s", "s <- p, q"})
    CHECK(std::binary_search(flp.system.frame.rules().begin(),
                             flp.system.frame.rules().end(), Rule::parse(r)));
  auto models = enumerate_models(flp.system, true);
  REQUIRE(models.size() == 1);
  CHECK(models[0].str() == "atLeastTwo=t,p=t,q=t,s=t");
  auto gz = compress(fixtures::aggregate_gz());
  CHECK(enumerate_models(gz.system, true).empty());
}

TEST_CASE("shrink and expand on hand-made systems") {
  // z <- x, y. y <- w. with child x <- x. w <- a, b. all wf
  auto child = fixtures::completed(EvalKind::WF, {"x <- x", "w <- a, b"});
  auto ns = fixtures::completed(EvalKind::WF, {"z <- x, y", "y <- w"}, {child});
  auto c = compress(ns);
  for (const char *r : {"z <- f, y", "y <- a, b"})
    CHECK(std::binary_search(c.system.frame.rules().begin(),
                             c.system.frame.rules().end(), Rule::parse(r)));
  auto merged = merge(ns);
  for (const auto &x : ns.defined())
    for (const auto &j : enumerate_justifications(merged, x)) {
      auto s = shrink(ns, j);
      CHECK(is_locally_complete(c.system.frame, s));
      CHECK(branch_values(c.system, s) == branch_values(merged, j));
    }
  for (const auto &x : ns.defined())
    for (const auto &j : enumerate_justifications(c.system, x)) {
      auto e = expand(c, j);
      CHECK(is_locally_complete(merged.frame, e));
      CHECK(branch_values(merged, e) == branch_values(c.system, j));
      CHECK(equivalent(shrink(ns, e), j));
    }
}

TEST_CASE("expanding needs incompatible subjustifications side by side") {
  // x <- a. y <- b. with child a <- x. a <- t. b <- a. all wf
  auto child = fixtures::completed(EvalKind::WF, {"a <- x", "a <- t", "b <- a"});
  auto ns = fixtures::completed(EvalKind::WF, {"x <- a", "y <- b"}, {child});
  auto c = compress(ns);
  for (const char *r : {"x <- x", "x <- t", "y <- x", "y <- t"})
    CHECK(std::binary_search(c.system.frame.rules().begin(),
                             c.system.frame.rules().end(), Rule::parse(r)));
  auto merged = merge(ns);
  for (const auto &x : ns.defined())
    for (const auto &j : enumerate_justifications(c.system, x)) {
      auto e = expand(c, j);
      CHECK(is_locally_complete(merged.frame, e));
      CHECK(equivalent(shrink(ns, e), j));
      for_each_interpretation({"a", "b", "x", "y"}, false, [&](const Interpretation &i) {
        CHECK(jval(merged, e, i) == jval(c.system, j, i));
        return true;
      });
    }
}

// Every body of ~atLeastTwo that avoids ~p and ~q contains s, and the only
// non-f rule for ~s leads back to ~atLeastTwo. Any branch through that second
// occurrence projects onto the root as ~s, s, ... and ST maps it to s. The
// symmetric argument pins atLeastTwo to f, so the merged system is not
// consistent at this interpretation.
TEST_CASE("merged GZ aggregate is inconsistent under ST") {
  auto sys = merge(fixtures::aggregate_gz());
  auto table = SupportTable::build(sys);
  auto i = Interpretation::parse("atLeastTwo=f,p=f,q=f,s=f");
  CHECK(table.supported_value(F("atLeastTwo"), i) == Truth::False);
  CHECK(table.supported_value(F("~atLeastTwo"), i) == Truth::False);
  CHECK(table.supported_value(F("s"), i) == Truth::True);
  CHECK(table.supported_value(F("~s"), i) == Truth::False);
}
