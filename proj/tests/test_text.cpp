// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "fixtures.hpp"

#include "njust/corpus.hpp"
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

} // namespace

TEST_CASE("fixture files parse to the hand-built systems") {
  CHECK(parse_system(slurp("running.njs")) == fixtures::running());
  CHECK(parse_system(slurp("agg_flp.njs")) == fixtures::aggregate_flp());
  CHECK(parse_system(slurp("agg_gz.njs")) == fixtures::aggregate_gz());
  auto flat = parse_system(slurp("example1.njs"));
  CHECK(flat.local_frame().rules() == fixtures::example1().rules());
}

TEST_CASE("syntax errors carry a position") {
  try {
    (void)parse_system("system wf {\n  p <- .\n}\n");
    FAIL("no error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
  CHECK_THROWS_AS((void)parse_system("system xx { p <- q. }"), ParseError);
  CHECK_THROWS_AS((void)parse_system("system wf { p <- q }"), ParseError);
  CHECK_THROWS_AS((void)parse_system("system wf { p <- q. "), ParseError);
  CHECK_THROWS_AS((void)parse_system("system wf { t <- q. }"), ParseError);
  CHECK_THROWS_AS((void)parse_system("system wf { p <- ~t. }"), ParseError);
  CHECK_THROWS_AS((void)parse_system("system wf { p <- q. } x"), ParseError);
  CHECK_THROWS_AS((void)parse_system("system wf { p <- q; }"), ParseError);
}

TEST_CASE("a fact defined in two sibling blocks is a partition breach") {
  const char *text = "system wf {\n #complete\n p <- q.\n"
                     " system wf { #complete q <- a. }\n"
                     " system wf { #complete q <- b. }\n}\n";
  try {
    (void)parse_system(text);
    FAIL("no error");
  } catch (const ValidationError &e) {
    CHECK(std::string(e.what()).find("clause 3") != std::string::npos);
  }
  CHECK_NOTHROW((void)parse_system(text, false));
}

TEST_CASE("comments and the completion directive") {
  auto ns = parse_system("% header\nsystem kk { # note\n #complete\n a <- b, c. a <- d. }");
  CHECK(ns.rules == normalize_rules(complementation(fixtures::rules({"a <- b, c", "a <- d"}))));
}

TEST_CASE("print and parse round trip on random systems") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto ns = random_nested(rng);
    auto text = print_system(ns);
    CAPTURE(text);
    CHECK(parse_system(text) == ns);
    auto d = random_definition(rng);
    CHECK(parse_fixpoint(print_fixpoint(d)) == d);
  }
}

TEST_CASE("compressed running example shows where its rules come from") {
  auto c = compress(fixtures::running());
  auto text = print_compression(c);
  CHECK(text.find("  ~r <- t.\n") != std::string::npos);
  CHECK(text.find("# from: ~r <- ~q. with ~q by ~q <- t.") != std::string::npos);
  CHECK(text.find("# from: child 0 justification") != std::string::npos);
  // The printed compression is itself a valid flat system.
  auto back = parse_system(text);
  CHECK(back.rules == c.system.frame.rules());
}

TEST_CASE("merged systems print their node per rule") {
  auto text = print_frame(merge(fixtures::running()));
  CHECK(text.find("r <- p, q.  # node 0 kk") != std::string::npos);
  CHECK(text.find("q <- q.  # node 1 wf") != std::string::npos);
}
