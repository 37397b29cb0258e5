// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/frames.hpp"
#include "njust/justify.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace fixtures {

inline njust::Fact F(const std::string &s) { return njust::Fact::parse(s); }

inline std::vector<njust::Rule> rules(std::initializer_list<const char *> text) {
  std::vector<njust::Rule> out;
  for (const char *t : text)
    out.push_back(njust::Rule::parse(t));
  return out;
}

inline njust::Frame frame(std::initializer_list<const char *> text,
                          std::initializer_list<const char *> opens = {}) {
  njust::FactSpace extra;
  for (const char *o : opens)
    extra.add(std::string(o));
  return njust::Frame::from_rules(rules(text), extra);
}

// p <- ~q, r. q <- q. ~p <- q. ~p <- ~r. ~q <- ~q. with r open.
inline njust::Frame example1() {
  return frame({"p <- ~q, r", "q <- q", "~p <- q", "~p <- ~r", "~q <- ~q"});
}

inline njust::JustificationSystem system(njust::Frame f, njust::EvalKind k) {
  return {std::move(f), njust::BranchEvaluation(k)};
}

} // namespace fixtures

#include "njust/nested.hpp"

namespace fixtures {

// Root (kk): r <- p, q. ~r <- ~p. ~r <- ~q. with the three-atom frame as a
// wf child.
inline njust::NestedSystem running() {
  auto child = njust::NestedSystem::make(
      njust::EvalKind::WF,
      rules({"p <- ~q, r", "q <- q", "~p <- q", "~p <- ~r", "~q <- ~q"}));
  return njust::NestedSystem::make(njust::EvalKind::KK,
                                   rules({"r <- p, q", "~r <- ~p", "~r <- ~q"}),
                                   {child});
}

inline njust::NestedSystem completed(njust::EvalKind k,
                                     std::initializer_list<const char *> positive,
                                     std::vector<njust::NestedSystem> children = {}) {
  return njust::NestedSystem::make(k, njust::complementation(rules(positive)),
                                   std::move(children));
}

// Aggregate programs: s <- p, atLeastTwo under stable semantics with the
// aggregate defined in a kk child, once in the FLP and once in the GZ style.
inline njust::NestedSystem aggregate_flp() {
  auto agg = completed(njust::EvalKind::KK,
                       {"atLeastTwo <- p, q", "atLeastTwo <- s, q",
                        "atLeastTwo <- p, s"});
  return completed(njust::EvalKind::ST, {"p <- t", "q <- t", "s <- p, atLeastTwo"},
                   {agg});
}

inline njust::NestedSystem aggregate_gz() {
  auto agg = completed(njust::EvalKind::KK,
                       {"atLeastTwo <- p, q, ~s", "atLeastTwo <- s, q, ~p",
                        "atLeastTwo <- p, s, ~q", "atLeastTwo <- p, q, s"});
  return completed(njust::EvalKind::ST, {"p <- t", "q <- t", "s <- p, atLeastTwo"},
                   {agg});
}

} // namespace fixtures
