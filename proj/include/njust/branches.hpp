// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/facts.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace njust {

enum class EvalKind : std::uint8_t { SP, KK, WF, CWF, ST, MERGE };

[[nodiscard]] std::string eval_name(EvalKind kind); // "sp", "kk", ...
[[nodiscard]] EvalKind parse_eval(std::string_view name);

// Where every defined fact of a nested system lives. Nodes are numbered in
// pre-order; node 0 is the root.
struct LocalityContext {
  std::map<Fact, int> system_of;
  std::vector<EvalKind> evaluation_of;
  std::vector<int> parent; // -1 for the root

  [[nodiscard]] int depth(int node) const;
  [[nodiscard]] bool is_ancestor_or_self(int ancestor, int node) const;
};

class BranchEvaluation {
public:
  BranchEvaluation() = default;
  explicit BranchEvaluation(EvalKind kind);
  static BranchEvaluation merge(std::shared_ptr<const LocalityContext> ctx);

  [[nodiscard]] EvalKind kind() const { return kind_; }
  [[nodiscard]] const LocalityContext *context() const { return ctx_.get(); }
  [[nodiscard]] std::shared_ptr<const LocalityContext> shared_context() const {
    return ctx_;
  }
  [[nodiscard]] std::string str() const { return eval_name(kind_); }

private:
  EvalKind kind_ = EvalKind::WF;
  std::shared_ptr<const LocalityContext> ctx_;
};

// Every finite branch ends in an open fact and every infinite branch is sent
// to a logical fact.
[[nodiscard]] bool is_parametric(const BranchEvaluation &be);

// A finite path ending in an open fact, or an infinite path presented as a
// prefix followed by a repeated nonempty cycle.
class Branch {
public:
  static Branch finite(std::vector<Fact> path);
  static Branch lasso(std::vector<Fact> prefix, std::vector<Fact> cycle);
  // "p -> ~q -> (~q)*" or "p -> r"
  static Branch parse(std::string_view text);

  [[nodiscard]] bool is_finite() const { return cycle_.empty(); }
  [[nodiscard]] const std::vector<Fact> &path() const { return prefix_; }
  [[nodiscard]] const std::vector<Fact> &prefix() const { return prefix_; }
  [[nodiscard]] const std::vector<Fact> &cycle() const { return cycle_; }
  [[nodiscard]] const Fact &first() const;
  // Element `i` of the (possibly infinite) sequence.
  [[nodiscard]] const Fact &at(std::size_t i) const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Branch &, const Branch &) = default;

private:
  std::vector<Fact> prefix_;
  std::vector<Fact> cycle_;
};

// Value of a branch. `root_sign` defaults to the sign of the branch's first
// element. For MERGE the cycle decides the responsible node, the branch is
// projected onto that node's local facts and evaluated there with the sign of
// the projection's first element.
[[nodiscard]] Fact evaluate_branch(const BranchEvaluation &be, const Branch &b,
                                   std::optional<Sign> root_sign = {});

// Drops the facts outside `keep`; ContractError if the cycle loses all its
// elements.
[[nodiscard]] Branch project_branch(const Branch &b, const std::set<Fact> &keep);

} // namespace njust
