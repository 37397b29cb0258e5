// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/branches.hpp"
#include "njust/error.hpp"
#include "njust/frames.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace njust {

struct JustificationSystem {
  Frame frame;
  BranchEvaluation evaluation;
};

struct JustificationNode {
  Fact label;
  std::optional<Rule> rule; // empty for leaves
  std::vector<int> children;
  int phase = 0; // 1 once the sign switched under ST
};

// A rooted graph whose unravelling from `root` is a tree-like justification.
// Nodes with a defined label carry a rule whose body is the set of their
// children's labels; several children may share a label.
struct Justification {
  std::vector<JustificationNode> nodes;
  int root = 0;

  [[nodiscard]] const Fact &root_fact() const { return nodes.at(root).label; }
  [[nodiscard]] std::size_t state_count() const; // reachable nodes with a rule
  // Rules of the reachable nodes in breadth-first order.
  [[nodiscard]] std::vector<Rule> rules_in_order() const;
  // Copy without nodes unreachable from the root.
  [[nodiscard]] Justification pruned() const;
  [[nodiscard]] std::string str() const;
};

// Both graphs unravel to the same tree up to duplicated identical subtrees.
[[nodiscard]] bool equivalent(const Justification &a, const Justification &b);

// Every reachable node with a defined label uses a rule of the frame whose
// body matches its children; nodes with open labels have no children.
[[nodiscard]] bool is_locally_complete(const Frame &frame,
                                       const Justification &j);

// Visits the justifications of `x` that choose one rule per state, where a
// state is a fact (plus the switch flag under ST). ResourceError past
// `limits.max_justifications`.
void enumerate_justifications(const JustificationSystem &sys, const Fact &x,
                              const Limits &limits,
                              const std::function<bool(const Justification &)> &visit);
[[nodiscard]] std::vector<Justification>
enumerate_justifications(const JustificationSystem &sys, const Fact &x,
                         const Limits &limits = {});

[[nodiscard]] std::set<Fact> branch_values(const JustificationSystem &sys,
                                           const Justification &j);
[[nodiscard]] Truth jval(const JustificationSystem &sys, const Justification &j,
                         const Interpretation &interp);

// For every defined fact, the distinct value sets of its justifications and a
// witness for each. Supported values are maxima of minima over these sets.
class SupportTable {
public:
  SupportTable() = default;
  static SupportTable build(const JustificationSystem &sys,
                            const Limits &limits = {});

  [[nodiscard]] Truth supported_value(const Fact &x,
                                      const Interpretation &interp) const;
  [[nodiscard]] const std::map<std::vector<Fact>, Justification> &
  value_sets(const Fact &x) const;
  [[nodiscard]] const std::set<Fact> &defined() const { return defined_; }

private:
  std::set<Fact> defined_;
  std::map<Fact, std::map<std::vector<Fact>, Justification>> sets_;
};

[[nodiscard]] Truth supported_value(const JustificationSystem &sys,
                                    const Fact &x, const Interpretation &interp,
                                    const Limits &limits = {});
[[nodiscard]] bool is_model(const JustificationSystem &sys,
                            const Interpretation &interp,
                            const Limits &limits = {});
[[nodiscard]] bool is_model(const SupportTable &table,
                            const Interpretation &interp);
// Interpretations over every atom of the space, in enumeration order.
[[nodiscard]] std::vector<Interpretation>
enumerate_models(const JustificationSystem &sys, bool two_valued_only,
                 const Limits &limits = {});

struct Explanation {
  Justification justification;
  std::set<Fact> values;
  Truth value = Truth::Unknown;
};

// A justification reaching the supported value; ties go to fewer states and
// then to the lexicographically smaller list of rules.
[[nodiscard]] Explanation best_justification(const JustificationSystem &sys,
                                             const Fact &x,
                                             const Interpretation &interp,
                                             const Limits &limits = {});

[[nodiscard]] std::string to_dot(const JustificationSystem &sys,
                                 const Explanation &e);
[[nodiscard]] std::string to_text(const Explanation &e);

} // namespace njust
