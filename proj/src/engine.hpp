// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/branches.hpp"
#include "njust/frames.hpp"

#include <functional>
#include <map>
#include <vector>

namespace njust::detail {

// Dense numbering of the facts of a frame.
struct Table {
  std::vector<Fact> facts;
  std::map<Fact, int> ids;
  std::vector<int> complement;
  std::vector<int> sign; // +1, -1, 0 for logical facts
  std::vector<char> defined;
  std::vector<int> node; // owning system under a merge evaluation, else -1
  std::vector<std::vector<std::vector<int>>> bodies; // per fact, per rule
  std::vector<std::vector<std::size_t>> rule_of;     // index into frame rules
  int t = 0, f = 1, u = 2;

  [[nodiscard]] int find(const Fact &x) const;
  [[nodiscard]] int id(const Fact &x) const; // ContractError when absent
  int add(const Fact &x);
};

Table make_table(const Frame &frame, const LocalityContext *ctx);

struct MergeShape {
  std::vector<EvalKind> eval;
  std::vector<std::vector<char>> in_subtree; // [ancestor][node]
};

MergeShape make_shape(const LocalityContext &ctx);

// A finite presentation of a justification: the tree is its unravelling from
// `root`. Nodes whose label is not defined are leaves.
struct Graph {
  std::vector<int> label;
  std::vector<std::vector<int>> kids;
  int root = 0;

  int add(int fact) {
    label.push_back(fact);
    kids.emplace_back();
    return static_cast<int>(label.size()) - 1;
  }
};

// Sorted ids of the values of all branches from the root.
std::vector<int> branch_values(const Graph &g, const Table &t,
                               const std::vector<char> &defined, EvalKind kind,
                               const MergeShape *shape);

// Nontrivial strongly connected components of the subgraph induced by
// `mask`, where only nodes with defined labels have outgoing edges.
std::vector<std::vector<int>> cyclic_components(const Graph &g,
                                                const std::vector<char> &mask);

// One memoryless justification: discovery order of states and the chosen
// rule (index into Table::bodies) of each state. A state is fact * 2 + phase.
struct Choice {
  const std::vector<int> &order;
  const std::vector<int> &rule; // indexed by state
};

// Visits every justification for `root` whose states carry one rule each.
// Under ST a state also records whether the sign has already switched. With
// `relevant_only`, states that cannot influence branch values keep their
// first rule. Returns false if the visitor stopped early.
bool enumerate(const Table &t, EvalKind kind, int root, bool relevant_only,
               std::size_t cap, const std::function<bool(const Choice &)> &visit);

Graph graph_of(const Table &t, const Choice &c);

} // namespace njust::detail
