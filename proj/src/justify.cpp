// SPDX-License-Identifier: Apache-2.0
#include "njust/justify.hpp"

#include "engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace njust {

namespace {

struct Prepared {
  detail::Table table;
  std::optional<detail::MergeShape> shape;

  explicit Prepared(const JustificationSystem &sys)
      : table(detail::make_table(sys.frame, sys.evaluation.context())) {
    if (sys.evaluation.kind() == EvalKind::MERGE)
      shape = detail::make_shape(*sys.evaluation.context());
  }
  const detail::MergeShape *shape_ptr() const {
    return shape ? &*shape : nullptr;
  }
};

detail::Graph to_graph(const detail::Table &t, const Justification &j) {
  detail::Graph g;
  for (const auto &n : j.nodes)
    g.add(t.id(n.label));
  for (std::size_t i = 0; i < j.nodes.size(); ++i)
    g.kids[i] = j.nodes[i].children;
  g.root = j.root;
  return g;
}

Justification from_choice(const Frame &frame, const detail::Table &t,
                          const detail::Choice &c) {
  detail::Graph g = detail::graph_of(t, c);
  Justification j;
  j.nodes.resize(g.label.size());
  for (std::size_t i = 0; i < g.label.size(); ++i) {
    j.nodes[i].label = t.facts[g.label[i]];
    j.nodes[i].children = g.kids[i];
  }
  for (std::size_t i = 0; i < c.order.size(); ++i) {
    int s = c.order[i];
    int fact = s / 2;
    j.nodes[i].rule = frame.rules()[t.rule_of[fact][c.rule[s]]];
    j.nodes[i].phase = s % 2;
  }
  j.root = 0;
  return j;
}

std::vector<Fact> facts_of(const detail::Table &t, const std::vector<int> &ids) {
  std::vector<Fact> out;
  out.reserve(ids.size());
  for (int i : ids)
    out.push_back(t.facts[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<char> reachable(const Justification &j) {
  std::vector<char> seen(j.nodes.size(), 0);
  std::vector<int> todo{j.root};
  seen.at(j.root) = 1;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int w : j.nodes[v].children)
      if (!seen.at(w)) {
        seen[w] = 1;
        todo.push_back(w);
      }
  }
  return seen;
}

Truth min_over(const std::vector<Fact> &values, const Interpretation &interp) {
  Truth best = Truth::True;
  for (const auto &x : values) {
    best = std::min(best, interp(x));
    if (best == Truth::False)
      break;
  }
  return best;
}

} // namespace

std::size_t Justification::state_count() const {
  auto seen = reachable(*this);
  std::size_t n = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    n += seen[i] && nodes[i].rule;
  return n;
}

std::vector<Rule> Justification::rules_in_order() const {
  std::vector<Rule> out;
  std::vector<char> seen(nodes.size(), 0);
  std::deque<int> todo{root};
  seen.at(root) = 1;
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    if (nodes[v].rule)
      out.push_back(*nodes[v].rule);
    for (int w : nodes[v].children)
      if (!seen[w]) {
        seen[w] = 1;
        todo.push_back(w);
      }
  }
  return out;
}

Justification Justification::pruned() const {
  std::vector<int> remap(nodes.size(), -1);
  Justification out;
  std::deque<int> todo{root};
  remap.at(root) = 0;
  out.nodes.push_back(nodes[root]);
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    for (int w : nodes[v].children)
      if (remap[w] < 0) {
        remap[w] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(nodes[w]);
        todo.push_back(w);
      }
  }
  for (auto &n : out.nodes)
    for (int &w : n.children)
      w = remap[w];
  out.root = 0;
  return out;
}

std::string Justification::str() const {
  std::ostringstream out;
  for (const auto &r : rules_in_order())
    out << r.str() << '\n';
  return out.str();
}

bool equivalent(const Justification &a, const Justification &b) {
  const int na = static_cast<int>(a.nodes.size());
  const int total = na + static_cast<int>(b.nodes.size());
  auto node = [&](int i) -> const JustificationNode & {
    return i < na ? a.nodes[i] : b.nodes[i - na];
  };
  auto kids = [&](int i) {
    std::vector<int> out = node(i).children;
    if (i >= na)
      for (int &w : out)
        w += na;
    return out;
  };
  std::vector<int> cls(total);
  std::size_t classes = 0;
  {
    std::map<std::pair<Fact, std::optional<Rule>>, int> ids;
    for (int i = 0; i < total; ++i) {
      auto key = std::make_pair(node(i).label, node(i).rule);
      cls[i] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
    }
    classes = ids.size();
  }
  while (true) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<int> next(total);
    for (int i = 0; i < total; ++i) {
      std::vector<int> sig;
      for (int w : kids(i))
        sig.push_back(cls[w]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      next[i] = ids.emplace(std::make_pair(cls[i], std::move(sig)),
                            static_cast<int>(ids.size()))
                    .first->second;
    }
    cls = std::move(next);
    if (ids.size() == classes)
      break;
    classes = ids.size();
  }
  return cls[a.root] == cls[na + b.root];
}

bool is_locally_complete(const Frame &frame, const Justification &j) {
  if (j.nodes.empty() || j.root < 0 ||
      j.root >= static_cast<int>(j.nodes.size()))
    return false;
  for (const auto &n : j.nodes)
    for (int w : n.children)
      if (w < 0 || w >= static_cast<int>(j.nodes.size()))
        return false;
  auto seen = reachable(j);
  for (std::size_t i = 0; i < j.nodes.size(); ++i) {
    if (!seen[i])
      continue;
    const auto &n = j.nodes[i];
    if (!frame.is_defined(n.label)) {
      if (n.rule || !n.children.empty() || !frame.space().contains(n.label))
        return false;
      continue;
    }
    if (!n.rule || n.rule->head != n.label)
      return false;
    if (!std::binary_search(frame.rules().begin(), frame.rules().end(),
                            *n.rule))
      return false;
    std::vector<Fact> labels;
    for (int w : n.children)
      labels.push_back(j.nodes[w].label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels != n.rule->body)
      return false;
  }
  return true;
}

void enumerate_justifications(
    const JustificationSystem &sys, const Fact &x, const Limits &limits,
    const std::function<bool(const Justification &)> &visit) {
  Prepared p(sys);
  if (!sys.frame.is_defined(x))
    throw ContractError("'" + x.str() + "' is not a defined fact");
  detail::enumerate(p.table, sys.evaluation.kind(), p.table.id(x), false,
                    limits.max_justifications, [&](const detail::Choice &c) {
                      return visit(from_choice(sys.frame, p.table, c));
                    });
}

std::vector<Justification> enumerate_justifications(const JustificationSystem &sys,
                                                    const Fact &x,
                                                    const Limits &limits) {
  std::vector<Justification> out;
  enumerate_justifications(sys, x, limits, [&](const Justification &j) {
    out.push_back(j);
    return true;
  });
  return out;
}

std::set<Fact> branch_values(const JustificationSystem &sys,
                             const Justification &j) {
  if (!is_locally_complete(sys.frame, j))
    throw ContractError("justification is not locally complete");
  if (!sys.frame.is_defined(j.root_fact()))
    throw ContractError("justification root is not a defined fact");
  Prepared p(sys);
  auto g = to_graph(p.table, j);
  auto ids = detail::branch_values(g, p.table, p.table.defined,
                                   sys.evaluation.kind(), p.shape_ptr());
  auto facts = facts_of(p.table, ids);
  return {facts.begin(), facts.end()};
}

Truth jval(const JustificationSystem &sys, const Justification &j,
           const Interpretation &interp) {
  auto values = branch_values(sys, j);
  return min_over({values.begin(), values.end()}, interp);
}

SupportTable SupportTable::build(const JustificationSystem &sys,
                                 const Limits &limits) {
  Prepared p(sys);
  SupportTable table;
  table.defined_ = sys.frame.defined();
  for (const auto &x : sys.frame.defined()) {
    auto &sets = table.sets_[x];
    detail::enumerate(
        p.table, sys.evaluation.kind(), p.table.id(x), true,
        limits.max_justifications, [&](const detail::Choice &c) {
          auto g = detail::graph_of(p.table, c);
          auto ids = detail::branch_values(g, p.table, p.table.defined,
                                           sys.evaluation.kind(),
                                           p.shape_ptr());
          auto key = facts_of(p.table, ids);
          if (!sets.count(key))
            sets.emplace(std::move(key), from_choice(sys.frame, p.table, c));
          return true;
        });
  }
  return table;
}

Truth SupportTable::supported_value(const Fact &x,
                                    const Interpretation &interp) const {
  if (!defined_.count(x))
    return interp(x);
  Truth best = Truth::False;
  for (const auto &[values, witness] : sets_.at(x)) {
    best = std::max(best, min_over(values, interp));
    if (best == Truth::True)
      break;
  }
  return best;
}

const std::map<std::vector<Fact>, Justification> &
SupportTable::value_sets(const Fact &x) const {
  auto it = sets_.find(x);
  if (it == sets_.end())
    throw ContractError("'" + x.str() + "' is not a defined fact");
  return it->second;
}

Truth supported_value(const JustificationSystem &sys, const Fact &x,
                      const Interpretation &interp, const Limits &limits) {
  if (!sys.frame.is_defined(x))
    return interp(x);
  Prepared p(sys);
  Truth best = Truth::False;
  detail::enumerate(p.table, sys.evaluation.kind(), p.table.id(x), true,
                    limits.max_justifications, [&](const detail::Choice &c) {
                      auto g = detail::graph_of(p.table, c);
                      auto ids = detail::branch_values(
                          g, p.table, p.table.defined, sys.evaluation.kind(),
                          p.shape_ptr());
                      best = std::max(best, min_over(facts_of(p.table, ids),
                                                     interp));
                      return best != Truth::True;
                    });
  return best;
}

bool is_model(const SupportTable &table, const Interpretation &interp) {
  for (const auto &x : table.defined())
    if (table.supported_value(x, interp) != interp(x))
      return false;
  return true;
}

bool is_model(const JustificationSystem &sys, const Interpretation &interp,
              const Limits &limits) {
  return is_model(SupportTable::build(sys, limits), interp);
}

std::vector<Interpretation> enumerate_models(const JustificationSystem &sys,
                                             bool two_valued_only,
                                             const Limits &limits) {
  const auto &atoms = sys.frame.space().atoms();
  std::size_t count = 1;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    count *= two_valued_only ? 2 : 3;
    if (count > limits.max_interpretations)
      throw ResourceError("max_interpretations", "model enumeration",
                          limits.max_interpretations);
  }
  auto table = SupportTable::build(sys, limits);
  std::vector<Interpretation> out;
  for_each_interpretation({atoms.begin(), atoms.end()}, two_valued_only,
                          [&](const Interpretation &interp) {
                            if (is_model(table, interp))
                              out.push_back(interp);
                            return true;
                          });
  return out;
}

Explanation best_justification(const JustificationSystem &sys, const Fact &x,
                               const Interpretation &interp,
                               const Limits &limits) {
  if (!sys.frame.is_defined(x))
    throw ContractError("'" + x.str() + "' is not a defined fact");
  Prepared p(sys);
  std::optional<Explanation> best;
  std::size_t best_states = 0;
  std::vector<Rule> best_rules;
  detail::enumerate(
      p.table, sys.evaluation.kind(), p.table.id(x), false,
      limits.max_justifications, [&](const detail::Choice &c) {
        auto g = detail::graph_of(p.table, c);
        auto ids = detail::branch_values(g, p.table, p.table.defined,
                                         sys.evaluation.kind(), p.shape_ptr());
        auto values = facts_of(p.table, ids);
        Truth v = min_over(values, interp);
        if (best && v < best->value)
          return true;
        if (best && v == best->value && c.order.size() > best_states)
          return true;
        Justification j = from_choice(sys.frame, p.table, c);
        auto rules = j.rules_in_order();
        if (best && v == best->value && c.order.size() == best_states &&
            !(rules < best_rules))
          return true;
        best = Explanation{std::move(j), {values.begin(), values.end()}, v};
        best_states = c.order.size();
        best_rules = std::move(rules);
        return true;
      });
  return *best;
}

std::string to_dot(const JustificationSystem &sys, const Explanation &e) {
  const Justification j = e.justification.pruned();
  std::ostringstream out;
  out << "digraph justification {\n";
  for (std::size_t i = 0; i < j.nodes.size(); ++i) {
    const auto &n = j.nodes[i];
    out << "  n" << i << " [label=\"" << n.label.str() << "\"";
    if (!sys.frame.is_defined(n.label))
      out << ", shape=box";
    out << "];\n";
  }
  for (std::size_t i = 0; i < j.nodes.size(); ++i)
    for (int w : j.nodes[i].children)
      out << "  n" << i << " -> n" << w << ";\n";
  out << "  legend [shape=note, label=\"root: " << j.root_fact().str()
      << "\\nvalues:";
  for (const auto &v : e.values)
    out << ' ' << v.str();
  out << "\\nvalue: " << truth_char(e.value) << "\"];\n}\n";
  return out.str();
}

std::string to_text(const Explanation &e) {
  std::ostringstream out;
  out << e.justification.str() << "values:";
  for (const auto &v : e.values)
    out << ' ' << v.str();
  out << "\nvalue: " << truth_char(e.value) << '\n';
  return out.str();
}

} // namespace njust
