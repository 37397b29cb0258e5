// SPDX-License-Identifier: Apache-2.0
#include "njust/nested.hpp"

#include "engine.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace njust {

NestedSystem NestedSystem::make(EvalKind evaluation, std::vector<Rule> rules,
                                std::vector<NestedSystem> children) {
  NestedSystem ns;
  ns.evaluation = evaluation;
  for (const auto &r : rules) {
    ns.local.insert(r.head);
    ns.local.insert(r.head.complement());
  }
  ns.rules = normalize_rules(std::move(rules));
  ns.children = std::move(children);
  return ns;
}

std::set<Fact> NestedSystem::defined() const {
  std::set<Fact> out = local;
  for (const auto &c : children) {
    auto d = c.defined();
    out.insert(d.begin(), d.end());
  }
  return out;
}

FactSpace NestedSystem::space() const {
  FactSpace s;
  for (const auto &x : local)
    s.add(x);
  for (const auto &r : rules) {
    s.add(r.head);
    for (const auto &b : r.body)
      s.add(b);
  }
  for (const auto &c : children)
    s.merge(c.space());
  return s;
}

std::set<Fact> NestedSystem::opens() const {
  auto d = defined();
  std::set<Fact> out;
  for (const auto &x : space().facts())
    if (!d.count(x))
      out.insert(x);
  return out;
}

Frame NestedSystem::local_frame() const { return Frame(space(), local, rules); }

std::size_t NestedSystem::node_count() const {
  std::size_t n = 1;
  for (const auto &c : children)
    n += c.node_count();
  return n;
}

namespace {

bool parametric_kind(EvalKind k) {
  return k == EvalKind::KK || k == EvalKind::WF || k == EvalKind::CWF;
}

std::string join(const std::set<Fact> &facts) {
  std::string s;
  for (const auto &x : facts)
    s += (s.empty() ? "" : ", ") + x.str();
  return s;
}

void validate_node(const NestedSystem &ns, const std::string &path,
                   NestedReport &report, bool is_root) {
  for (auto v : validate_frame(ns.local_frame())) {
    v.subject = path + ": " + v.subject;
    v.clause = 1;
    report.violations.push_back(std::move(v));
  }
  if (ns.evaluation == EvalKind::MERGE)
    report.violations.push_back(
        {path, "a node cannot use the merge evaluation", 1});
  if (!is_root && !parametric_kind(ns.evaluation)) {
    report.compressibility.compressible = false;
    report.compressibility.offending.push_back(path + ": " +
                                               eval_name(ns.evaluation));
  }

  std::vector<std::set<Fact>> child_defined;
  for (const auto &c : ns.children)
    child_defined.push_back(c.defined());
  for (std::size_t i = 0; i < ns.children.size(); ++i) {
    std::set<Fact> clash;
    for (const auto &x : child_defined[i])
      if (ns.local.count(x))
        clash.insert(x);
    if (!clash.empty())
      report.violations.push_back(
          {path + "/" + std::to_string(i),
           "defines facts that are local to its parent: " + join(clash), 3});
    for (std::size_t j = i + 1; j < ns.children.size(); ++j) {
      std::set<Fact> both;
      for (const auto &x : child_defined[i])
        if (child_defined[j].count(x))
          both.insert(x);
      if (!both.empty())
        report.violations.push_back(
            {path + "/" + std::to_string(i) + " and " + path + "/" +
                 std::to_string(j),
             "both define " + join(both), 3});
    }
  }
  std::set<Fact> below;
  for (const auto &d : child_defined)
    below.insert(d.begin(), d.end());
  for (std::size_t i = 0; i < ns.children.size(); ++i) {
    std::set<Fact> foreign;
    for (const auto &x : ns.children[i].opens())
      if (below.count(x) && !child_defined[i].count(x))
        foreign.insert(x);
    if (!foreign.empty())
      report.violations.push_back(
          {path + "/" + std::to_string(i),
           "uses facts defined in a sibling subtree: " + join(foreign), 5});
  }
  for (std::size_t i = 0; i < ns.children.size(); ++i)
    validate_node(ns.children[i], path + "/" + std::to_string(i), report,
                  false);
}

void number_nodes(const NestedSystem &ns, int parent, LocalityContext &ctx) {
  int id = static_cast<int>(ctx.evaluation_of.size());
  ctx.evaluation_of.push_back(ns.evaluation);
  ctx.parent.push_back(parent);
  for (const auto &x : ns.local)
    ctx.system_of[x] = id;
  for (const auto &c : ns.children)
    number_nodes(c, id, ctx);
}

void collect_rules(const NestedSystem &ns, std::vector<Rule> &out) {
  out.insert(out.end(), ns.rules.begin(), ns.rules.end());
  for (const auto &c : ns.children)
    collect_rules(c, out);
}

struct UnfoldedRule {
  Rule rule;
  Rule source;
  std::map<Fact, Rule> substitution;
};

std::vector<UnfoldedRule> unfold_with_origin(const std::vector<Rule> &rules,
                                             const std::vector<Rule> &lower,
                                             const std::set<Fact> &X,
                                             const Limits &limits) {
  std::map<Fact, std::vector<const Rule *>> by_head;
  for (const auto &r : lower)
    by_head[r.head].push_back(&r);
  std::vector<UnfoldedRule> out;
  std::size_t produced = 0;
  for (const auto &r : rules) {
    std::vector<Fact> keep;
    std::vector<Fact> ys;
    for (const auto &b : r.body)
      (X.count(b) ? ys : keep).push_back(b);
    std::vector<const std::vector<const Rule *> *> options;
    for (const auto &y : ys) {
      auto it = by_head.find(y);
      if (it == by_head.end())
        throw ContractError("no lower rule for '" + y.str() + "' in unfolding");
      options.push_back(&it->second);
    }
    std::vector<std::size_t> pick(ys.size(), 0);
    while (true) {
      std::vector<Fact> body = keep;
      std::map<Fact, Rule> sub;
      for (std::size_t i = 0; i < ys.size(); ++i) {
        const Rule *lr = (*options[i])[pick[i]];
        body.insert(body.end(), lr->body.begin(), lr->body.end());
        sub.emplace(ys[i], *lr);
      }
      if (++produced > limits.max_bodies)
        throw ResourceError("max_bodies", "unfolding", limits.max_bodies);
      out.push_back({Rule(r.head, std::move(body)), r, std::move(sub)});
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i]->size())
        pick[i++] = 0;
      if (i == pick.size())
        break;
    }
  }
  return out;
}

} // namespace

NestedReport validate_nested(const NestedSystem &ns) {
  NestedReport report;
  validate_node(ns, "root", report, true);
  return report;
}

void require_valid(const NestedSystem &ns) {
  auto report = validate_nested(ns);
  if (report.valid())
    return;
  std::string msg = "invalid nested system:";
  for (const auto &v : report.violations)
    msg += "\n  " + v.str();
  throw ValidationError(msg);
}

std::shared_ptr<const LocalityContext> locality_context(const NestedSystem &ns) {
  auto ctx = std::make_shared<LocalityContext>();
  number_nodes(ns, -1, *ctx);
  return ctx;
}

JustificationSystem merge(const NestedSystem &ns) {
  require_valid(ns);
  std::vector<Rule> all;
  collect_rules(ns, all);
  return {Frame(ns.space(), ns.defined(), std::move(all)),
          BranchEvaluation::merge(locality_context(ns))};
}

Flattening flatten(const JustificationSystem &sys, const Limits &limits) {
  if (!is_parametric(sys.evaluation))
    throw ContractError("flattening needs a parametric evaluation, not " +
                        sys.evaluation.str());
  auto table = SupportTable::build(sys, limits);
  Flattening out;
  std::vector<Rule> rules;
  for (const auto &x : sys.frame.defined())
    for (const auto &[values, witness] : table.value_sets(x)) {
      Rule r(x, values);
      rules.push_back(r);
      out.source.emplace(std::move(r), witness);
    }
  out.system = {Frame(sys.frame.space(), sys.frame.defined(), std::move(rules)),
                sys.evaluation};
  return out;
}

std::vector<Rule> unfold(const std::vector<Rule> &rules,
                         const std::vector<Rule> &lower, const std::set<Fact> &X,
                         const Limits &limits) {
  std::vector<Rule> out;
  for (auto &u : unfold_with_origin(rules, lower, X, limits))
    out.push_back(std::move(u.rule));
  return normalize_rules(std::move(out));
}

Compression compress(const NestedSystem &ns, const Limits &limits) {
  Compression c;
  c.local = ns.local;
  if (ns.children.empty()) {
    c.system = {ns.local_frame(), BranchEvaluation(ns.evaluation)};
    for (const auto &r : ns.rules)
      c.origin.emplace(r, RuleOrigin{});
    return c;
  }
  auto report = validate_nested(ns);
  if (!report.valid())
    require_valid(ns);
  if (!report.compressibility.compressible)
    throw ContractError("not compressible: " +
                        report.compressibility.offending.front());
  std::vector<Rule> lower;
  for (std::size_t i = 0; i < ns.children.size(); ++i) {
    c.children.push_back(compress(ns.children[i], limits));
    auto flat = flatten(c.children.back().system, limits);
    for (auto &[rule, witness] : flat.source) {
      RuleOrigin o;
      o.kind = RuleOrigin::Kind::Flattened;
      o.child = i;
      o.witness = witness;
      lower.push_back(rule);
      c.origin.emplace(rule, std::move(o));
    }
  }
  std::set<Fact> X = ns.defined();
  for (const auto &x : ns.local)
    X.erase(x);
  std::vector<Rule> all = lower;
  for (auto &u : unfold_with_origin(ns.rules, lower, X, limits)) {
    if (c.origin.count(u.rule))
      continue;
    RuleOrigin o;
    if (u.substitution.empty()) {
      o.kind = RuleOrigin::Kind::Local;
    } else {
      o.kind = RuleOrigin::Kind::Unfolded;
      o.source = u.source;
      o.substitution = std::move(u.substitution);
    }
    all.push_back(u.rule);
    c.origin.emplace(u.rule, std::move(o));
  }
  c.system = {Frame(ns.space(), ns.defined(), std::move(all)),
              BranchEvaluation(ns.evaluation)};
  return c;
}

namespace {

// Shrinking works on a mutable copy of the justification graph.
struct ShrinkState {
  Justification j;
  detail::Table table;
};

void shrink_at(const NestedSystem &node, ShrinkState &st) {
  for (const auto &child : node.children)
    shrink_at(child, st);
  if (node.children.empty())
    return;
  auto &nodes = st.j.nodes;
  const auto &t = st.table;
  std::vector<std::set<Fact>> child_defined;
  for (const auto &child : node.children)
    child_defined.push_back(child.defined());
  auto owner = [&](const Fact &x) -> int {
    for (std::size_t i = 0; i < child_defined.size(); ++i)
      if (child_defined[i].count(x))
        return static_cast<int>(i);
    return -1;
  };

  // The value set of the subjustification below each node of a child, and
  // the nodes that take its place.
  const std::size_t original = nodes.size();
  std::vector<std::optional<std::vector<int>>> replacement(original);
  std::vector<std::optional<std::vector<Fact>>> body(original);
  std::map<Fact, int> fresh_leaf;
  auto leaf_for = [&](const Fact &x) {
    auto it = fresh_leaf.find(x);
    if (it != fresh_leaf.end())
      return it->second;
    int id = static_cast<int>(nodes.size());
    nodes.push_back({x, std::nullopt, {}, 0});
    fresh_leaf.emplace(x, id);
    return id;
  };
  for (std::size_t v = 0; v < original; ++v) {
    int i = owner(nodes[v].label);
    if (i < 0 || !nodes[v].rule)
      continue;
    std::vector<char> def(t.facts.size(), 0);
    for (const auto &x : child_defined[i])
      def[t.id(x)] = 1;
    detail::Graph g;
    std::map<int, int> gid;
    std::vector<int> todo{static_cast<int>(v)};
    gid[static_cast<int>(v)] = g.add(t.id(nodes[v].label));
    std::vector<int> frontier;
    while (!todo.empty()) {
      int a = todo.back();
      todo.pop_back();
      if (!def[t.id(nodes[a].label)]) {
        frontier.push_back(a);
        continue;
      }
      for (int b : nodes[a].children) {
        auto [it, inserted] = gid.emplace(b, 0);
        if (inserted) {
          it->second = g.add(t.id(nodes[b].label));
          todo.push_back(b);
        }
        g.kids[gid[a]].push_back(it->second);
      }
    }
    g.root = 0;
    auto values = detail::branch_values(g, t, def,
                                        node.children[i].evaluation, nullptr);
    std::sort(frontier.begin(), frontier.end());
    std::set<Fact> covered;
    std::vector<int> kids = frontier;
    for (int a : frontier)
      covered.insert(nodes[a].label);
    std::vector<Fact> vals;
    for (int id : values) {
      vals.push_back(t.facts[id]);
      if (!covered.count(t.facts[id]))
        kids.push_back(leaf_for(t.facts[id]));
    }
    replacement[v] = std::move(kids);
    body[v] = std::move(vals);
  }
  for (std::size_t v = 0; v < original; ++v) {
    auto &n = nodes[v];
    if (!n.rule)
      continue;
    if (node.local.count(n.label)) {
      std::vector<int> kids;
      for (int c : n.children) {
        if (owner(nodes[c].label) >= 0) {
          if (!replacement[c])
            throw ContractError("child node without a rule in shrinking");
          kids.insert(kids.end(), replacement[c]->begin(),
                      replacement[c]->end());
        } else {
          kids.push_back(c);
        }
      }
      std::vector<Fact> b;
      for (int c : kids)
        b.push_back(nodes[c].label);
      n.rule = Rule(n.label, std::move(b));
      n.children = std::move(kids);
    } else if (replacement[v]) {
      n.rule = Rule(n.label, *body[v]);
      n.children = *replacement[v];
    }
  }
  // Children are rewritten before anything reads them again, so the old
  // edges of local nodes never leak into the result.
  st.j = st.j.pruned();
}

} // namespace

Justification shrink(const NestedSystem &ns, const Justification &j) {
  auto report = validate_nested(ns);
  if (!report.valid())
    require_valid(ns);
  if (!report.compressibility.compressible)
    throw ContractError("not compressible: " +
                        report.compressibility.offending.front());
  auto merged = merge(ns);
  if (!is_locally_complete(merged.frame, j))
    throw ContractError("justification is not locally complete in the merge");
  ShrinkState st{j.pruned(), detail::make_table(merged.frame, nullptr)};
  for (auto &n : st.j.nodes)
    n.phase = 0;
  shrink_at(ns, st);
  return st.j;
}

namespace {

struct Expander {
  Justification out;

  int add(const JustificationNode &n) {
    out.nodes.push_back(n);
    return static_cast<int>(out.nodes.size()) - 1;
  }

  // Copies `sub` (a justification below a child) into `out`, sending each of
  // its open leaves to `target(label)`. Returns the index of the copied root.
  template <class Target>
  int paste(const Justification &sub, const std::set<Fact> &child_defined,
            Target &&target) {
    std::vector<int> id(sub.nodes.size(), -1);
    for (std::size_t i = 0; i < sub.nodes.size(); ++i)
      if (sub.nodes[i].rule || child_defined.count(sub.nodes[i].label))
        id[i] = add({sub.nodes[i].label, sub.nodes[i].rule, {}, 0});
    for (std::size_t i = 0; i < sub.nodes.size(); ++i) {
      if (id[i] < 0)
        continue;
      std::vector<int> kids;
      for (int w : sub.nodes[i].children)
        kids.push_back(id[w] >= 0 ? id[w] : target(sub.nodes[w].label));
      out.nodes[id[i]].children = std::move(kids);
    }
    if (id[sub.root] < 0)
      throw ContractError("pasted justification has an open root");
    return id[sub.root];
  }
};

Justification expand_rec(const Compression &c, const Justification &j);

Justification expand_rec(const Compression &c, const Justification &j) {
  if (c.children.empty())
    return j.pruned();
  std::vector<std::set<Fact>> child_defined;
  for (const auto &ch : c.children)
    child_defined.push_back(ch.system.frame.defined());
  Expander ex;
  std::vector<int> mapped(j.nodes.size(), -1);
  std::vector<int> todo;
  auto map_node = [&](int v) {
    if (mapped[v] < 0) {
      mapped[v] = ex.add({j.nodes[v].label, std::nullopt, {}, 0});
      todo.push_back(v);
    }
    return mapped[v];
  };
  auto child_labelled = [&](int v, const Fact &x) {
    for (int w : j.nodes[v].children)
      if (j.nodes[w].label == x)
        return map_node(w);
    throw ContractError("no child labelled '" + x.str() +
                        "' to attach a pasted justification to");
  };
  auto expanded_witness = [&](const RuleOrigin &o) {
    return expand_rec(c.children.at(o.child), *o.witness);
  };
  map_node(j.root);
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    const auto &n = j.nodes[v];
    int nv = mapped[v];
    if (!n.rule)
      continue;
    auto it = c.origin.find(*n.rule);
    if (it == c.origin.end())
      throw ContractError("rule '" + n.rule->str() +
                          "' is not part of the compressed system");
    const RuleOrigin &o = it->second;
    switch (o.kind) {
    case RuleOrigin::Kind::Local: {
      ex.out.nodes[nv].rule = n.rule;
      std::vector<int> kids;
      for (int w : n.children)
        kids.push_back(map_node(w));
      ex.out.nodes[nv].children = std::move(kids);
      break;
    }
    case RuleOrigin::Kind::Unfolded: {
      ex.out.nodes[nv].rule = o.source;
      std::vector<int> kids;
      for (const auto &e : o.source->body) {
        auto sub_it = o.substitution.find(e);
        if (sub_it == o.substitution.end()) {
          kids.push_back(child_labelled(v, e));
          continue;
        }
        const RuleOrigin &lo = c.origin.at(sub_it->second);
        Justification sub = expanded_witness(lo);
        kids.push_back(ex.paste(sub, child_defined.at(lo.child),
                                [&](const Fact &x) { return child_labelled(v, x); }));
      }
      ex.out.nodes[nv].children = std::move(kids);
      break;
    }
    case RuleOrigin::Kind::Flattened: {
      Justification sub = expanded_witness(o);
      int root = ex.paste(sub, child_defined.at(o.child),
                          [&](const Fact &x) { return child_labelled(v, x); });
      ex.out.nodes[nv].rule = ex.out.nodes[root].rule;
      ex.out.nodes[nv].children = ex.out.nodes[root].children;
      // edges back into the pasted root now go to nv
      for (auto &node : ex.out.nodes)
        for (int &w : node.children)
          if (w == root)
            w = nv;
      break;
    }
    }
  }
  ex.out.root = mapped[j.root];
  return ex.out.pruned();
}

} // namespace

Justification expand(const Compression &c, const Justification &j) {
  if (!is_locally_complete(c.system.frame, j))
    throw ContractError("justification is not locally complete in the "
                        "compressed system");
  return expand_rec(c, j);
}

EquivalenceReport check_equivalence(const NestedSystem &ns,
                                    const SamplingPolicy &policy,
                                    const Limits &limits) {
  EquivalenceReport report;
  auto v = validate_nested(ns);
  if (!v.valid()) {
    report.reason = "invalid nested system: " + v.violations.front().str();
    return report;
  }
  if (!v.compressibility.compressible) {
    report.reason =
        "not compressible: " + v.compressibility.offending.front();
    return report;
  }
  if (!parametric_kind(ns.evaluation)) {
    report.reason = "root evaluation " + eval_name(ns.evaluation) +
                    " does not send finite branches to their last element";
    return report;
  }
  report.in_hypothesis = true;
  auto compressed = SupportTable::build(compress(ns, limits).system, limits);
  auto merged = SupportTable::build(merge(ns), limits);
  const auto defined = ns.defined();
  const FactSpace space = ns.space();
  std::vector<std::string> atoms(space.atoms().begin(), space.atoms().end());
  auto check = [&](const Interpretation &interp) {
    ++report.interpretations;
    for (const auto &x : defined) {
      Truth a = compressed.supported_value(x, interp);
      Truth b = merged.supported_value(x, interp);
      if (a != b)
        report.counterexamples.push_back({x, interp, a, b});
    }
    return true;
  };
  if (policy.exhaustive) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if ((count *= 3) > limits.max_interpretations)
        throw ResourceError("max_interpretations", "equivalence check",
                            limits.max_interpretations);
    for_each_interpretation(atoms, false, check);
  } else {
    std::mt19937_64 rng(policy.seed);
    for (std::size_t s = 0; s < policy.samples; ++s) {
      Interpretation interp;
      for (const auto &a : atoms)
        interp.set(a, static_cast<Truth>(rng() % 3));
      check(interp);
    }
  }
  return report;
}

} // namespace njust
