// SPDX-License-Identifier: Apache-2.0
#include "engine.hpp"

#include "njust/error.hpp"

#include <algorithm>

namespace njust::detail {

int Table::find(const Fact &x) const {
  auto it = ids.find(x);
  return it == ids.end() ? -1 : it->second;
}

int Table::id(const Fact &x) const {
  int i = find(x);
  if (i < 0)
    throw ContractError("fact '" + x.str() + "' is outside the fact space");
  return i;
}

int Table::add(const Fact &x) {
  if (int i = find(x); i >= 0)
    return i;
  int i = static_cast<int>(facts.size());
  facts.push_back(x);
  ids.emplace(x, i);
  sign.push_back(x.is_logical() ? 0 : (x.negated() ? -1 : 1));
  defined.push_back(0);
  node.push_back(-1);
  bodies.emplace_back();
  rule_of.emplace_back();
  complement.push_back(-1);
  return i;
}

Table make_table(const Frame &frame, const LocalityContext *ctx) {
  Table t;
  t.t = t.add(Fact::logical(Truth::True));
  t.f = t.add(Fact::logical(Truth::False));
  t.u = t.add(Fact::logical(Truth::Unknown));
  for (const auto &x : frame.space().facts())
    t.add(x);
  for (const auto &x : frame.defined())
    t.add(x);
  for (const auto &r : frame.rules()) {
    t.add(r.head);
    for (const auto &b : r.body)
      t.add(b);
  }
  for (std::size_t i = 0; i < t.facts.size(); ++i)
    t.complement[i] = t.add(t.facts[i].complement());
  for (std::size_t i = 0; i < t.facts.size(); ++i)
    if (t.complement[i] < 0)
      t.complement[i] = t.id(t.facts[i].complement());
  for (const auto &x : frame.defined())
    t.defined[t.id(x)] = 1;
  const auto &rules = frame.rules();
  for (std::size_t k = 0; k < rules.size(); ++k) {
    int h = t.id(rules[k].head);
    std::vector<int> body;
    for (const auto &b : rules[k].body)
      body.push_back(t.id(b));
    t.bodies[h].push_back(std::move(body));
    t.rule_of[h].push_back(k);
  }
  if (ctx)
    for (const auto &[x, n] : ctx->system_of)
      if (int i = t.find(x); i >= 0)
        t.node[i] = n;
  return t;
}

MergeShape make_shape(const LocalityContext &ctx) {
  MergeShape s;
  s.eval = ctx.evaluation_of;
  const auto n = ctx.evaluation_of.size();
  s.in_subtree.assign(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      s.in_subtree[a][b] = ctx.is_ancestor_or_self(static_cast<int>(a),
                                                   static_cast<int>(b));
  return s;
}

namespace {

struct Tarjan {
  const Graph &g;
  const std::vector<char> &mask;
  std::vector<int> index, low, stack;
  std::vector<char> on_stack;
  int counter = 0;
  std::vector<std::vector<int>> out;

  Tarjan(const Graph &graph, const std::vector<char> &m)
      : g(graph), mask(m), index(graph.label.size(), -1),
        low(graph.label.size(), 0), on_stack(graph.label.size(), 0) {}

  void visit(int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : g.kids[v]) {
      if (!mask[w])
        continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v])
      return;
    std::vector<int> comp;
    int w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = 0;
      comp.push_back(w);
    } while (w != v);
    bool cyclic = comp.size() > 1 ||
                  std::find(g.kids[v].begin(), g.kids[v].end(), v) !=
                      g.kids[v].end();
    if (cyclic)
      out.push_back(std::move(comp));
  }
};

} // namespace

std::vector<std::vector<int>> cyclic_components(const Graph &g,
                                                const std::vector<char> &mask) {
  Tarjan tj(g, mask);
  for (std::size_t v = 0; v < g.label.size(); ++v)
    if (mask[v] && tj.index[v] < 0)
      tj.visit(static_cast<int>(v));
  return std::move(tj.out);
}

namespace {

struct Evaluator {
  const Graph &g;
  const Table &t;
  const std::vector<char> &def;
  std::vector<char> reach;
  std::vector<int> out;

  Evaluator(const Graph &graph, const Table &table,
            const std::vector<char> &defined)
      : g(graph), t(table), def(defined), reach(graph.label.size(), 0) {}

  bool internal(int v) const { return def[g.label[v]] != 0; }
  int sign(int v) const { return t.sign[g.label[v]]; }

  void reach_from_root() {
    std::vector<int> todo{g.root};
    reach[g.root] = 1;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      if (!internal(v))
        continue;
      for (int w : g.kids[v])
        if (!reach[w]) {
          reach[w] = 1;
          todo.push_back(w);
        }
    }
  }

  std::vector<char> internal_mask() const {
    std::vector<char> m(reach.size(), 0);
    for (std::size_t v = 0; v < reach.size(); ++v)
      m[v] = reach[v] && internal(static_cast<int>(v));
    return m;
  }

  void finite_values() {
    for (std::size_t v = 0; v < reach.size(); ++v)
      if (reach[v] && !internal(static_cast<int>(v)))
        out.push_back(g.label[v]);
  }

  // Tail values for WF (or CWF with `swap`) over the nodes in `scope`, where
  // only nodes in `local` count for the sign pattern.
  void sign_tail(const std::vector<char> &scope, const std::vector<char> &local,
                 bool swap) {
    std::vector<char> no_pos = scope, no_neg = scope;
    for (std::size_t v = 0; v < scope.size(); ++v) {
      if (!scope[v] || !local[v])
        continue;
      (sign(static_cast<int>(v)) > 0 ? no_pos : no_neg)[v] = 0;
    }
    auto has = [&](const std::vector<std::vector<int>> &comps, int want) {
      for (const auto &c : comps)
        for (int v : c)
          if (local[v] && sign(v) == want)
            return true;
      return false;
    };
    if (has(cyclic_components(g, no_pos), -1))
      out.push_back(swap ? t.f : t.t);
    if (has(cyclic_components(g, no_neg), 1))
      out.push_back(swap ? t.t : t.f);
    for (const auto &c : cyclic_components(g, scope)) {
      bool pos = false, neg = false;
      for (int v : c)
        if (local[v])
          (sign(v) > 0 ? pos : neg) = true;
      if (pos && neg) {
        out.push_back(t.u);
        break;
      }
    }
  }

  void plain(EvalKind kind) {
    if (kind == EvalKind::SP) {
      for (int w : g.kids[g.root])
        out.push_back(g.label[w]);
      return;
    }
    if (kind == EvalKind::ST) {
      st_values();
      return;
    }
    finite_values();
    auto mask = internal_mask();
    if (kind == EvalKind::KK) {
      if (!cyclic_components(g, mask).empty())
        out.push_back(t.u);
      return;
    }
    sign_tail(mask, mask, kind == EvalKind::CWF);
  }

  void st_values() {
    const int s = sign(g.root);
    std::vector<char> region(g.label.size(), 0);
    std::vector<int> todo{g.root};
    region[g.root] = 1;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int w : g.kids[v]) {
        if (!internal(w) || sign(w) != s) {
          out.push_back(g.label[w]);
        } else if (!region[w]) {
          region[w] = 1;
          todo.push_back(w);
        }
      }
    }
    if (!cyclic_components(g, region).empty())
      out.push_back(s > 0 ? t.f : t.t);
  }

  void merge(const MergeShape &shape) {
    finite_values();
    auto mask = internal_mask();
    if (cyclic_components(g, mask).empty())
      return;
    const int n = static_cast<int>(g.label.size());
    for (std::size_t sys = 0; sys < shape.eval.size(); ++sys) {
      std::vector<char> scope(n, 0), local(n, 0);
      bool any_local = false;
      for (int v = 0; v < n; ++v) {
        if (!mask[v])
          continue;
        int owner = t.node[g.label[v]];
        if (owner < 0)
          throw ContractError("fact '" + t.facts[g.label[v]].str() +
                              "' has no system in the locality context");
        scope[v] = shape.in_subtree[sys][owner];
        local[v] = owner == static_cast<int>(sys);
        any_local = any_local || local[v];
      }
      if (!any_local)
        continue;
      std::vector<char> top(n, 0);
      bool any_top = false;
      for (const auto &c : cyclic_components(g, scope)) {
        bool has_local = std::any_of(c.begin(), c.end(),
                                     [&](int v) { return local[v] != 0; });
        if (!has_local)
          continue;
        any_top = true;
        for (int v : c)
          top[v] = 1;
      }
      if (!any_top)
        continue;
      switch (shape.eval[sys]) {
      case EvalKind::KK:
        out.push_back(t.u);
        break;
      case EvalKind::WF:
      case EvalKind::CWF:
        sign_tail(scope, local, shape.eval[sys] == EvalKind::CWF);
        break;
      case EvalKind::SP:
      case EvalKind::ST:
        phased(shape.eval[sys], mask, scope, local, top);
        break;
      case EvalKind::MERGE:
        throw ContractError("nested merge evaluation");
      }
    }
  }

  // SP and ST at a node below the root depend on where the projection
  // starts, so walks are tracked together with a small phase.
  void phased(EvalKind kind, const std::vector<char> &mask,
              const std::vector<char> &scope, const std::vector<char> &local,
              const std::vector<char> &top) {
    const int n = static_cast<int>(g.label.size());
    std::vector<std::vector<int>> rev(n);
    for (int v = 0; v < n; ++v)
      if (mask[v])
        for (int w : g.kids[v])
          if (mask[w])
            rev[w].push_back(v);
    std::vector<char> can_reach = top;
    std::vector<int> todo;
    for (int v = 0; v < n; ++v)
      if (top[v])
        todo.push_back(v);
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int w : rev[v])
        if (!can_reach[w]) {
          can_reach[w] = 1;
          todo.push_back(w);
        }
    }
    // phase 0: no local fact yet; 1 and 2: first local fact seen (ST: plus
    // and minus), no value fixed yet.
    auto phase_of = [&](int v) { return sign(v) > 0 ? 1 : 2; };
    std::vector<char> seen(static_cast<std::size_t>(n) * 3, 0);
    std::vector<std::pair<int, int>> queue;
    auto push = [&](int v, int ph) {
      if (!seen[v * 3 + ph]) {
        seen[v * 3 + ph] = 1;
        queue.emplace_back(v, ph);
      }
    };
    int start = !local[g.root] ? 0 : (kind == EvalKind::SP ? 1 : phase_of(g.root));
    push(g.root, start);
    while (!queue.empty()) {
      auto [v, ph] = queue.back();
      queue.pop_back();
      if (!mask[v])
        continue;
      for (int w : g.kids[v]) {
        if (!mask[w])
          continue;
        if (!local[w]) {
          push(w, ph);
          continue;
        }
        if (kind == EvalKind::SP) {
          if (ph == 0)
            push(w, 1);
          else if (can_reach[w])
            out.push_back(g.label[w]);
          continue;
        }
        int wp = phase_of(w);
        if (ph == 0 || ph == wp)
          push(w, wp);
        else if (can_reach[w])
          out.push_back(g.label[w]);
      }
    }
    if (kind != EvalKind::ST)
      return;
    for (int ph : {1, 2}) {
      std::vector<char> h = scope;
      for (int v = 0; v < n; ++v)
        if (scope[v] && local[v] && phase_of(v) != ph)
          h[v] = 0;
      for (const auto &c : cyclic_components(g, h)) {
        bool has_local = false, visited = false;
        for (int v : c) {
          has_local = has_local || local[v];
          visited = visited || seen[v * 3 + ph];
        }
        if (has_local && visited) {
          out.push_back(ph == 1 ? t.f : t.t);
          break;
        }
      }
    }
  }
};

} // namespace

std::vector<int> branch_values(const Graph &g, const Table &t,
                               const std::vector<char> &defined, EvalKind kind,
                               const MergeShape *shape) {
  Evaluator ev(g, t, defined);
  if (!ev.internal(g.root))
    throw ContractError("justification root '" + t.facts[g.label[g.root]].str() +
                        "' is not a defined fact");
  ev.reach_from_root();
  if (kind == EvalKind::MERGE) {
    if (!shape)
      throw ContractError("merge evaluation without a locality context");
    ev.merge(*shape);
  } else {
    ev.plain(kind);
  }
  std::sort(ev.out.begin(), ev.out.end());
  ev.out.erase(std::unique(ev.out.begin(), ev.out.end()), ev.out.end());
  return std::move(ev.out);
}

namespace {

struct Enumerator {
  const Table &t;
  EvalKind kind;
  int root;
  bool relevant_only;
  std::size_t cap;
  const std::function<bool(const Choice &)> &visit;
  int root_sign;
  std::vector<int> order;
  std::vector<char> discovered;
  std::vector<int> rule;
  std::size_t count = 0;
  bool stopped = false;

  int child_state(int state, int fact) const {
    if (kind != EvalKind::ST)
      return fact * 2;
    int phase = state % 2;
    if (phase == 0 && t.sign[fact] != root_sign)
      phase = 1;
    return fact * 2 + phase;
  }

  bool relevant(int state) const {
    if (!relevant_only)
      return true;
    if (kind == EvalKind::SP)
      return state / 2 == root;
    if (kind == EvalKind::ST)
      return state % 2 == 0;
    return true;
  }

  void run(std::size_t idx) {
    if (stopped)
      return;
    if (idx == order.size()) {
      if (++count > cap)
        throw ResourceError("max_justifications", "justification enumeration",
                            cap);
      if (!visit(Choice{order, rule}))
        stopped = true;
      return;
    }
    const int state = order[idx];
    const int fact = state / 2;
    const auto &bodies = t.bodies[fact];
    if (bodies.empty())
      throw ContractError("defined fact '" + t.facts[fact].str() +
                          "' has no rule");
    const std::size_t options = relevant(state) ? bodies.size() : 1;
    for (std::size_t r = 0; r < options && !stopped; ++r) {
      rule[state] = static_cast<int>(r);
      const std::size_t mark = order.size();
      for (int z : bodies[r]) {
        if (!t.defined[z])
          continue;
        int cs = child_state(state, z);
        if (!discovered[cs]) {
          discovered[cs] = 1;
          order.push_back(cs);
        }
      }
      run(idx + 1);
      for (std::size_t i = mark; i < order.size(); ++i)
        discovered[order[i]] = 0;
      order.resize(mark);
    }
    rule[state] = -1;
  }
};

} // namespace

bool enumerate(const Table &t, EvalKind kind, int root, bool relevant_only,
               std::size_t cap, const std::function<bool(const Choice &)> &visit) {
  if (!t.defined[root])
    throw ContractError("'" + t.facts[root].str() + "' is not a defined fact");
  Enumerator e{t, kind, root, relevant_only, cap, visit, t.sign[root], {}, {}, {}};
  e.discovered.assign(t.facts.size() * 2, 0);
  e.rule.assign(t.facts.size() * 2, -1);
  e.order.push_back(root * 2);
  e.discovered[root * 2] = 1;
  e.run(0);
  return !e.stopped;
}

Graph graph_of(const Table &t, const Choice &c) {
  Graph g;
  std::vector<int> node_of_state(t.facts.size() * 2, -1);
  for (int s : c.order)
    node_of_state[s] = g.add(s / 2);
  std::vector<int> leaf(t.facts.size(), -1);
  for (int s : c.order) {
    int v = node_of_state[s];
    int fact = s / 2;
    const auto &body = t.bodies[fact][c.rule[s]];
    for (int z : body) {
      int w;
      if (t.defined[z]) {
        int phase = s % 2;
        int cs = z * 2 + phase;
        if (node_of_state[cs] < 0)
          cs = z * 2 + 1; // a switch to the other sign under ST
        w = node_of_state[cs];
      } else {
        if (leaf[z] < 0)
          leaf[z] = g.add(z);
        w = leaf[z];
      }
      g.kids[v].push_back(w);
    }
  }
  g.root = 0;
  return g;
}

} // namespace njust::detail
