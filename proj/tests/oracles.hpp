// SPDX-License-Identifier: Apache-2.0
#pragma once

// Slow reference computations used to cross-check the engine. They work from
// the definitions (explicit branches, explicit plays) rather than from the
// graph algorithms in the library.

#include "njust/justify.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using namespace njust;

inline bool defined_node(const JustificationSystem &sys, const Justification &j,
                         int v) {
  return sys.frame.is_defined(j.nodes[v].label);
}

// Values of every branch of `j` under an evaluation that only looks at the
// tail: strongly connected node sets reachable from the root are turned into
// explicit lassos, leaves into explicit finite branches.
inline std::set<Fact> tail_values(const JustificationSystem &sys,
                                  const Justification &j) {
  const int n = static_cast<int>(j.nodes.size());
  std::vector<int> parent(n, -2);
  std::deque<int> todo{j.root};
  parent[j.root] = -1;
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    if (!defined_node(sys, j, v))
      continue;
    for (int w : j.nodes[v].children)
      if (parent[w] == -2) {
        parent[w] = v;
        todo.push_back(w);
      }
  }
  auto path_to = [&](int v) {
    std::vector<Fact> out;
    for (int w = v; w >= 0; w = parent[w])
      out.push_back(j.nodes[w].label);
    std::reverse(out.begin(), out.end());
    return out;
  };
  std::set<Fact> out;
  std::vector<int> internal;
  for (int v = 0; v < n; ++v) {
    if (parent[v] == -2)
      continue;
    if (defined_node(sys, j, v))
      internal.push_back(v);
    else
      out.insert(evaluate_branch(sys.evaluation, Branch::finite(path_to(v))));
  }
  if (internal.size() > 16)
    throw std::runtime_error("oracle graph too large");
  const std::size_t k = internal.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<char> in(n, 0);
    std::vector<int> members;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        in[internal[i]] = 1;
        members.push_back(internal[i]);
      }
    // shortest nonempty path inside the set
    auto inner_path = [&](int from, int to) -> std::vector<int> {
      std::vector<int> prev(n, -2);
      std::deque<int> q{from};
      bool found = false;
      while (!q.empty() && !found) {
        int v = q.front();
        q.pop_front();
        for (int w : j.nodes[v].children) {
          if (!in[w] || prev[w] != -2)
            continue;
          prev[w] = v;
          if (w == to) {
            found = true;
            break;
          }
          q.push_back(w);
        }
      }
      if (!found)
        return {};
      std::vector<int> p{to};
      for (int x = prev[to]; x != from; x = prev[x])
        p.push_back(x);
      p.push_back(from);
      std::reverse(p.begin(), p.end());
      return p;
    };
    std::vector<int> walk{members[0]};
    bool ok = true;
    for (std::size_t i = 0; i < members.size() && ok; ++i) {
      int from = walk.back();
      int to = members[(i + 1) % members.size()];
      auto p = inner_path(from, to);
      if (p.empty()) {
        ok = false;
        break;
      }
      walk.insert(walk.end(), p.begin() + 1, p.end());
    }
    if (!ok)
      continue;
    walk.pop_back(); // closes on members[0]
    std::vector<Fact> cycle;
    for (int v : walk)
      cycle.push_back(j.nodes[v].label);
    std::vector<Fact> prefix = path_to(members[0]);
    prefix.pop_back();
    out.insert(evaluate_branch(sys.evaluation, Branch::lasso(prefix, cycle)));
  }
  return out;
}

// Values of the branches that follow a walk until its first repeated node.
// Exact for evaluations whose value is fixed on such a walk (SP, ST).
inline std::set<Fact> walk_values(const JustificationSystem &sys,
                                  const Justification &j) {
  std::set<Fact> out;
  std::vector<int> path{j.root};
  auto labels = [&](std::size_t from, std::size_t to) {
    std::vector<Fact> v;
    for (std::size_t i = from; i < to; ++i)
      v.push_back(j.nodes[path[i]].label);
    return v;
  };
  auto rec = [&](auto &&self) -> void {
    int v = path.back();
    if (!defined_node(sys, j, v)) {
      out.insert(evaluate_branch(sys.evaluation,
                                 Branch::finite(labels(0, path.size()))));
      return;
    }
    for (int w : j.nodes[v].children) {
      auto it = std::find(path.begin(), path.end(), w);
      if (it != path.end()) {
        auto k = static_cast<std::size_t>(it - path.begin());
        out.insert(evaluate_branch(
            sys.evaluation, Branch::lasso(labels(0, k), labels(k, path.size()))));
        continue;
      }
      path.push_back(w);
      self(self);
      path.pop_back();
    }
  };
  rec(rec);
  return out;
}

// Supported value by playing out tree-like justifications: the chooser of
// rules maximises, the chooser of body elements minimises, and a play stops
// at its first repeated fact, which closes the cycle of a lasso.
inline Truth game_value(const JustificationSystem &sys, const Fact &x,
                        const Interpretation &interp) {
  const std::size_t bound = 2 * sys.frame.defined().size() + 2;
  std::vector<Fact> path{x};
  auto rec = [&](auto &&self) -> Truth {
    const Fact y = path.back();
    Truth best = Truth::False;
    for (const auto &body : sys.frame.cases(y)) {
      Truth worst = Truth::True;
      for (const auto &z : body) {
        Truth v;
        path.push_back(z);
        if (!sys.frame.is_defined(z)) {
          v = interp(evaluate_branch(sys.evaluation, Branch::finite(path)));
        } else {
          auto it = std::find(path.begin(), path.end() - 1, z);
          if (it != path.end() - 1) {
            std::vector<Fact> prefix(path.begin(), it);
            std::vector<Fact> cycle(it, path.end() - 1);
            v = interp(evaluate_branch(sys.evaluation,
                                       Branch::lasso(prefix, cycle)));
          } else {
            if (path.size() > bound)
              throw std::runtime_error("play exceeds the depth bound");
            v = self(self);
          }
        }
        path.pop_back();
        worst = std::min(worst, v);
        if (worst == Truth::False)
          break;
      }
      best = std::max(best, worst);
      if (best == Truth::True)
        break;
    }
    return best;
  };
  return rec(rec);
}

} // namespace oracle

#include "njust/fixpoint.hpp"

#include <map>
#include <optional>
#include <string>

namespace oracle {

// Nested fixpoint by enumerating every assignment of the local symbols and
// keeping the least (or greatest) one that reproduces itself; children are
// solved the same way under each candidate.
inline std::map<std::string, bool>
brute_fixpoint(const njust::FixpointDefinition &d,
               const std::map<std::string, bool> &opens) {
  using njust::Formula;
  auto eval = [](auto &&self, const Formula &f,
                 const std::map<std::string, bool> &a) -> bool {
    switch (f.kind) {
    case Formula::Kind::Atom:
      return a.at(f.atom);
    case Formula::Kind::Not:
      return !self(self, f.args[0], a);
    case Formula::Kind::And:
      for (const auto &g : f.args)
        if (!self(self, g, a))
          return false;
      return true;
    case Formula::Kind::Or:
      for (const auto &g : f.args)
        if (self(self, g, a))
          return true;
      return false;
    }
    return false;
  };
  std::vector<std::string> local;
  for (const auto &[p, f] : d.rules)
    local.push_back(p);
  const std::size_t n = local.size();
  std::optional<std::map<std::string, bool>> chosen;
  std::size_t chosen_count = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    auto a = opens;
    for (std::size_t i = 0; i < n; ++i)
      a[local[i]] = (mask >> i & 1U) != 0;
    std::map<std::string, bool> result;
    auto inner = a;
    for (const auto &c : d.children)
      for (const auto &[p, v] : brute_fixpoint(c, a)) {
        inner[p] = v;
        result[p] = v;
      }
    bool fixed = true;
    for (const auto &[p, f] : d.rules) {
      bool v = eval(eval, f, inner);
      result[p] = v;
      fixed = fixed && v == a[p];
    }
    if (!fixed)
      continue;
    std::size_t count = static_cast<std::size_t>(__builtin_popcountll(mask));
    bool better = !chosen || (d.polarity == njust::Polarity::Least
                                  ? count < chosen_count
                                  : count > chosen_count);
    if (better) {
      chosen = result;
      chosen_count = count;
    }
  }
  return chosen.value();
}

} // namespace oracle
