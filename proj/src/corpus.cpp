// SPDX-License-Identifier: Apache-2.0
#include "njust/corpus.hpp"

#include <algorithm>

namespace njust {

namespace {

std::size_t pick(std::mt19937_64 &rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

struct Skeleton {
  std::vector<int> parent;
  std::vector<std::size_t> level;
  std::vector<std::vector<std::string>> atoms;

  int add(int p) {
    parent.push_back(p);
    level.push_back(p < 0 ? 0 : level[static_cast<std::size_t>(p)] + 1);
    atoms.emplace_back();
    return static_cast<int>(parent.size()) - 1;
  }

  // Opens, the locals of every ancestor and everything below the node.
  std::vector<std::string> visible(int node,
                                   const std::vector<std::string> &opens) const {
    std::vector<std::string> out = opens;
    for (int a = parent[static_cast<std::size_t>(node)]; a >= 0;
         a = parent[static_cast<std::size_t>(a)])
      for (const auto &x : atoms[static_cast<std::size_t>(a)])
        out.push_back(x);
    for (std::size_t n = 0; n < parent.size(); ++n) {
      int m = static_cast<int>(n);
      while (m >= 0 && m != node)
        m = parent[static_cast<std::size_t>(m)];
      if (m == node)
        for (const auto &x : atoms[n])
          out.push_back(x);
    }
    return out;
  }
};

Skeleton random_skeleton(std::mt19937_64 &rng,
                         const std::vector<std::string> &defined,
                         std::size_t max_depth) {
  Skeleton s;
  s.add(-1);
  s.atoms[0].push_back(defined.front());
  for (std::size_t i = 1; i < defined.size(); ++i) {
    std::size_t choice = pick(rng, 0, 3);
    int node = 0;
    if (choice == 0) {
      node = static_cast<int>(pick(rng, 0, s.parent.size() - 1));
    } else {
      std::vector<int> hosts;
      for (std::size_t n = 0; n < s.parent.size(); ++n)
        if (s.level[n] + 1 < max_depth)
          hosts.push_back(static_cast<int>(n));
      if (hosts.empty())
        node = static_cast<int>(pick(rng, 0, s.parent.size() - 1));
      else
        node = s.add(hosts[pick(rng, 0, hosts.size() - 1)]);
    }
    s.atoms[static_cast<std::size_t>(node)].push_back(defined[i]);
  }
  return s;
}

NestedSystem build(const Skeleton &s, int node,
                   const std::vector<std::vector<Rule>> &rules,
                   const std::vector<EvalKind> &evals) {
  std::vector<NestedSystem> children;
  for (std::size_t n = 0; n < s.parent.size(); ++n)
    if (s.parent[n] == node)
      children.push_back(build(s, static_cast<int>(n), rules, evals));
  auto i = static_cast<std::size_t>(node);
  return NestedSystem::make(evals[i], complementation(rules[i]),
                            std::move(children));
}

template <class T> const T &choose(std::mt19937_64 &rng, const std::vector<T> &v) {
  return v[pick(rng, 0, v.size() - 1)];
}

Formula random_formula(std::mt19937_64 &rng,
                       const std::vector<std::string> &visible,
                       const std::set<std::string> &opens, int budget) {
  if (budget <= 1 || pick(rng, 0, 2) == 0) {
    const auto &x = choose(rng, visible);
    Formula f = Formula::var(x);
    if (opens.count(x) && pick(rng, 0, 2) == 0)
      return Formula::negation(std::move(f));
    return f;
  }
  std::vector<Formula> parts;
  for (int i = 0; i < 2; ++i)
    parts.push_back(random_formula(rng, visible, opens, budget / 2));
  return pick(rng, 0, 1) == 0 ? Formula::conjunction(std::move(parts))
                              : Formula::disjunction(std::move(parts));
}

FixpointDefinition build_definition(std::mt19937_64 &rng, const Skeleton &s,
                                    int node,
                                    const std::vector<std::string> &opens) {
  FixpointDefinition d;
  d.polarity = pick(rng, 0, 1) == 0 ? Polarity::Least : Polarity::Greatest;
  auto visible = s.visible(node, opens);
  std::set<std::string> open_set(opens.begin(), opens.end());
  for (const auto &x : s.atoms[static_cast<std::size_t>(node)])
    d.rules.emplace_back(x, random_formula(rng, visible, open_set, 4));
  for (std::size_t n = 0; n < s.parent.size(); ++n)
    if (s.parent[n] == node)
      d.children.push_back(
          build_definition(rng, s, static_cast<int>(n), opens));
  return d;
}

} // namespace

NestedSystem random_nested(std::mt19937_64 &rng, const CorpusShape &shape) {
  std::size_t opens_n = pick(rng, shape.min_opens, shape.max_opens);
  std::size_t total =
      pick(rng, std::min(shape.max_atoms, opens_n + 2), std::max(opens_n + 1, shape.max_atoms));
  std::vector<std::string> opens;
  std::vector<std::string> defined;
  for (std::size_t i = 0; i < opens_n; ++i)
    opens.push_back("o" + std::to_string(i));
  for (std::size_t i = 0; i + opens_n < total; ++i)
    defined.push_back("a" + std::to_string(i));
  Skeleton s = random_skeleton(rng, defined, shape.max_depth);
  std::vector<std::vector<Rule>> rules(s.parent.size());
  std::vector<EvalKind> evals(s.parent.size());
  for (std::size_t n = 0; n < s.parent.size(); ++n) {
    evals[n] = choose(rng, n == 0 ? shape.root_evaluations
                                  : shape.child_evaluations);
    auto visible = s.visible(static_cast<int>(n), opens);
    for (const auto &x : s.atoms[n]) {
      std::size_t k = pick(rng, 1, shape.max_rules);
      for (std::size_t r = 0; r < k; ++r) {
        std::vector<Fact> body;
        std::size_t len = pick(rng, 1, shape.max_body);
        for (std::size_t b = 0; b < len; ++b)
          body.push_back(Fact::atom(choose(rng, visible), pick(rng, 0, 1) == 1));
        rules[n].emplace_back(Fact::atom(x), std::move(body));
      }
    }
  }
  return build(s, 0, rules, evals);
}

FixpointDefinition random_definition(std::mt19937_64 &rng,
                                     std::size_t max_atoms,
                                     std::size_t max_depth) {
  std::size_t opens_n = pick(rng, 1, 2);
  std::size_t total =
      pick(rng, std::min(max_atoms, opens_n + 2), std::max(opens_n + 1, max_atoms));
  std::vector<std::string> opens;
  std::vector<std::string> defined;
  for (std::size_t i = 0; i < opens_n; ++i)
    opens.push_back("o" + std::to_string(i));
  for (std::size_t i = 0; i + opens_n < total; ++i)
    defined.push_back("d" + std::to_string(i));
  Skeleton s = random_skeleton(rng, defined, max_depth);
  return build_definition(rng, s, 0, opens);
}

Interpretation random_interpretation(std::mt19937_64 &rng,
                                     const FactSpace &space, bool two_valued) {
  Interpretation i;
  for (const auto &a : space.atoms()) {
    auto v = two_valued ? (rng() % 2 == 0 ? Truth::False : Truth::True)
                        : static_cast<Truth>(rng() % 3);
    i.set(a, v);
  }
  return i;
}

} // namespace njust
