// SPDX-License-Identifier: Apache-2.0
#include "njust/fixpoint.hpp"

#include <algorithm>

namespace njust {

Formula Formula::var(std::string name) {
  Formula f;
  f.kind = Kind::Atom;
  f.atom = std::move(name);
  return f;
}

Formula Formula::negation(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.args.push_back(std::move(g));
  return f;
}

Formula Formula::conjunction(std::vector<Formula> fs) {
  if (fs.size() == 1)
    return std::move(fs.front());
  Formula f;
  f.kind = Kind::And;
  f.args = std::move(fs);
  return f;
}

Formula Formula::disjunction(std::vector<Formula> fs) {
  if (fs.size() == 1)
    return std::move(fs.front());
  Formula f;
  f.kind = Kind::Or;
  f.args = std::move(fs);
  return f;
}

std::string Formula::str() const {
  switch (kind) {
  case Kind::Atom:
    return atom;
  case Kind::Not: {
    const auto &a = args.front();
    return a.kind == Kind::Atom || a.kind == Kind::Not ? "!" + a.str()
                                                       : "!(" + a.str() + ")";
  }
  case Kind::And:
  case Kind::Or: {
    std::string s;
    for (const auto &a : args) {
      if (!s.empty())
        s += kind == Kind::And ? " & " : " | ";
      bool paren = a.kind == Kind::And || a.kind == Kind::Or;
      s += paren ? "(" + a.str() + ")" : a.str();
    }
    return s;
  }
  }
  return {};
}

void Formula::atoms(std::set<std::string> &out) const {
  if (kind == Kind::Atom)
    out.insert(atom);
  for (const auto &a : args)
    a.atoms(out);
}

std::set<std::string> FixpointDefinition::local_defined() const {
  std::set<std::string> out;
  for (const auto &[p, f] : rules)
    out.insert(p);
  return out;
}

std::set<std::string> FixpointDefinition::defined() const {
  auto out = local_defined();
  for (const auto &c : children) {
    auto d = c.defined();
    out.insert(d.begin(), d.end());
  }
  return out;
}

std::set<std::string> FixpointDefinition::opens() const {
  std::set<std::string> all;
  auto collect = [&](auto &&self, const FixpointDefinition &d) -> void {
    for (const auto &[p, f] : d.rules)
      f.atoms(all);
    for (const auto &c : d.children)
      self(self, c);
  };
  collect(collect, *this);
  for (const auto &p : defined())
    all.erase(p);
  return all;
}

std::string FixpointDefinition::display(const std::string &symbol) const {
  auto it = aliases.find(symbol);
  return it == aliases.end() ? symbol : it->second;
}

namespace {

void negated_atoms(const Formula &f, bool under_not, std::set<std::string> &out) {
  if (f.kind == Formula::Kind::Atom) {
    if (under_not)
      out.insert(f.atom);
    return;
  }
  for (const auto &a : f.args)
    negated_atoms(a, under_not != (f.kind == Formula::Kind::Not), out);
}

void validate_rec(const FixpointDefinition &d, const std::string &path,
                  const std::set<std::string> &all_defined,
                  std::vector<Violation> &out) {
  std::set<std::string> seen;
  for (const auto &[p, f] : d.rules) {
    if (!seen.insert(p).second)
      out.push_back({path + ": " + p, "symbol has more than one rule", 1});
    std::set<std::string> neg;
    negated_atoms(f, false, neg);
    for (const auto &a : neg)
      if (all_defined.count(a))
        out.push_back({path + ": " + p,
                       "defined symbol '" + a + "' occurs negatively", 3});
  }
  std::vector<std::set<std::string>> child_defined;
  for (const auto &c : d.children)
    child_defined.push_back(c.defined());
  std::set<std::string> below;
  for (const auto &cd : child_defined)
    below.insert(cd.begin(), cd.end());
  for (const auto &p : d.local_defined())
    if (below.count(p))
      out.push_back({path + ": " + p, "symbol is defined twice", 1});
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    for (std::size_t j = i + 1; j < d.children.size(); ++j)
      for (const auto &p : child_defined[i])
        if (child_defined[j].count(p))
          out.push_back({path + ": " + p, "symbol is defined twice", 1});
    for (const auto &o : d.children[i].opens())
      if (below.count(o) && !child_defined[i].count(o))
        out.push_back({path + "/" + std::to_string(i) + ": " + o,
                       "reads a symbol defined by a sibling", 5});
  }
  for (std::size_t i = 0; i < d.children.size(); ++i)
    validate_rec(d.children[i], path + "/" + std::to_string(i), all_defined,
                 out);
}

bool eval(const Formula &f, const Assignment &a) {
  switch (f.kind) {
  case Formula::Kind::Atom: {
    auto it = a.find(f.atom);
    if (it == a.end())
      throw ContractError("no value for symbol '" + f.atom + "'");
    return it->second;
  }
  case Formula::Kind::Not:
    return !eval(f.args.front(), a);
  case Formula::Kind::And:
    return std::all_of(f.args.begin(), f.args.end(),
                       [&](const Formula &g) { return eval(g, a); });
  case Formula::Kind::Or:
    return std::any_of(f.args.begin(), f.args.end(),
                       [&](const Formula &g) { return eval(g, a); });
  }
  return false;
}

std::vector<std::vector<Fact>> dnf(const Formula &f, bool negated,
                                   const std::set<std::string> &defined) {
  using Kind = Formula::Kind;
  switch (f.kind) {
  case Kind::Atom:
    if (negated && defined.count(f.atom))
      throw ContractError("defined symbol '" + f.atom +
                          "' occurs under a negation");
    return {{Fact::atom(f.atom, negated)}};
  case Kind::Not:
    return dnf(f.args.front(), !negated, defined);
  case Kind::And:
  case Kind::Or:
    break;
  }
  const bool conj = (f.kind == Kind::And) != negated;
  std::vector<std::vector<Fact>> acc;
  if (!conj) {
    for (const auto &g : f.args)
      for (auto &b : dnf(g, negated, defined))
        acc.push_back(std::move(b));
    return acc;
  }
  acc.push_back({});
  for (const auto &g : f.args) {
    auto part = dnf(g, negated, defined);
    std::vector<std::vector<Fact>> next;
    for (const auto &a : acc)
      for (const auto &b : part) {
        auto c = a;
        c.insert(c.end(), b.begin(), b.end());
        next.push_back(std::move(c));
      }
    acc = std::move(next);
  }
  return acc;
}

} // namespace

std::vector<Violation> validate_definition(const FixpointDefinition &d) {
  std::vector<Violation> out;
  validate_rec(d, "root", d.defined(), out);
  return out;
}

Assignment gamma_step(const FixpointDefinition &d, const Assignment &opens,
                      const Assignment &current) {
  Assignment visible = opens;
  for (const auto &p : d.local_defined()) {
    auto it = current.find(p);
    if (it == current.end())
      throw ContractError("no current value for '" + p + "'");
    visible[p] = it->second;
  }
  Assignment out;
  Assignment inner = visible;
  for (const auto &c : d.children)
    for (const auto &[p, v] : solve_direct(c, visible)) {
      out[p] = v;
      inner[p] = v;
    }
  for (const auto &[p, f] : d.rules)
    out[p] = eval(f, inner);
  return out;
}

Assignment solve_direct(const FixpointDefinition &d, const Assignment &opens) {
  const bool start = d.polarity == Polarity::Greatest;
  Assignment current;
  for (const auto &p : d.defined())
    current[p] = start;
  const std::size_t rounds = current.size() + 2;
  for (std::size_t i = 0; i < rounds; ++i) {
    Assignment next = gamma_step(d, opens, current);
    if (next == current)
      return current;
    current = std::move(next);
  }
  throw ContractError("fixpoint iteration did not settle; is the definition "
                      "monotone?");
}

std::vector<std::vector<Fact>>
decompose_formula(const Formula &f, const std::set<std::string> &defined) {
  auto bodies = dnf(f, false, defined);
  for (auto &b : bodies) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  std::sort(bodies.begin(), bodies.end());
  bodies.erase(std::unique(bodies.begin(), bodies.end()), bodies.end());
  return bodies;
}

namespace {

NestedSystem translate_rec(const FixpointDefinition &d,
                           const std::set<std::string> &all_defined) {
  std::vector<Rule> positive;
  for (const auto &[p, f] : d.rules)
    for (auto &body : decompose_formula(f, all_defined))
      positive.emplace_back(Fact::atom(p), std::move(body));
  std::vector<NestedSystem> children;
  for (const auto &c : d.children)
    children.push_back(translate_rec(c, all_defined));
  EvalKind k = d.polarity == Polarity::Least ? EvalKind::WF : EvalKind::CWF;
  return NestedSystem::make(k, complementation(positive), std::move(children));
}

} // namespace

NestedSystem translate_to_nested(const FixpointDefinition &d) {
  auto violations = validate_definition(d);
  if (!violations.empty()) {
    std::string msg = "invalid fixpoint definition:";
    for (const auto &v : violations)
      msg += "\n  " + v.str();
    throw ValidationError(msg);
  }
  return translate_rec(d, d.defined());
}

} // namespace njust
