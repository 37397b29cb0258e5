// SPDX-License-Identifier: Apache-2.0
#include "njust/frames.hpp"

#include <algorithm>
#include <sstream>

namespace njust {

Rule::Rule(Fact h, std::vector<Fact> b) : head(std::move(h)), body(std::move(b)) {
  if (head.is_logical())
    throw ContractError("rule head '" + head.str() + "' is a logical fact");
  if (body.empty())
    throw ContractError("rule for '" + head.str() + "' has an empty body");
  std::sort(body.begin(), body.end());
  body.erase(std::unique(body.begin(), body.end()), body.end());
}

Rule Rule::parse(std::string_view text) {
  auto arrow = text.find("<-");
  if (arrow == std::string_view::npos)
    throw ContractError("rule without '<-': '" + std::string(text) + "'");
  Fact head = Fact::parse(text.substr(0, arrow));
  std::string_view rest = text.substr(arrow + 2);
  while (!rest.empty() && (rest.back() == '.' || rest.back() == ' '))
    rest.remove_suffix(1);
  std::vector<Fact> body;
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    if (comma == std::string_view::npos)
      comma = rest.size();
    body.push_back(Fact::parse(rest.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return Rule(std::move(head), std::move(body));
}

std::string Rule::str() const {
  std::ostringstream out;
  out << head.str() << " <- ";
  for (std::size_t i = 0; i < body.size(); ++i)
    out << (i ? ", " : "") << body[i].str();
  out << '.';
  return out.str();
}

std::vector<Rule> normalize_rules(std::vector<Rule> rules) {
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  return rules;
}

Frame::Frame(FactSpace space, std::set<Fact> defined, std::vector<Rule> rules)
    : space_(std::move(space)), defined_(std::move(defined)),
      rules_(normalize_rules(std::move(rules))) {
  for (std::size_t i = 0; i < rules_.size();) {
    std::size_t j = i;
    while (j < rules_.size() && rules_[j].head == rules_[i].head)
      ++j;
    by_head_[rules_[i].head] = {i, j};
    i = j;
  }
}

Frame Frame::from_rules(std::vector<Rule> rules, const FactSpace &extra) {
  FactSpace space = extra;
  std::set<Fact> defined;
  for (const auto &r : rules) {
    space.add(r.head);
    defined.insert(r.head);
    defined.insert(r.head.complement());
    for (const auto &b : r.body)
      space.add(b);
  }
  return Frame(std::move(space), std::move(defined), std::move(rules));
}

std::set<Fact> Frame::opens() const {
  std::set<Fact> out;
  for (const auto &x : space_.facts())
    if (!is_defined(x))
      out.insert(x);
  return out;
}

std::vector<std::size_t> Frame::rules_for(const Fact &x) const {
  std::vector<std::size_t> out;
  auto it = by_head_.find(x);
  if (it == by_head_.end())
    return out;
  for (std::size_t i = it->second.first; i < it->second.second; ++i)
    out.push_back(i);
  return out;
}

std::vector<std::vector<Fact>> Frame::cases(const Fact &x) const {
  if (!is_defined(x))
    throw ContractError("'" + x.str() + "' is not a defined fact");
  std::vector<std::vector<Fact>> out;
  for (auto i : rules_for(x))
    out.push_back(rules_[i].body);
  return out;
}

std::string Violation::str() const {
  std::string s = subject + ": " + message;
  if (clause)
    s += " (clause " + std::to_string(clause) + ")";
  return s;
}

std::vector<Violation> validate_frame(const Frame &frame) {
  std::vector<Violation> out;
  for (const auto &x : frame.defined()) {
    if (x.is_logical()) {
      out.push_back({x.str(), "logical facts cannot be defined"});
      continue;
    }
    if (!frame.space().contains(x))
      out.push_back({x.str(), "defined fact outside the fact space"});
    if (!frame.is_defined(x.complement()))
      out.push_back({x.str(), "defined facts are not closed under complement"});
    if (frame.rules_for(x).empty())
      out.push_back({x.str(), "defined fact has no rule"});
  }
  for (const auto &r : frame.rules()) {
    if (!frame.is_defined(r.head))
      out.push_back({r.str(), "rule head is not a defined fact"});
    for (const auto &b : r.body)
      if (!frame.space().contains(b))
        out.push_back({r.str(), "body fact '" + b.str() +
                                    "' is outside the fact space"});
  }
  return out;
}

std::vector<Rule> complementation(const std::vector<Rule> &rules,
                                  std::size_t max_bodies) {
  std::map<Fact, std::vector<const std::vector<Fact> *>> by_head;
  std::set<Sign> signs;
  for (const auto &r : rules) {
    by_head[r.head].push_back(&r.body);
    signs.insert(default_sign(r.head));
  }
  if (signs.size() > 1)
    throw ContractError("complementation needs rule heads of a single sign");

  std::vector<Rule> out = rules;
  std::size_t produced = 0;
  for (const auto &[head, bodies] : by_head) {
    std::set<std::vector<Fact>> seen;
    std::vector<std::size_t> pick(bodies.size(), 0);
    while (true) {
      std::vector<Fact> body;
      for (std::size_t i = 0; i < bodies.size(); ++i)
        body.push_back((*bodies[i])[pick[i]].complement());
      std::sort(body.begin(), body.end());
      body.erase(std::unique(body.begin(), body.end()), body.end());
      if (seen.insert(body).second) {
        if (++produced > max_bodies)
          throw ResourceError("max_bodies", "complementation", max_bodies);
        out.emplace_back(head.complement(), std::move(body));
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == bodies[i]->size())
        pick[i++] = 0;
      if (i == pick.size())
        break;
    }
  }
  return normalize_rules(std::move(out));
}

namespace {

// Whether the sets {picks of a selection function on `bodies`} are exactly
// `target`. Partial picks that fit in no target set end the search early,
// which keeps the frontier no larger than the subsets of the targets.
bool selections_are(const std::vector<const std::vector<Fact> *> &bodies,
                    const std::set<std::vector<Fact>> &target) {
  auto fits = [&](const std::vector<Fact> &partial) {
    return std::any_of(target.begin(), target.end(), [&](const auto &t) {
      return std::includes(t.begin(), t.end(), partial.begin(), partial.end());
    });
  };
  std::set<std::vector<Fact>> frontier{{}};
  for (const auto *body : bodies) {
    std::set<std::vector<Fact>> next;
    for (const auto &partial : frontier)
      for (const auto &y : *body) {
        auto grown = partial;
        auto at = std::lower_bound(grown.begin(), grown.end(), y);
        if (at == grown.end() || *at != y)
          grown.insert(at, y);
        if (!fits(grown))
          return false;
        next.insert(std::move(grown));
      }
    frontier = std::move(next);
  }
  return frontier == target;
}

bool complements(const Frame &frame, const Fact &x) {
  std::vector<const std::vector<Fact> *> bodies;
  for (auto i : frame.rules_for(x))
    bodies.push_back(&frame.rules()[i].body);
  std::set<std::vector<Fact>> target;
  for (auto i : frame.rules_for(x.complement())) {
    std::vector<Fact> b;
    for (const auto &y : frame.rules()[i].body)
      b.push_back(y.complement());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    target.insert(std::move(b));
  }
  return !bodies.empty() && selections_are(bodies, target);
}

} // namespace

bool is_complementary(const Frame &frame) {
  for (const auto &x : frame.defined()) {
    if (x.is_logical() || x.negated())
      continue;
    if (!complements(frame, x) && !complements(frame, x.complement()))
      return false;
  }
  return true;
}

} // namespace njust
