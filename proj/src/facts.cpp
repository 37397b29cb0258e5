// SPDX-License-Identifier: Apache-2.0
#include "njust/facts.hpp"

#include "njust/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace njust {

Truth negate(Truth v) {
  switch (v) {
  case Truth::False:
    return Truth::True;
  case Truth::True:
    return Truth::False;
  default:
    return Truth::Unknown;
  }
}

char truth_char(Truth v) {
  switch (v) {
  case Truth::False:
    return 'f';
  case Truth::True:
    return 't';
  default:
    return 'u';
  }
}

Truth parse_truth(std::string_view text) {
  if (text == "t")
    return Truth::True;
  if (text == "f")
    return Truth::False;
  if (text == "u")
    return Truth::Unknown;
  throw ContractError("not a truth value: '" + std::string(text) + "'");
}

Truth truth_min(std::span<const Truth> values) {
  if (values.empty())
    throw ContractError("minimum of an empty set of truth values");
  return *std::min_element(values.begin(), values.end());
}

Truth truth_max(std::span<const Truth> values) {
  if (values.empty())
    throw ContractError("maximum of an empty set of truth values");
  return *std::max_element(values.begin(), values.end());
}

bool is_identifier(std::string_view name) {
  if (name.empty())
    return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_')
    return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '\'';
  });
}

bool is_reserved(std::string_view name) {
  return name == "t" || name == "f" || name == "u";
}

Fact Fact::atom(std::string name, bool negated) {
  if (is_reserved(name))
    throw ContractError("'" + name + "' is reserved for a logical fact");
  if (!is_identifier(name))
    throw ContractError("invalid atom name '" + name + "'");
  Fact x;
  x.is_atom_ = true;
  x.negated_ = negated;
  x.name_ = std::move(name);
  return x;
}

Fact Fact::logical(Truth v) {
  Fact x;
  x.value_ = v;
  return x;
}

Fact Fact::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  bool negated = false;
  if (!text.empty() && text.front() == '~') {
    negated = true;
    text.remove_prefix(1);
  }
  if (is_reserved(text)) {
    Fact x = logical(parse_truth(text));
    return negated ? x.complement() : x;
  }
  return atom(std::string(text), negated);
}

Truth Fact::logical_value() const {
  if (is_atom_)
    throw ContractError("fact '" + str() + "' is not logical");
  return value_;
}

Fact Fact::complement() const {
  if (!is_atom_)
    return logical(negate(value_));
  Fact x = *this;
  x.negated_ = !negated_;
  return x;
}

Fact Fact::unsigned_atom() const {
  if (!is_atom_)
    throw ContractError("fact '" + str() + "' is not an atom");
  Fact x = *this;
  x.negated_ = false;
  return x;
}

std::string Fact::str() const {
  if (!is_atom_)
    return std::string(1, truth_char(value_));
  return negated_ ? "~" + name_ : name_;
}

std::strong_ordering operator<=>(const Fact &a, const Fact &b) {
  if (a.is_atom_ != b.is_atom_)
    return a.is_atom_ ? std::strong_ordering::greater
                      : std::strong_ordering::less;
  if (!a.is_atom_) {
    // t, f, u
    auto rank = [](Truth v) {
      return v == Truth::True ? 0 : v == Truth::False ? 1 : 2;
    };
    return rank(a.value_) <=> rank(b.value_);
  }
  if (auto c = a.name_ <=> b.name_; c != 0)
    return c;
  return a.negated_ <=> b.negated_;
}

Sign default_sign(const Fact &x) {
  if (x.is_logical())
    throw ContractError("logical fact '" + x.str() + "' has no sign");
  return x.negated() ? Sign::Minus : Sign::Plus;
}

FactSpace::FactSpace(std::set<std::string> atoms) : atoms_(std::move(atoms)) {
  for (const auto &a : atoms_)
    (void)Fact::atom(a);
}

void FactSpace::add(const std::string &atom) {
  (void)Fact::atom(atom);
  atoms_.insert(atom);
}

void FactSpace::add(const Fact &x) {
  if (x.is_atom())
    atoms_.insert(x.name());
}

void FactSpace::merge(const FactSpace &other) {
  atoms_.insert(other.atoms_.begin(), other.atoms_.end());
}

bool FactSpace::contains(const Fact &x) const {
  return x.is_logical() || atoms_.count(x.name()) > 0;
}

std::vector<Fact> FactSpace::facts() const {
  std::vector<Fact> out{Fact::logical(Truth::True), Fact::logical(Truth::False),
                        Fact::logical(Truth::Unknown)};
  for (const auto &a : atoms_) {
    out.push_back(Fact::atom(a));
    out.push_back(Fact::atom(a, true));
  }
  return out;
}

Interpretation Interpretation::parse(std::string_view text) {
  Interpretation interp;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos)
      comma = text.size();
    std::string item(text.substr(pos, comma - pos));
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (!item.empty()) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw ContractError("interpretation item without '=': '" + item + "'");
      Fact x = Fact::parse(item.substr(0, eq));
      if (!x.is_atom())
        throw ContractError("cannot assign a value to logical fact '" +
                            x.str() + "'");
      Truth v = parse_truth(item.substr(eq + 1));
      interp.set(x.name(), x.negated() ? negate(v) : v);
    }
    pos = comma + 1;
  }
  return interp;
}

Interpretation Interpretation::from_facts(const std::map<Fact, Truth> &values) {
  Interpretation interp;
  for (const auto &[x, v] : values) {
    if (x.is_logical()) {
      if (x.logical_value() != v)
        throw ContractError("logical fact '" + x.str() +
                            "' must keep its own value");
      continue;
    }
    Truth unsigned_value = x.negated() ? negate(v) : v;
    auto it = interp.values_.find(x.name());
    if (it != interp.values_.end() && it->second != unsigned_value)
      throw ContractError("values of '" + x.name() + "' and '~" + x.name() +
                          "' are not complementary");
    interp.values_[x.name()] = unsigned_value;
  }
  return interp;
}

Interpretation Interpretation::constant(const FactSpace &space, Truth v) {
  Interpretation interp;
  for (const auto &a : space.atoms())
    interp.set(a, v);
  return interp;
}

void Interpretation::set(const std::string &atom, Truth v) {
  values_[atom] = v;
}

bool Interpretation::has(const std::string &atom) const {
  return values_.count(atom) > 0;
}

Truth Interpretation::operator()(const Fact &x) const {
  if (x.is_logical())
    return x.logical_value();
  auto it = values_.find(x.name());
  if (it == values_.end())
    throw ContractError("interpretation has no value for '" + x.name() + "'");
  return x.negated() ? negate(it->second) : it->second;
}

bool Interpretation::is_two_valued() const {
  return std::none_of(values_.begin(), values_.end(), [](const auto &kv) {
    return kv.second == Truth::Unknown;
  });
}

std::string Interpretation::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto &[a, v] : values_) {
    if (!first)
      out << ',';
    first = false;
    out << a << '=' << truth_char(v);
  }
  return out.str();
}

} // namespace njust
