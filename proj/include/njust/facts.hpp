// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace njust {

// Three truth values ordered f < u < t.
enum class Truth : std::uint8_t { False = 0, Unknown = 1, True = 2 };

[[nodiscard]] Truth negate(Truth v);
[[nodiscard]] char truth_char(Truth v);
[[nodiscard]] Truth parse_truth(std::string_view text);
// Throws ContractError on an empty argument.
[[nodiscard]] Truth truth_min(std::span<const Truth> values);
[[nodiscard]] Truth truth_max(std::span<const Truth> values);

enum class Sign : std::uint8_t { Plus, Minus };

[[nodiscard]] bool is_identifier(std::string_view name);
[[nodiscard]] bool is_reserved(std::string_view name);

// A signed atom or one of the logical facts t, f, u.
class Fact {
public:
  Fact() = default;
  static Fact atom(std::string name, bool negated = false);
  static Fact logical(Truth v);
  static Fact parse(std::string_view text);

  [[nodiscard]] bool is_logical() const { return !is_atom_; }
  [[nodiscard]] bool is_atom() const { return is_atom_; }
  [[nodiscard]] Truth logical_value() const;
  [[nodiscard]] const std::string &name() const { return name_; }
  [[nodiscard]] bool negated() const { return negated_; }
  [[nodiscard]] Fact complement() const;
  [[nodiscard]] Fact unsigned_atom() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Fact &, const Fact &) = default;
  friend std::strong_ordering operator<=>(const Fact &a, const Fact &b);

private:
  bool is_atom_ = false;
  bool negated_ = false;
  Truth value_ = Truth::Unknown;
  std::string name_;
};

// Plus for unnegated atoms, Minus for negated ones. ContractError for logical
// facts.
[[nodiscard]] Sign default_sign(const Fact &x);

// A set of unnegated atom names; its facts are both literals of every atom
// together with t, f, u.
class FactSpace {
public:
  FactSpace() = default;
  explicit FactSpace(std::set<std::string> atoms);

  void add(const std::string &atom);
  void add(const Fact &x);
  void merge(const FactSpace &other);
  [[nodiscard]] bool contains(const Fact &x) const;
  [[nodiscard]] const std::set<std::string> &atoms() const { return atoms_; }
  [[nodiscard]] std::vector<Fact> facts() const;

  friend bool operator==(const FactSpace &, const FactSpace &) = default;

private:
  std::set<std::string> atoms_;
};

// Values of unnegated atoms; the value of ~p is the complement of p's value.
class Interpretation {
public:
  Interpretation() = default;

  // "p=t,q=f,r=u"; whitespace around items is ignored.
  static Interpretation parse(std::string_view text);
  // Throws ContractError if some fact and its complement are not mapped to
  // complementary values, or a logical fact is mapped to another value.
  static Interpretation from_facts(const std::map<Fact, Truth> &values);
  // All atoms of the space set to `v`.
  static Interpretation constant(const FactSpace &space, Truth v);

  void set(const std::string &atom, Truth v);
  [[nodiscard]] bool has(const std::string &atom) const;
  // ContractError if `x` is an atom without a value.
  [[nodiscard]] Truth operator()(const Fact &x) const;
  [[nodiscard]] const std::map<std::string, Truth> &values() const {
    return values_;
  }
  [[nodiscard]] bool is_two_valued() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Interpretation &,
                         const Interpretation &) = default;
  friend auto operator<=>(const Interpretation &,
                          const Interpretation &) = default;

private:
  std::map<std::string, Truth> values_;
};

// Calls `visit` for every interpretation of `atoms` in lexicographic order of
// f < u < t (or f < t when `two_valued`). Stops when `visit` returns false.
template <class Visit>
void for_each_interpretation(const std::vector<std::string> &atoms,
                             bool two_valued, Visit &&visit) {
  std::vector<int> digit(atoms.size(), 0);
  const int base = two_valued ? 2 : 3;
  auto value_of = [&](int d) {
    if (two_valued)
      return d == 0 ? Truth::False : Truth::True;
    return static_cast<Truth>(d);
  };
  while (true) {
    Interpretation interp;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      interp.set(atoms[i], value_of(digit[i]));
    if (!visit(interp))
      return;
    std::size_t i = atoms.size();
    while (i > 0) {
      --i;
      if (++digit[i] < base)
        break;
      digit[i] = 0;
      if (i == 0)
        return;
    }
    if (atoms.empty())
      return;
  }
}

} // namespace njust
