// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/nested.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace njust {

enum class Polarity : std::uint8_t { Least, Greatest };

struct Formula {
  enum class Kind : std::uint8_t { Atom, Not, And, Or };
  Kind kind = Kind::Atom;
  std::string atom;
  std::vector<Formula> args;

  static Formula var(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> fs);
  static Formula disjunction(std::vector<Formula> fs);

  [[nodiscard]] std::string str() const;
  void atoms(std::set<std::string> &out) const;

  friend bool operator==(const Formula &, const Formula &) = default;
};

// lfp { ... } or gfp { ... }: one rule per local symbol plus nested
// definitions.
struct FixpointDefinition {
  Polarity polarity = Polarity::Least;
  std::vector<std::pair<std::string, Formula>> rules;
  std::vector<FixpointDefinition> children;
  // Renamed symbol -> name used in the source, for names that clash with
  // t, f and u.
  std::map<std::string, std::string> aliases;

  [[nodiscard]] std::set<std::string> local_defined() const;
  [[nodiscard]] std::set<std::string> defined() const;
  [[nodiscard]] std::set<std::string> opens() const;
  [[nodiscard]] std::string display(const std::string &symbol) const;

  friend bool operator==(const FixpointDefinition &,
                         const FixpointDefinition &) = default;
};

// Duplicate definitions, negated defined symbols, children that read
// symbols defined by siblings.
[[nodiscard]] std::vector<Violation>
validate_definition(const FixpointDefinition &d);

using Assignment = std::map<std::string, bool>;

// One application of the operator: children are solved under the opens and
// the current local values, then every local rule is evaluated once.
[[nodiscard]] Assignment gamma_step(const FixpointDefinition &d,
                                    const Assignment &opens,
                                    const Assignment &current);

// Least (or greatest) fixpoint by iteration from all false (or all true).
[[nodiscard]] Assignment solve_direct(const FixpointDefinition &d,
                                      const Assignment &opens);

// Disjunctive normal form as rule bodies; negation may only apply to
// symbols outside `defined` and becomes the complement literal.
[[nodiscard]] std::vector<std::vector<Fact>>
decompose_formula(const Formula &f, const std::set<std::string> &defined);

// lfp nodes become wf nodes and gfp nodes cwf nodes; local rules come from
// the decomposition and are completed with their complements.
[[nodiscard]] NestedSystem translate_to_nested(const FixpointDefinition &d);

} // namespace njust
