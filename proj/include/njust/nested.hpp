// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/justify.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace njust {

// A tree of justification frames. Each node owns the rules whose heads are
// its local facts; the children own disjoint parts of the defined facts.
struct NestedSystem {
  EvalKind evaluation = EvalKind::WF;
  std::vector<Rule> rules;
  std::set<Fact> local;
  std::vector<NestedSystem> children;

  // Local facts are the heads and their complements.
  static NestedSystem make(EvalKind evaluation, std::vector<Rule> rules,
                           std::vector<NestedSystem> children = {});

  [[nodiscard]] std::set<Fact> defined() const; // local plus descendants
  [[nodiscard]] FactSpace space() const;        // atoms of the whole subtree
  [[nodiscard]] std::set<Fact> opens() const;   // space facts not defined
  [[nodiscard]] Frame local_frame() const;
  [[nodiscard]] std::size_t node_count() const;

  friend bool operator==(const NestedSystem &, const NestedSystem &) = default;
};

struct CompressibilityReport {
  bool compressible = true;
  std::vector<std::string> offending; // "node path: evaluation"
};

struct NestedReport {
  std::vector<Violation> violations;
  CompressibilityReport compressibility;
  [[nodiscard]] bool valid() const { return violations.empty(); }
};

// Checks the local frames, the partition of the defined facts and that every
// child only sees facts that are open or local at its parent. Node paths are
// "root", "root/0", "root/0/1", ...
[[nodiscard]] NestedReport validate_nested(const NestedSystem &ns);

// Throws ValidationError listing the violations.
void require_valid(const NestedSystem &ns);

[[nodiscard]] std::shared_ptr<const LocalityContext>
locality_context(const NestedSystem &ns);

// All rules of the tree with the merge evaluation over its nodes.
[[nodiscard]] JustificationSystem merge(const NestedSystem &ns);

struct Flattening {
  JustificationSystem system;
  // One witness justification (in the input system) per flattened rule.
  std::map<Rule, Justification> source;
};

// One rule x <- values(J) per justification J of x. Needs a parametric
// evaluation, which is kept.
[[nodiscard]] Flattening flatten(const JustificationSystem &sys,
                                 const Limits &limits = {});

// x <- (A minus X) plus f(y) for y in A and X, for every choice f of a lower
// rule body for each such y. Rules without facts of X are kept as they are.
[[nodiscard]] std::vector<Rule> unfold(const std::vector<Rule> &rules,
                                       const std::vector<Rule> &lower,
                                       const std::set<Fact> &X,
                                       const Limits &limits = {});

struct RuleOrigin {
  enum class Kind : std::uint8_t { Local, Flattened, Unfolded };
  Kind kind = Kind::Local;
  // Flattened: child index and the witness in that child's compression.
  std::size_t child = 0;
  std::optional<Justification> witness;
  // Unfolded: the original local rule and the lower rule used for each of
  // its facts that belong to a child.
  std::optional<Rule> source;
  std::map<Fact, Rule> substitution;
};

struct Compression {
  JustificationSystem system;
  std::set<Fact> local;
  std::map<Rule, RuleOrigin> origin;
  std::vector<Compression> children;
};

// Replaces every child by the flattening of its own compression and unfolds
// the local rules over it. Needs every non-root evaluation to be parametric.
[[nodiscard]] Compression compress(const NestedSystem &ns,
                                   const Limits &limits = {});

// Turns a justification of the merged system into one of the compressed
// system, bottom level first.
[[nodiscard]] Justification shrink(const NestedSystem &ns,
                                   const Justification &j);
// Inverse direction, using the recorded rule origins.
[[nodiscard]] Justification expand(const Compression &c, const Justification &j);

struct Counterexample {
  Fact fact;
  Interpretation interpretation;
  Truth compressed = Truth::Unknown;
  Truth merged = Truth::Unknown;
};

struct SamplingPolicy {
  bool exhaustive = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct EquivalenceReport {
  bool in_hypothesis = false;
  std::string reason; // why the system is outside the hypothesis
  std::size_t interpretations = 0;
  std::vector<Counterexample> counterexamples;
  [[nodiscard]] bool equivalent() const {
    return in_hypothesis && counterexamples.empty();
  }
};

// Compares supported values of the compressed and the merged system on every
// defined fact.
[[nodiscard]] EquivalenceReport check_equivalence(const NestedSystem &ns,
                                                  const SamplingPolicy &policy,
                                                  const Limits &limits = {});

} // namespace njust
