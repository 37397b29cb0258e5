// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/error.hpp"
#include "njust/facts.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace njust {

// head <- body. The body is kept sorted and free of duplicates.
struct Rule {
  Fact head;
  std::vector<Fact> body;

  Rule() = default;
  // ContractError on an empty body or a logical head.
  Rule(Fact head, std::vector<Fact> body);
  static Rule parse(std::string_view text);

  [[nodiscard]] std::string str() const;

  friend bool operator==(const Rule &, const Rule &) = default;
  friend auto operator<=>(const Rule &, const Rule &) = default;
};

// Rules sorted by head, then body, with duplicates removed.
[[nodiscard]] std::vector<Rule> normalize_rules(std::vector<Rule> rules);

class Frame {
public:
  Frame() = default;
  // No validation here; see validate_frame.
  Frame(FactSpace space, std::set<Fact> defined, std::vector<Rule> rules);
  // Defined facts are the heads and their complements; the space holds every
  // atom mentioned plus those of `extra`.
  static Frame from_rules(std::vector<Rule> rules, const FactSpace &extra = {});

  [[nodiscard]] const FactSpace &space() const { return space_; }
  [[nodiscard]] const std::set<Fact> &defined() const { return defined_; }
  [[nodiscard]] const std::vector<Rule> &rules() const { return rules_; }
  [[nodiscard]] bool is_defined(const Fact &x) const {
    return defined_.count(x) > 0;
  }
  [[nodiscard]] bool is_open(const Fact &x) const {
    return space_.contains(x) && !is_defined(x);
  }
  [[nodiscard]] std::set<Fact> opens() const;
  // Indices into rules() of the rules with head `x`.
  [[nodiscard]] std::vector<std::size_t> rules_for(const Fact &x) const;
  // Bodies of the rules for `x`; ContractError when `x` is not defined.
  [[nodiscard]] std::vector<std::vector<Fact>> cases(const Fact &x) const;

  friend bool operator==(const Frame &, const Frame &) = default;

private:
  FactSpace space_;
  std::set<Fact> defined_;
  std::vector<Rule> rules_;
  std::map<Fact, std::pair<std::size_t, std::size_t>> by_head_;
};

struct Violation {
  std::string subject;
  std::string message;
  int clause = 0; // nested-system clause number, 0 for frame-level problems

  [[nodiscard]] std::string str() const;
};

[[nodiscard]] std::vector<Violation> validate_frame(const Frame &frame);

// Input rules together with, for every head x and every way of picking one
// element from each body of x, the rule ~x <- complements of the picks.
// All heads must share one sign. ResourceError above `max_bodies` new bodies.
[[nodiscard]] std::vector<Rule>
complementation(const std::vector<Rule> &rules,
                std::size_t max_bodies = Limits{}.max_bodies);

// Every defined fact's rules are exactly the complementation of its
// complement's rules.
[[nodiscard]] bool is_complementary(const Frame &frame);

} // namespace njust
