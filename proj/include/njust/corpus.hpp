// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/fixpoint.hpp"
#include "njust/nested.hpp"

#include <cstdint>
#include <random>

namespace njust {

struct CorpusShape {
  std::size_t max_atoms = 5;
  std::size_t min_opens = 1;
  std::size_t max_opens = 2;
  std::size_t max_depth = 3; // levels, the root counts as one
  std::size_t max_rules = 2; // positive rules per atom
  std::size_t max_body = 2;
  std::vector<EvalKind> root_evaluations{EvalKind::KK, EvalKind::WF,
                                         EvalKind::CWF};
  std::vector<EvalKind> child_evaluations{EvalKind::KK, EvalKind::WF,
                                          EvalKind::CWF};
};

// Deterministic for a given engine state. Atoms are a0, a1, ... (defined)
// and o0, o1, ... (open); every block is completed by complementation.
[[nodiscard]] NestedSystem random_nested(std::mt19937_64 &rng,
                                         const CorpusShape &shape = {});

// Positive definitions over d0, d1, ... with opens o0, o1, ...; negation
// only in front of opens.
[[nodiscard]] FixpointDefinition random_definition(std::mt19937_64 &rng,
                                                   std::size_t max_atoms = 6,
                                                   std::size_t max_depth = 3);

[[nodiscard]] Interpretation random_interpretation(std::mt19937_64 &rng,
                                                   const FactSpace &space,
                                                   bool two_valued = false);

} // namespace njust
