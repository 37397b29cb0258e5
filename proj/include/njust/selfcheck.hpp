// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/corpus.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace njust {

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  [[nodiscard]] bool passed() const { return failures.empty(); }
};

// Compressed and merged supported values agree on every interpretation.
[[nodiscard]] SuiteResult check_compress_merge(const std::vector<NestedSystem> &corpus,
                                               const Limits &limits = {});
// The compressed root and every local frame agree with their flattening.
[[nodiscard]] SuiteResult check_flattening(const std::vector<NestedSystem> &corpus,
                                           const Limits &limits = {});
// shrink(expand(J)) = J and both directions keep the branch values, on up to
// `per_fact` justifications of each defined fact.
[[nodiscard]] SuiteResult check_shrink_expand(const std::vector<NestedSystem> &corpus,
                                              std::size_t per_fact,
                                              std::uint64_t seed);
// SV(~x) = ~SV(x) in the merged and in the compressed system.
[[nodiscard]] SuiteResult check_consistency(const std::vector<NestedSystem> &corpus,
                                            const Limits &limits = {});
[[nodiscard]] SuiteResult check_round_trip(const std::vector<NestedSystem> &corpus,
                                           const std::vector<FixpointDefinition> &defs);
// For every two-valued assignment of the opens the merged translation has a
// model without u on the defined symbols that matches solve_direct.
[[nodiscard]] SuiteResult check_fixpoints(const std::vector<FixpointDefinition> &defs,
                                          const Limits &limits = {});

struct SelfCheckReport {
  std::vector<SuiteResult> suites;
  [[nodiscard]] bool passed() const;
};

[[nodiscard]] SelfCheckReport run_selfcheck(std::size_t count, std::uint64_t seed,
                                            const Limits &limits = {});

} // namespace njust
