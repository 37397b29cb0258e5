// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "njust/fixpoint.hpp"
#include "njust/nested.hpp"

#include <string>
#include <string_view>

namespace njust {

// system <eval> { rules, child blocks, #complete }
// Comments run from '%' or from a '#' that does not start a directive to the
// end of the line. ParseError carries line and column; with `validate` the
// result also passes validate_nested.
[[nodiscard]] NestedSystem parse_system(std::string_view text,
                                        bool validate = true);
[[nodiscard]] std::string print_system(const NestedSystem &ns);

// A flat system in the same grammar; `merge` systems print their node of
// every rule as a comment.
[[nodiscard]] std::string print_frame(const JustificationSystem &sys);

// The compressed root with a "# from:" line for every rule that did not come
// from the root unchanged.
[[nodiscard]] std::string print_compression(const Compression &c);

// One "# from:" line per rule naming the justification it stands for.
[[nodiscard]] std::string print_flattening(const Flattening &f);

// lfp { p <- q | r. gfp { ... } }
[[nodiscard]] FixpointDefinition parse_fixpoint(std::string_view text);
[[nodiscard]] std::string print_fixpoint(const FixpointDefinition &d);

} // namespace njust
