#pragma once

#include <string_view>

#include "hflmc/hes.hpp"

namespace hflmc {

/// Parses the textual HES format. The result is finalized (occurrence ids
/// assigned) but not yet kinded; run infer_kinds() next.
///
/// Throws ParseError for lexical and syntax errors, duplicate equation
/// names, parameters that shadow an equation or reuse another equation's
/// parameter name, unbound identifiers, and λ-abstractions outside the
/// equation prefix.
Hes parse_hes(std::string_view text);

/// A kind in the annotation syntax, e.g. `(o -> o) -> o`.
Kind parse_kind(std::string_view text);

}  // namespace hflmc
