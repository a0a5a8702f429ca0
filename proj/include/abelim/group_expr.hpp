#pragma once

#include "abelim/presentation.hpp"

#include <string>
#include <string_view>

namespace abelim {

/// Parses `Z`, `Z^k`, `Z/n`, `Z/n^k` and `0`, joined by `+`, into a diagonal
/// presentation with one generator per cyclic summand in input order.
/// Throws ParseError (1-based column) or ZeroModulus.
Presentation parse_group_expr(std::string_view text);

/// Canonical text; parse_group_expr of the result has the same canonical form.
std::string format_group(const CanonicalForm& cf);
inline std::string format_group(const Presentation& a) { return format_group(a.canonical_form()); }

} // namespace abelim
