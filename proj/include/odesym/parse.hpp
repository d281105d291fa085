#pragma once

#include <string_view>

#include "odesym/expr.hpp"

namespace odesym {

/// Parse the expression grammar:
///
///   expr   := ('+'|'-')? term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*        ('/' only by a numeric literal)
///   factor := atom ('^' '-'? integer)?
///   atom   := number | 'x' | 'p' digits | ident '\''*
///           | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')'
///
/// Identifiers other than the reserved names are opaque function symbols
/// of x; trailing primes are formal derivative orders. Numbers are exact:
/// integers or decimal fractions. No normalization is applied.
///
/// With allow_d set, the reserved symbol 'D' is accepted as an atom; this
/// is the operator grammar used by the diffop module.
Expr parse_expression(std::string_view text, bool allow_d = false);

}  // namespace odesym
