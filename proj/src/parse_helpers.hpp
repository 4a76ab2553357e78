#pragma once

#include "layrel/int_tuple.hpp"
#include "lexer.hpp"

namespace layrel::detail {

/// Reads one IntTuple from the token stream, leaving trailing tokens.
IntTuple parse_int_tuple(Lexer &lex);

} // namespace layrel::detail
