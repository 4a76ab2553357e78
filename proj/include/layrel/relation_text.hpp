#pragma once

#include <span>
#include <string>
#include <string_view>

#include "layrel/qa_expr.hpp"
#include "layrel/relation.hpp"

namespace layrel {

enum class Format { Text, Json };

/// Text form: `{ [c0, c1] -> [expr, ...] : 0 <= c0 <= 3 and 0 <= c1 <= 1 }`
/// when the relation carries a closed form over a box domain, otherwise the
/// explicit pair list `{ [0] -> [0]; [2] -> [1] }`.
///
/// JSON form:
/// `{"in_arity":N,"out_arity":M,"pairs":[[[in...],[out...]],...],"expr":[...]|null}`
/// with pairs in lexicographic order.
std::string print_relation(const Relation &r, Format format = Format::Text);

/// `[1, 2]`
std::string print_point(const Point &p);

/// Parses either text form above or the JSON form (recognized by a quoted
/// key right after the opening brace). Throws `ParseError` on malformed
/// input and on variables that lack a bound.
Relation parse_relation(std::string_view text);

Relation parse_relation_json(std::string_view text);

/// Quasi-affine expression over the named variables, e.g.
/// `-c + 3*floor((1 + c)/2)` or `(-3*c0) mod 16`. An integer literal
/// directly followed by a factor (`3c1`) is read as a product.
QaExpr parse_qa_expr(std::string_view text,
                     std::span<const std::string> variables);

/// Accepts `2`, `1,2`, `(1,2)` or `[1, 2]`.
Point parse_point(std::string_view text);

} // namespace layrel
