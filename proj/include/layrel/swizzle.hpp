#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "layrel/relation.hpp"

namespace layrel {

/// CuTe swizzle `c xor ((c & y) >> s)` with mask
/// `y = (2^b - 1) << (m + max(s, 0))`; negative `s` shifts left.
struct Swizzle {
  Swizzle(std::int64_t b, std::int64_t m, std::int64_t s);

  std::int64_t b;
  std::int64_t m;
  std::int64_t s;

  /// Number of bits touched: b + m + |s|.
  std::int64_t bits() const noexcept;
  std::int64_t mask() const noexcept;

  friend bool operator==(const Swizzle &, const Swizzle &) = default;
};

std::string to_string(const Swizzle &sw);

/// `swizzle(b,m,s)`
Swizzle parse_swizzle(std::string_view text);

/// {0..2^n-1} to n binary digits, most significant first.
Relation lex_coord_mapping(std::int64_t n);

/// n binary digits, most significant first, back to {0..2^n-1}.
Relation lex_linearization(std::int64_t n);

/// The swizzle on binary digits (most significant first).
Relation binary_swizzle_mapping(const Swizzle &sw);

/// The swizzle on {0..2^n-1}.
Relation swizzle_layout_mapping(const Swizzle &sw);

} // namespace layrel
