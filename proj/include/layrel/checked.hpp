#pragma once

#include <cstdint>
#include <string>

#include "layrel/error.hpp"

namespace layrel {

// Upper bound on the number of points any enumerated set may hold.
inline constexpr std::int64_t kMaxEnumeratedPoints = std::int64_t{1} << 24;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "integer overflow in " +
                                         std::to_string(a) + " + " +
                                         std::to_string(b));
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "integer overflow in " +
                                         std::to_string(a) + " - " +
                                         std::to_string(b));
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "integer overflow in " +
                                         std::to_string(a) + " * " +
                                         std::to_string(b));
  return r;
}

/// Floor division; `d` must be positive.
inline std::int64_t floor_div(std::int64_t n, std::int64_t d) {
  std::int64_t q = n / d;
  if ((n % d != 0) && (n < 0))
    --q;
  return q;
}

/// Non-negative remainder; `d` must be positive.
inline std::int64_t floor_mod(std::int64_t n, std::int64_t d) {
  std::int64_t r = n % d;
  return r < 0 ? r + d : r;
}

inline std::int64_t ceil_div(std::int64_t n, std::int64_t d) {
  return -floor_div(-n, d);
}

} // namespace layrel
