#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace layrel {

/// A nested tuple of integers: either a single leaf or an ordered list of
/// child tuples. Shapes and strides of CuTe layouts are IntTuples.
class IntTuple {
public:
  IntTuple(std::int64_t leaf = 1) : leaf_(leaf) {} // NOLINT: implicit by design
  explicit IntTuple(std::vector<IntTuple> children);
  IntTuple(std::initializer_list<IntTuple> children)
      : IntTuple(std::vector<IntTuple>(children)) {}

  bool is_leaf() const noexcept { return !tuple_; }
  std::int64_t value() const noexcept { return leaf_; }
  const std::vector<IntTuple> &children() const noexcept { return children_; }

  /// Number of top-level modes; a leaf has rank 1.
  std::size_t rank() const noexcept {
    return tuple_ ? children_.size() : 1;
  }

  /// Leaf values in left-to-right order.
  std::vector<std::int64_t> leaves() const;
  std::size_t leaf_count() const noexcept;

  friend bool operator==(const IntTuple &, const IntTuple &) = default;

private:
  bool tuple_ = false;
  std::int64_t leaf_ = 1;
  std::vector<IntTuple> children_;
};

/// Same nesting structure (leaf values ignored).
bool congruent(const IntTuple &a, const IntTuple &b);

/// Rebuilds `values` with the nesting of `like`; throws `InvalidShape` if the
/// leaf counts differ.
IntTuple unflatten(std::span<const std::int64_t> values, const IntTuple &like);

IntTuple flat_tuple(std::span<const std::int64_t> values);

/// Product of all leaves (overflow-checked).
std::int64_t product(const IntTuple &t);

/// `4`, `(4,(2,2))`; no spaces.
std::string to_string(const IntTuple &t);

/// `int | '(' tuple (',' tuple)* ')'`; a parenthesized single element is
/// the element itself. Negative leaves are accepted (strides are validated
/// by the layout).
IntTuple parse_int_tuple(std::string_view text);

} // namespace layrel
