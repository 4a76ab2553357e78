#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "layrel/int_tuple.hpp"
#include "layrel/relation.hpp"

namespace layrel {

/// A CuTe layout `shape : strides` with congruent nesting. Shape leaves are
/// positive, stride leaves non-negative.
class CuteLayout {
public:
  CuteLayout(IntTuple shape, IntTuple strides);

  const IntTuple &shape() const noexcept { return shape_; }
  const IntTuple &strides() const noexcept { return strides_; }

  /// Number of top-level modes.
  std::size_t rank() const noexcept { return shape_.rank(); }
  CuteLayout mode(std::size_t i) const;

  /// Structural equality, nesting included. See `flat_equal`.
  friend bool operator==(const CuteLayout &, const CuteLayout &) = default;

private:
  IntTuple shape_;
  IntTuple strides_;
};

/// `shape:strides` without spaces.
std::string to_string(const CuteLayout &l);
CuteLayout parse_cute_layout(std::string_view text);

CuteLayout flatten(const CuteLayout &l);
bool flat_equal(const CuteLayout &a, const CuteLayout &b);

std::int64_t size(const CuteLayout &l);
std::int64_t cosize(const CuteLayout &l);

/// Integral to natural coordinates, first mode fastest:
/// c_i = floor(c / (s_0 ... s_{i-1})) mod s_i.
Relation coord_mapping(const IntTuple &shape);

/// Inverse of `coord_mapping`, carried with its closed form
/// c = sum_i c_i * (s_0 ... s_{i-1}).
Relation colex_linearization(const IntTuple &shape);

/// Natural coordinate to index: the dot product with the strides.
Relation index_mapping(const CuteLayout &l);

/// Integral coordinate to index.
Relation layout_mapping(const CuteLayout &l);

/// Top-level modes of `b` appended to those of `a`.
CuteLayout concat(const CuteLayout &a, const CuteLayout &b);

/// True when the sizes match and every leaf of `s1` is the product of a
/// contiguous run of leaves of `s2`, in order.
bool is_compatible(const IntTuple &s1, const IntTuple &s2);

/// Recovers the strides of an affine index mapping over the natural
/// coordinates of `shape`, nested like `shape`. Unit dimensions get stride 0.
CuteLayout layout_from_affine(const Relation &index_map, const IntTuple &shape);

/// Searches for a shape that, combined with `strides`, reproduces
/// `layout_map`. Candidates solve sum_i d_i * x_i = max index with
/// shape x + 1 and are tried in lexicographic order of x.
std::optional<CuteLayout>
layout_from_strides(const Relation &layout_map,
                    std::span<const std::int64_t> strides);

/// Index mapping of `l` viewed through the natural coordinates of an
/// alternate compatible shape.
Relation index_mapping_for_shape(const CuteLayout &l, const IntTuple &alt_shape);

} // namespace layrel
