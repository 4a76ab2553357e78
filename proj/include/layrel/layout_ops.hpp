#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "layrel/cute_layout.hpp"
#include "layrel/relation.hpp"

namespace layrel {

/// `g` after `f` (index of `f` fed to `g` as an integral coordinate). When
/// `size(g) < cosize(f)` the last mode of `g` is scaled up first, so the
/// result may cover more than the plain relational composition. Each
/// top-level mode of `f` is composed separately. Throws `InvalidComposition`
/// when a mode yields no layout.
CuteLayout compose(const CuteLayout &g, const CuteLayout &f);

/// Per-dimension (extent, stride) of a set that is the Cartesian product
/// of arithmetic progressions starting at 0. Throws `InvalidComposition`
/// otherwise.
std::vector<std::pair<std::int64_t, std::int64_t>>
extract_shape(const BoundedSet &r);

/// Fills the gaps in the image of `h` up to `target` (or the cosize of `h`
/// when larger) with rank-1 factors. Returns the flattened concatenation
/// of the factors, or `1:0` when nothing fits. Throws
/// `ComplementUndefined` for non-injective `h`.
CuteLayout complement(const CuteLayout &h, std::int64_t target);

/// Throws `NotInvertible` unless the layout mapping is a bijection onto
/// `[0, size)`.
CuteLayout inverse(const CuteLayout &h);

/// A layout `r` with `h(r(i)) == i` over the longest prefix `[0, begin)`
/// of indices covered by `h`; `1:0` when that prefix is trivial.
CuteLayout right_inverse(const CuteLayout &h);

/// Right inverse of `h` concatenated with its complement up to its cosize.
CuteLayout left_inverse(const CuteLayout &h);

} // namespace layrel
