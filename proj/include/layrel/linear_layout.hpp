#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "layrel/relation.hpp"

namespace layrel {

/// A linear layout over F2: the images of the binary basis vectors of the
/// coordinate space, listed first dimension first and least significant
/// bit first within a dimension. Every shape entry is a power of two.
class LinearLayout {
public:
  LinearLayout(std::vector<std::int64_t> crd_shape,
               std::vector<std::int64_t> idx_shape, std::vector<Point> vals);

  const std::vector<std::int64_t> &crd_shape() const noexcept {
    return crd_shape_;
  }
  const std::vector<std::int64_t> &idx_shape() const noexcept {
    return idx_shape_;
  }
  const std::vector<Point> &vals() const noexcept { return vals_; }

  /// Number of coordinate bits (M) and index bits (N).
  std::int64_t crd_bits() const noexcept;
  std::int64_t idx_bits() const noexcept;

  friend bool operator==(const LinearLayout &, const LinearLayout &) = default;

private:
  std::vector<std::int64_t> crd_shape_;
  std::vector<std::int64_t> idx_shape_;
  std::vector<Point> vals_;
};

/// `crd=(4,4);idx=(4,4);vals=[(1,1),(2,2),(0,1),(0,2)]`
std::string to_string(const LinearLayout &l);

/// Accepts the form above, `,` in place of `;`, and an optional
/// `LinearLayout(...)` wrapper. Scalars stand for 1-tuples.
LinearLayout parse_linear_layout(std::string_view text);

namespace linear {

/// Coordinate box to {0..P-1}, first dimension fastest.
Relation integral_coord_mapping(const std::vector<std::int64_t> &crd_shape);

/// {0..P-1} to its log2(P) bits, least significant first.
Relation binary_coord_mapping(const std::vector<std::int64_t> &crd_shape);

/// Coordinate bits to index bits: bit j is the parity of the coordinate
/// bits whose basis image has bit j set.
Relation binary_vector_mapping(const LinearLayout &l);

/// Index bits, least significant first, to {0..Q-1}.
Relation linear_index_mapping(const std::vector<std::int64_t> &idx_shape);

/// {0..Q-1} to the index box, first dimension fastest.
Relation natural_index_mapping(const std::vector<std::int64_t> &idx_shape);

/// Coordinate box to index box.
Relation layout_mapping(const LinearLayout &l);

} // namespace linear

} // namespace layrel
