#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "layrel/qa_expr.hpp"

namespace layrel {

using Point = std::vector<std::int64_t>;

/// Finite, deduplicated set of integer points of one arity, kept in
/// lexicographic order.
class BoundedSet {
public:
  explicit BoundedSet(std::size_t arity = 0) : arity_(arity) {}
  BoundedSet(std::size_t arity, std::vector<Point> points);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  bool contains(const Point &p) const;

  std::span<const Point> points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const BoundedSet &, const BoundedSet &) = default;

private:
  std::size_t arity_;
  std::vector<Point> points_;
};

/// All points with 0 <= x_i < bounds[i].
BoundedSet box_set(std::span<const std::int64_t> bounds);
inline BoundedSet box_set(std::initializer_list<std::int64_t> bounds) {
  return box_set(std::span<const std::int64_t>(bounds.begin(), bounds.size()));
}

/// The 1-D set [lo, hi).
BoundedSet interval_set(std::int64_t lo, std::int64_t hi);

BoundedSet subtract(const BoundedSet &a, const BoundedSet &b);
BoundedSet intersect(const BoundedSet &a, const BoundedSet &b);
BoundedSet unite(const BoundedSet &a, const BoundedSet &b);

/// Lexicographically smallest point; throws on an empty set.
const Point &lexmin(const BoundedSet &s);

/// Per-dimension inclusive bounds when `s` is exactly a (non-empty) box.
std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>>
box_bounds(const BoundedSet &s);

/// Exact finite relation between integer tuple spaces.
///
/// The graph (a sorted list of input/output pairs) is authoritative. A
/// closed form, one quasi-affine expression per output dimension, is carried
/// along when the relation was built symbolically and is single-valued;
/// evaluating it at any input of the graph reproduces that input's image.
class Relation {
public:
  using Pair = std::pair<Point, Point>;

  explicit Relation(std::size_t in_arity = 0, std::size_t out_arity = 0)
      : in_arity_(in_arity), out_arity_(out_arity) {}

  static Relation from_pairs(std::size_t in_arity, std::size_t out_arity,
                             std::vector<Pair> pairs);

  std::size_t in_arity() const noexcept { return in_arity_; }
  std::size_t out_arity() const noexcept { return out_arity_; }
  std::span<const Pair> pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  const std::optional<std::vector<QaExpr>> &closed_form() const noexcept {
    return closed_form_;
  }

  /// All images of `p`, in lexicographic order.
  std::vector<Point> images(const Point &p) const;

  /// Graph equality; closed forms are presentation only.
  friend bool operator==(const Relation &a, const Relation &b) {
    return a.in_arity_ == b.in_arity_ && a.out_arity_ == b.out_arity_ &&
           a.pairs_ == b.pairs_;
  }

private:
  friend Relation relation_from_exprs(const BoundedSet &,
                                      std::vector<QaExpr>);
  friend Relation compose(const Relation &, const Relation &);
  friend Relation intersect_domain(const Relation &, const BoundedSet &);
  friend Relation intersect_range(const Relation &, const BoundedSet &);

  std::size_t in_arity_;
  std::size_t out_arity_;
  std::vector<Pair> pairs_;
  std::optional<std::vector<QaExpr>> closed_form_;
};

/// Single-valued relation {p -> exprs(p) : p in domain} carrying `exprs` as
/// its closed form.
Relation relation_from_exprs(const BoundedSet &domain,
                             std::vector<QaExpr> exprs);

/// `first` followed by `second`, i.e. second ∘ first. Inputs whose images
/// fall outside the domain of `second` drop out; the closed form survives
/// only when both operands carry one and nothing dropped out.
Relation compose(const Relation &first, const Relation &second);

Relation inverse(const Relation &r);
BoundedSet domain(const Relation &r);
BoundedSet range(const Relation &r);

/// Restrictions keep the closed form, which stays valid on a subset.
Relation intersect_domain(const Relation &r, const BoundedSet &s);
Relation intersect_range(const Relation &r, const BoundedSet &s);

bool is_single_valued(const Relation &r);
bool is_injective(const Relation &r);
inline bool is_bijective(const Relation &r) {
  return is_single_valued(r) && is_injective(r);
}

struct AffineForm {
  std::int64_t offset = 0;
  std::vector<std::int64_t> coeffs;

  friend bool operator==(const AffineForm &, const AffineForm &) = default;
};

/// Fits out = offset + sum(coeffs[i] * c_i) to a single-valued relation with
/// one output over a zero-based box domain. Dimensions of extent 1 get a
/// zero coefficient. Returns nullopt when no affine form matches every
/// point; throws `FitPrecondition` when the preconditions do not hold.
std::optional<AffineForm> affine_fit(const Relation &r);

} // namespace layrel
