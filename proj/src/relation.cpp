#include "layrel/relation.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "layrel/checked.hpp"
#include "layrel/error.hpp"

namespace layrel {

namespace {

void require_same_arity(const BoundedSet &a, const BoundedSet &b,
                        const char *op) {
  if (a.arity() != b.arity())
    throw Error(ErrorKind::ArityMismatch,
                std::string(op) + " of sets with arities " +
                    std::to_string(a.arity()) + " and " +
                    std::to_string(b.arity()));
}

bool pair_input_less(const Relation::Pair &pair, const Point &p) {
  return pair.first < p;
}

} // namespace

BoundedSet::BoundedSet(std::size_t arity, std::vector<Point> points)
    : arity_(arity), points_(std::move(points)) {
  for (const auto &p : points_)
    if (p.size() != arity_)
      throw Error(ErrorKind::ArityMismatch,
                  "point of arity " + std::to_string(p.size()) +
                      " in a set of arity " + std::to_string(arity_));
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool BoundedSet::contains(const Point &p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

BoundedSet box_set(std::span<const std::int64_t> bounds) {
  std::int64_t total = 1;
  for (auto b : bounds) {
    if (b < 1)
      throw Error(ErrorKind::InvalidShape,
                  "box bound must be positive, got " + std::to_string(b));
    total = checked_mul(total, b);
  }
  if (total > kMaxEnumeratedPoints)
    throw Error(ErrorKind::Overflow, "box of " + std::to_string(total) +
                                         " points is too large to enumerate");
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(total));
  Point p(bounds.size(), 0);
  for (std::int64_t n = 0; n < total; ++n) {
    points.push_back(p);
    // Odometer increment, last dimension fastest, so output stays sorted.
    for (std::size_t i = bounds.size(); i-- > 0;) {
      if (++p[i] < bounds[i])
        break;
      p[i] = 0;
    }
  }
  return BoundedSet(bounds.size(), std::move(points));
}

BoundedSet interval_set(std::int64_t lo, std::int64_t hi) {
  std::vector<Point> points;
  if (hi > lo) {
    if (hi - lo > kMaxEnumeratedPoints)
      throw Error(ErrorKind::Overflow, "interval is too large to enumerate");
    points.reserve(static_cast<std::size_t>(hi - lo));
  }
  for (std::int64_t v = lo; v < hi; ++v)
    points.push_back(Point{v});
  return BoundedSet(1, std::move(points));
}

BoundedSet subtract(const BoundedSet &a, const BoundedSet &b) {
  require_same_arity(a, b, "difference");
  std::vector<Point> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return BoundedSet(a.arity(), std::move(out));
}

BoundedSet intersect(const BoundedSet &a, const BoundedSet &b) {
  require_same_arity(a, b, "intersection");
  std::vector<Point> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return BoundedSet(a.arity(), std::move(out));
}

BoundedSet unite(const BoundedSet &a, const BoundedSet &b) {
  require_same_arity(a, b, "union");
  std::vector<Point> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return BoundedSet(a.arity(), std::move(out));
}

const Point &lexmin(const BoundedSet &s) {
  if (s.empty())
    throw Error(ErrorKind::EmptySet, "lexmin of an empty set");
  return s.points().front();
}

std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>>
box_bounds(const BoundedSet &s) {
  if (s.empty())
    return std::nullopt;
  std::vector<std::pair<std::int64_t, std::int64_t>> bounds;
  for (std::size_t d = 0; d < s.arity(); ++d)
    bounds.emplace_back(s.points().front()[d], s.points().front()[d]);
  for (const auto &p : s)
    for (std::size_t d = 0; d < s.arity(); ++d) {
      bounds[d].first = std::min(bounds[d].first, p[d]);
      bounds[d].second = std::max(bounds[d].second, p[d]);
    }
  std::int64_t volume = 1;
  for (const auto &[lo, hi] : bounds) {
    volume = checked_mul(volume, checked_add(checked_sub(hi, lo), 1));
    if (volume > static_cast<std::int64_t>(s.size()))
      return std::nullopt;
  }
  if (volume != static_cast<std::int64_t>(s.size()))
    return std::nullopt;
  return bounds;
}

Relation Relation::from_pairs(std::size_t in_arity, std::size_t out_arity,
                              std::vector<Pair> pairs) {
  for (const auto &[in, out] : pairs)
    if (in.size() != in_arity || out.size() != out_arity)
      throw Error(ErrorKind::ArityMismatch,
                  "pair arity does not match relation arity " +
                      std::to_string(in_arity) + " -> " +
                      std::to_string(out_arity));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  Relation r(in_arity, out_arity);
  r.pairs_ = std::move(pairs);
  return r;
}

std::vector<Point> Relation::images(const Point &p) const {
  std::vector<Point> out;
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p, pair_input_less);
  for (; it != pairs_.end() && it->first == p; ++it)
    out.push_back(it->second);
  return out;
}

Relation relation_from_exprs(const BoundedSet &domain,
                             std::vector<QaExpr> exprs) {
  for (std::size_t i = 0; i < exprs.size(); ++i)
    if (exprs[i].variable_bound() > domain.arity())
      throw Error(ErrorKind::Construction,
                  "output expression " + std::to_string(i) +
                      " references a variable beyond arity " +
                      std::to_string(domain.arity()));
  Relation r(domain.arity(), exprs.size());
  r.pairs_.reserve(domain.size());
  for (const auto &p : domain) {
    Point q;
    q.reserve(exprs.size());
    for (const auto &e : exprs)
      q.push_back(e.evaluate(p));
    r.pairs_.emplace_back(p, std::move(q));
  }
  r.closed_form_ = std::move(exprs);
  return r;
}

Relation compose(const Relation &first, const Relation &second) {
  if (first.out_arity() != second.in_arity())
    throw Error(ErrorKind::ArityMismatch,
                "cannot compose a relation with output arity " +
                    std::to_string(first.out_arity()) +
                    " into one with input arity " +
                    std::to_string(second.in_arity()));
  Relation r(first.in_arity(), second.out_arity());
  bool restricted = false;
  const auto &sp = second.pairs_;
  for (const auto &[p, q] : first.pairs_) {
    auto it = std::lower_bound(sp.begin(), sp.end(), q, pair_input_less);
    if (it == sp.end() || it->first != q) {
      restricted = true;
      continue;
    }
    for (; it != sp.end() && it->first == q; ++it)
      r.pairs_.emplace_back(p, it->second);
  }
  std::sort(r.pairs_.begin(), r.pairs_.end());
  r.pairs_.erase(std::unique(r.pairs_.begin(), r.pairs_.end()),
                 r.pairs_.end());
  if (!restricted && first.closed_form_ && second.closed_form_) {
    std::vector<QaExpr> exprs;
    exprs.reserve(second.closed_form_->size());
    for (const auto &e : *second.closed_form_)
      exprs.push_back(e.substitute(*first.closed_form_));
    r.closed_form_ = std::move(exprs);
  }
  return r;
}

Relation inverse(const Relation &r) {
  std::vector<Relation::Pair> flipped;
  flipped.reserve(r.size());
  for (const auto &[p, q] : r.pairs())
    flipped.emplace_back(q, p);
  return Relation::from_pairs(r.out_arity(), r.in_arity(), std::move(flipped));
}

BoundedSet domain(const Relation &r) {
  std::vector<Point> pts;
  pts.reserve(r.size());
  for (const auto &pair : r.pairs())
    if (pts.empty() || pts.back() != pair.first)
      pts.push_back(pair.first);
  return BoundedSet(r.in_arity(), std::move(pts));
}

BoundedSet range(const Relation &r) {
  std::vector<Point> pts;
  pts.reserve(r.size());
  for (const auto &pair : r.pairs())
    pts.push_back(pair.second);
  return BoundedSet(r.out_arity(), std::move(pts));
}

Relation intersect_domain(const Relation &r, const BoundedSet &s) {
  if (s.arity() != r.in_arity())
    throw Error(ErrorKind::ArityMismatch, "domain restriction arity mismatch");
  Relation out(r.in_arity(), r.out_arity());
  for (const auto &pair : r.pairs_)
    if (s.contains(pair.first))
      out.pairs_.push_back(pair);
  out.closed_form_ = r.closed_form_;
  return out;
}

Relation intersect_range(const Relation &r, const BoundedSet &s) {
  if (s.arity() != r.out_arity())
    throw Error(ErrorKind::ArityMismatch, "range restriction arity mismatch");
  Relation out(r.in_arity(), r.out_arity());
  for (const auto &pair : r.pairs_)
    if (s.contains(pair.second))
      out.pairs_.push_back(pair);
  out.closed_form_ = r.closed_form_;
  return out;
}

bool is_single_valued(const Relation &r) {
  const auto pairs = r.pairs();
  for (std::size_t i = 1; i < pairs.size(); ++i)
    if (pairs[i].first == pairs[i - 1].first)
      return false;
  return true;
}

bool is_injective(const Relation &r) {
  std::vector<const Point *> outs;
  outs.reserve(r.size());
  for (const auto &pair : r.pairs())
    outs.push_back(&pair.second);
  std::sort(outs.begin(), outs.end(),
            [](const Point *a, const Point *b) { return *a < *b; });
  // Pairs are unique, so a repeated output always has distinct inputs.
  for (std::size_t i = 1; i < outs.size(); ++i)
    if (*outs[i] == *outs[i - 1])
      return false;
  return true;
}

std::optional<AffineForm> affine_fit(const Relation &r) {
  if (r.out_arity() != 1)
    throw Error(ErrorKind::FitPrecondition,
                "affine fit needs exactly one output dimension, got " +
                    std::to_string(r.out_arity()));
  if (!is_single_valued(r))
    throw Error(ErrorKind::FitPrecondition,
                "affine fit needs a single-valued relation");
  const auto bounds = box_bounds(domain(r));
  if (!bounds)
    throw Error(ErrorKind::FitPrecondition,
                "affine fit needs a non-empty box domain");
  for (const auto &[lo, hi] : *bounds)
    if (lo != 0)
      throw Error(ErrorKind::FitPrecondition,
                  "affine fit needs a zero-based box domain");

  const std::size_t n = r.in_arity();
  auto value_at = [&](const Point &p) { return r.images(p).front()[0]; };

  AffineForm form;
  form.offset = value_at(Point(n, 0));
  form.coeffs.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if ((*bounds)[i].second < 1)
      continue;
    Point unit(n, 0);
    unit[i] = 1;
    form.coeffs[i] = checked_sub(value_at(unit), form.offset);
  }
  for (const auto &[p, q] : r.pairs()) {
    std::int64_t v = form.offset;
    for (std::size_t i = 0; i < n; ++i)
      v = checked_add(v, checked_mul(form.coeffs[i], p[i]));
    if (v != q[0])
      return std::nullopt;
  }
  return form;
}

} // namespace layrel
