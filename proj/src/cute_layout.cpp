#include "layrel/cute_layout.hpp"

#include <algorithm>
#include <vector>

#include "layrel/checked.hpp"
#include "layrel/error.hpp"
#include "lexer.hpp"
#include "parse_helpers.hpp"

namespace layrel {

CuteLayout::CuteLayout(IntTuple shape, IntTuple strides)
    : shape_(std::move(shape)), strides_(std::move(strides)) {
  if (!congruent(shape_, strides_))
    throw Error(ErrorKind::InvalidLayout,
                "shape " + to_string(shape_) + " and strides " +
                    to_string(strides_) + " are not congruent");
  for (auto s : shape_.leaves())
    if (s < 1)
      throw Error(ErrorKind::InvalidShape,
                  "shape entries must be positive, got " + std::to_string(s));
  for (auto d : strides_.leaves())
    if (d < 0)
      throw Error(ErrorKind::InvalidLayout,
                  "strides must be non-negative, got " + std::to_string(d));
}

CuteLayout CuteLayout::mode(std::size_t i) const {
  if (i >= rank())
    throw Error(ErrorKind::InvalidLayout, "mode " + std::to_string(i) +
                                              " out of range for " +
                                              to_string(*this));
  if (shape_.is_leaf())
    return *this;
  return CuteLayout(shape_.children()[i], strides_.children()[i]);
}

std::string to_string(const CuteLayout &l) {
  return to_string(l.shape()) + ":" + to_string(l.strides());
}

CuteLayout parse_cute_layout(std::string_view text) {
  detail::Lexer lex(text);
  IntTuple shape = detail::parse_int_tuple(lex);
  lex.expect(":");
  const std::size_t at = lex.pos();
  IntTuple strides = detail::parse_int_tuple(lex);
  lex.expect_end();
  if (!congruent(shape, strides))
    throw ParseError("strides " + to_string(strides) +
                         " do not match the nesting of shape " +
                         to_string(shape),
                     at);
  return CuteLayout(std::move(shape), std::move(strides));
}

CuteLayout flatten(const CuteLayout &l) {
  const auto s = l.shape().leaves();
  const auto d = l.strides().leaves();
  return CuteLayout(flat_tuple(s), flat_tuple(d));
}

bool flat_equal(const CuteLayout &a, const CuteLayout &b) {
  return a.shape().leaves() == b.shape().leaves() &&
         a.strides().leaves() == b.strides().leaves();
}

std::int64_t size(const CuteLayout &l) { return product(l.shape()); }

std::int64_t cosize(const CuteLayout &l) {
  const auto s = l.shape().leaves();
  const auto d = l.strides().leaves();
  std::int64_t max = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    max = checked_add(max, checked_mul(s[i] - 1, d[i]));
  return max + 1;
}

Relation coord_mapping(const IntTuple &shape) {
  const auto s = shape.leaves();
  const std::int64_t total = product(shape);
  const QaExpr c = QaExpr::variable(0);
  std::vector<QaExpr> exprs;
  std::int64_t below = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    QaExpr e = QaExpr::floor_div(c, below);
    if (s[i] == 1)
      e = QaExpr::constant(0);
    else if (i + 1 < s.size())
      e = QaExpr::mod(e, s[i]);
    exprs.push_back(e);
    below = checked_mul(below, s[i]);
  }
  return relation_from_exprs(interval_set(0, total), std::move(exprs));
}

Relation colex_linearization(const IntTuple &shape) {
  const auto s = shape.leaves();
  std::vector<QaExpr> terms;
  std::int64_t below = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > 1)
      terms.push_back(QaExpr::scale(below, QaExpr::variable(i)));
    below = checked_mul(below, s[i]);
  }
  return relation_from_exprs(box_set(s), {QaExpr::sum(std::move(terms))});
}

Relation index_mapping(const CuteLayout &l) {
  const auto s = l.shape().leaves();
  const auto d = l.strides().leaves();
  std::vector<QaExpr> terms;
  for (std::size_t i = 0; i < s.size(); ++i)
    terms.push_back(QaExpr::scale(d[i], QaExpr::variable(i)));
  return relation_from_exprs(box_set(s), {QaExpr::sum(std::move(terms))});
}

Relation layout_mapping(const CuteLayout &l) {
  return compose(coord_mapping(l.shape()), index_mapping(l));
}

CuteLayout concat(const CuteLayout &a, const CuteLayout &b) {
  std::vector<IntTuple> shape, strides;
  for (const CuteLayout *part : {&a, &b}) {
    for (std::size_t i = 0; i < part->rank(); ++i) {
      const CuteLayout m = part->mode(i);
      shape.push_back(m.shape());
      strides.push_back(m.strides());
    }
  }
  return CuteLayout(IntTuple(std::move(shape)), IntTuple(std::move(strides)));
}

bool is_compatible(const IntTuple &s1, const IntTuple &s2) {
  if (product(s1) != product(s2))
    return false;
  const auto a = s1.leaves();
  const auto b = s2.leaves();
  std::size_t j = 0;
  for (auto v : a) {
    std::int64_t acc = 1;
    while (acc < v && j < b.size())
      acc = checked_mul(acc, b[j++]);
    if (acc != v)
      return false;
  }
  for (; j < b.size(); ++j)
    if (b[j] != 1)
      return false;
  return true;
}

CuteLayout layout_from_affine(const Relation &index_map,
                              const IntTuple &shape) {
  const auto s = shape.leaves();
  if (index_map.in_arity() != s.size() || index_map.out_arity() != 1)
    throw Error(ErrorKind::InvalidMapping,
                "index mapping arity does not match shape " +
                    to_string(shape));
  if (!(domain(index_map) == box_set(s)))
    throw Error(ErrorKind::InvalidMapping,
                "index mapping domain is not the box of shape " +
                    to_string(shape));
  const auto fit = affine_fit(index_map);
  if (!fit)
    throw Error(ErrorKind::NotStrictlyAffine,
                "index mapping is not affine over shape " + to_string(shape));
  if (fit->offset != 0)
    throw Error(ErrorKind::InvalidMapping,
                "index mapping has nonzero offset " +
                    std::to_string(fit->offset));
  for (auto d : fit->coeffs)
    if (d < 0)
      throw Error(ErrorKind::InvalidMapping,
                  "index mapping has negative stride " + std::to_string(d));
  return CuteLayout(shape, unflatten(fit->coeffs, shape));
}

namespace {

struct StrideSearch {
  std::span<const std::int64_t> strides;
  std::int64_t points;
  const Relation &target;
  std::vector<std::int64_t> x;
  std::optional<CuteLayout> found;

  void run(std::size_t i, std::int64_t remaining, std::int64_t partial) {
    if (found)
      return;
    if (i == strides.size()) {
      if (remaining != 0 || partial != points)
        return;
      std::vector<std::int64_t> shape(x.size());
      for (std::size_t k = 0; k < x.size(); ++k)
        shape[k] = x[k] + 1;
      CuteLayout candidate(flat_tuple(shape), flat_tuple(strides));
      if (layout_mapping(candidate) == target)
        found = candidate;
      return;
    }
    for (std::int64_t v = 0; v * strides[i] <= remaining; ++v) {
      // Sizes must agree, so a partial product beyond the point count
      // cannot lead to a match.
      const std::int64_t p = checked_mul(partial, v + 1);
      if (p > points)
        break;
      x[i] = v;
      run(i + 1, remaining - v * strides[i], p);
      if (found)
        return;
    }
  }
};

} // namespace

std::optional<CuteLayout>
layout_from_strides(const Relation &layout_map,
                    std::span<const std::int64_t> strides) {
  if (strides.empty())
    throw Error(ErrorKind::UnsupportedStrides, "no strides given");
  for (auto d : strides)
    if (d < 1)
      throw Error(ErrorKind::UnsupportedStrides,
                  "strides must be positive, got " + std::to_string(d));
  if (layout_map.in_arity() != 1 || layout_map.out_arity() != 1 ||
      !is_single_valued(layout_map) || layout_map.empty())
    throw Error(ErrorKind::InvalidMapping,
                "layout mapping must be a non-empty 1-D function");
  const auto r = range(layout_map);
  const std::int64_t max_index = r.points().back()[0];
  if (max_index < 0)
    return std::nullopt;
  StrideSearch search{strides, static_cast<std::int64_t>(layout_map.size()),
                      layout_map, std::vector<std::int64_t>(strides.size()),
                      std::nullopt};
  search.run(0, max_index, 1);
  return search.found;
}

Relation index_mapping_for_shape(const CuteLayout &l,
                                 const IntTuple &alt_shape) {
  if (!is_compatible(alt_shape, l.shape()))
    throw Error(ErrorKind::IncompatibleShape,
                to_string(alt_shape) + " is not compatible with " +
                    to_string(l.shape()));
  return compose(colex_linearization(alt_shape), layout_mapping(l));
}

} // namespace layrel
