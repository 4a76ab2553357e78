#include "layrel/linear_layout.hpp"

#include <bit>

#include "layrel/checked.hpp"
#include "layrel/error.hpp"
#include "lexer.hpp"
#include "parse_helpers.hpp"

namespace layrel {

namespace {

std::int64_t log2_exact(std::int64_t v, const char *what) {
  if (v < 1 || !std::has_single_bit(static_cast<std::uint64_t>(v)))
    throw Error(ErrorKind::InvalidShape,
                std::string(what) + " entries must be powers of two, got " +
                    std::to_string(v));
  return std::countr_zero(static_cast<std::uint64_t>(v));
}

std::int64_t total_bits(const std::vector<std::int64_t> &shape,
                        const char *what) {
  std::int64_t n = 0;
  for (auto s : shape)
    n += log2_exact(s, what);
  return n;
}

std::int64_t total_size(const std::vector<std::int64_t> &shape) {
  std::int64_t p = 1;
  for (auto s : shape)
    p = checked_mul(p, s);
  return p;
}

std::int64_t colex_index(const Point &p, const std::vector<std::int64_t> &shape) {
  std::int64_t idx = 0;
  std::int64_t below = 1;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    idx += p[i] * below;
    below *= shape[i];
  }
  return idx;
}

std::string shape_text(const std::vector<std::int64_t> &s) {
  if (s.size() == 1)
    return std::to_string(s[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

std::vector<std::int64_t> parse_flat(detail::Lexer &lex) {
  return detail::parse_int_tuple(lex).leaves();
}

} // namespace

LinearLayout::LinearLayout(std::vector<std::int64_t> crd_shape,
                           std::vector<std::int64_t> idx_shape,
                           std::vector<Point> vals)
    : crd_shape_(std::move(crd_shape)), idx_shape_(std::move(idx_shape)),
      vals_(std::move(vals)) {
  if (crd_shape_.empty() || idx_shape_.empty())
    throw Error(ErrorKind::InvalidShape, "linear layout shapes must be non-empty");
  const std::int64_t m = total_bits(crd_shape_, "coordinate shape");
  total_bits(idx_shape_, "index shape");
  if (static_cast<std::int64_t>(vals_.size()) != m)
    throw Error(ErrorKind::InvalidLayout,
                "expected " + std::to_string(m) + " basis images, got " +
                    std::to_string(vals_.size()));
  for (const auto &v : vals_) {
    if (v.size() != idx_shape_.size())
      throw Error(ErrorKind::InvalidLayout,
                  "basis image arity differs from the index shape");
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] < 0 || v[i] >= idx_shape_[i])
        throw Error(ErrorKind::InvalidLayout,
                    "basis image lies outside the index shape");
  }
}

std::int64_t LinearLayout::crd_bits() const noexcept {
  std::int64_t n = 0;
  for (auto s : crd_shape_)
    n += std::countr_zero(static_cast<std::uint64_t>(s));
  return n;
}

std::int64_t LinearLayout::idx_bits() const noexcept {
  std::int64_t n = 0;
  for (auto s : idx_shape_)
    n += std::countr_zero(static_cast<std::uint64_t>(s));
  return n;
}

std::string to_string(const LinearLayout &l) {
  std::string out = "crd=" + shape_text(l.crd_shape()) +
                    ";idx=" + shape_text(l.idx_shape()) + ";vals=[";
  for (std::size_t k = 0; k < l.vals().size(); ++k)
    out += (k ? "," : "") + shape_text(l.vals()[k]);
  return out + "]";
}

LinearLayout parse_linear_layout(std::string_view text) {
  detail::Lexer lex(text);
  const bool wrapped = lex.accept("LinearLayout");
  if (wrapped)
    lex.expect("(");
  lex.expect("crd");
  lex.expect("=");
  auto crd = parse_flat(lex);
  if (!lex.accept(";"))
    lex.expect(",");
  lex.expect("idx");
  lex.expect("=");
  auto idx = parse_flat(lex);
  if (!lex.accept(";"))
    lex.expect(",");
  lex.expect("vals");
  lex.expect("=");
  lex.expect("[");
  std::vector<Point> vals;
  if (!lex.accept("]")) {
    do {
      vals.push_back(parse_flat(lex));
    } while (lex.accept(","));
    lex.expect("]");
  }
  if (wrapped)
    lex.expect(")");
  lex.expect_end();
  return LinearLayout(std::move(crd), std::move(idx), std::move(vals));
}

namespace linear {

Relation integral_coord_mapping(const std::vector<std::int64_t> &crd_shape) {
  total_bits(crd_shape, "coordinate shape");
  std::vector<QaExpr> terms;
  std::int64_t below = 1;
  for (std::size_t i = 0; i < crd_shape.size(); ++i) {
    terms.push_back(QaExpr::scale(below, QaExpr::variable(i)));
    below = checked_mul(below, crd_shape[i]);
  }
  return relation_from_exprs(box_set(crd_shape),
                             {QaExpr::sum(std::move(terms))});
}

Relation binary_coord_mapping(const std::vector<std::int64_t> &crd_shape) {
  const std::int64_t m = total_bits(crd_shape, "coordinate shape");
  const QaExpr c = QaExpr::variable(0);
  std::vector<QaExpr> exprs;
  for (std::int64_t k = 0; k < m; ++k) {
    QaExpr e = QaExpr::floor_div(c, std::int64_t{1} << k);
    exprs.push_back(k + 1 == m ? e : QaExpr::mod(e, 2));
  }
  return relation_from_exprs(interval_set(0, total_size(crd_shape)),
                             std::move(exprs));
}

Relation binary_vector_mapping(const LinearLayout &l) {
  const std::int64_t m = l.crd_bits();
  const std::int64_t n = l.idx_bits();
  std::vector<std::int64_t> images;
  for (const auto &v : l.vals())
    images.push_back(colex_index(v, l.idx_shape()));
  std::vector<QaExpr> exprs;
  for (std::int64_t j = 0; j < n; ++j) {
    std::vector<QaExpr> terms;
    for (std::int64_t k = 0; k < m; ++k)
      if ((images[static_cast<std::size_t>(k)] >> j) & 1)
        terms.push_back(QaExpr::variable(static_cast<std::size_t>(k)));
    if (terms.size() <= 1)
      exprs.push_back(QaExpr::sum(std::move(terms)));
    else
      exprs.push_back(QaExpr::mod(QaExpr::sum(std::move(terms)), 2));
  }
  const std::vector<std::int64_t> bounds(static_cast<std::size_t>(m), 2);
  return relation_from_exprs(box_set(bounds), std::move(exprs));
}

Relation linear_index_mapping(const std::vector<std::int64_t> &idx_shape) {
  const std::int64_t n = total_bits(idx_shape, "index shape");
  std::vector<QaExpr> terms;
  for (std::int64_t j = 0; j < n; ++j)
    terms.push_back(QaExpr::scale(std::int64_t{1} << j,
                                  QaExpr::variable(static_cast<std::size_t>(j))));
  const std::vector<std::int64_t> bounds(static_cast<std::size_t>(n), 2);
  return relation_from_exprs(box_set(bounds), {QaExpr::sum(std::move(terms))});
}

Relation natural_index_mapping(const std::vector<std::int64_t> &idx_shape) {
  total_bits(idx_shape, "index shape");
  const QaExpr c = QaExpr::variable(0);
  std::vector<QaExpr> exprs;
  std::int64_t below = 1;
  for (std::size_t i = 0; i < idx_shape.size(); ++i) {
    QaExpr e = QaExpr::floor_div(c, below);
    if (idx_shape[i] == 1)
      e = QaExpr::constant(0);
    else if (i + 1 < idx_shape.size())
      e = QaExpr::mod(e, idx_shape[i]);
    exprs.push_back(e);
    below = checked_mul(below, idx_shape[i]);
  }
  return relation_from_exprs(interval_set(0, total_size(idx_shape)),
                             std::move(exprs));
}

Relation layout_mapping(const LinearLayout &l) {
  Relation r = compose(integral_coord_mapping(l.crd_shape()),
                       binary_coord_mapping(l.crd_shape()));
  r = compose(r, binary_vector_mapping(l));
  r = compose(r, linear_index_mapping(l.idx_shape()));
  return compose(r, natural_index_mapping(l.idx_shape()));
}

} // namespace linear

} // namespace layrel
