#include "layrel/swizzle.hpp"

#include <algorithm>
#include <vector>

#include "layrel/checked.hpp"
#include "layrel/error.hpp"
#include "lexer.hpp"

namespace layrel {

namespace {

constexpr std::int64_t kMaxBits = 62;

void check_bits(std::int64_t n) {
  if (n < 0 || n > kMaxBits)
    throw Error(ErrorKind::Construction,
                "bit count must be in [0, 62], got " + std::to_string(n));
}

} // namespace

Swizzle::Swizzle(std::int64_t b_, std::int64_t m_, std::int64_t s_)
    : b(b_), m(m_), s(s_) {
  if (b < 0 || m < 0)
    throw Error(ErrorKind::Construction,
                "swizzle b and m must be non-negative");
  if (s < -kMaxBits || s > kMaxBits || b + m + (s < 0 ? -s : s) > kMaxBits)
    throw Error(ErrorKind::Construction,
                "swizzle spans more than 62 bits");
}

std::int64_t Swizzle::bits() const noexcept { return b + m + (s < 0 ? -s : s); }

std::int64_t Swizzle::mask() const noexcept {
  return ((std::int64_t{1} << b) - 1) << (m + std::max<std::int64_t>(s, 0));
}

std::string to_string(const Swizzle &sw) {
  return "swizzle(" + std::to_string(sw.b) + "," + std::to_string(sw.m) +
         "," + std::to_string(sw.s) + ")";
}

Swizzle parse_swizzle(std::string_view text) {
  detail::Lexer lex(text);
  lex.expect("swizzle");
  lex.expect("(");
  const std::int64_t b = lex.expect_signed_int();
  lex.expect(",");
  const std::int64_t m = lex.expect_signed_int();
  lex.expect(",");
  const std::int64_t s = lex.expect_signed_int();
  lex.expect(")");
  lex.expect_end();
  return Swizzle(b, m, s);
}

Relation lex_coord_mapping(std::int64_t n) {
  check_bits(n);
  const QaExpr c = QaExpr::variable(0);
  std::vector<QaExpr> exprs;
  for (std::int64_t j = 0; j < n; ++j) {
    QaExpr e = QaExpr::floor_div(c, std::int64_t{1} << (n - 1 - j));
    exprs.push_back(j == 0 ? e : QaExpr::mod(e, 2));
  }
  return relation_from_exprs(interval_set(0, std::int64_t{1} << n),
                             std::move(exprs));
}

Relation lex_linearization(std::int64_t n) {
  check_bits(n);
  std::vector<QaExpr> terms;
  for (std::int64_t j = 0; j < n; ++j)
    terms.push_back(QaExpr::scale(std::int64_t{1} << (n - 1 - j),
                                  QaExpr::variable(static_cast<std::size_t>(j))));
  const std::vector<std::int64_t> bounds(static_cast<std::size_t>(n), 2);
  return relation_from_exprs(box_set(bounds), {QaExpr::sum(std::move(terms))});
}

Relation binary_swizzle_mapping(const Swizzle &sw) {
  const std::int64_t n = sw.bits();
  const std::int64_t y = sw.mask();
  auto y_bit = [&](std::int64_t j) { return (y >> (n - 1 - j)) & 1; };
  std::vector<QaExpr> exprs;
  for (std::int64_t j = 0; j < n; ++j) {
    const QaExpr cj = QaExpr::variable(static_cast<std::size_t>(j));
    const std::int64_t src = j - sw.s;
    if (src >= 0 && src < n && y_bit(src) == 1)
      exprs.push_back(QaExpr::mod(
          QaExpr::variable(static_cast<std::size_t>(src)) + cj, 2));
    else
      exprs.push_back(cj);
  }
  const std::vector<std::int64_t> bounds(static_cast<std::size_t>(n), 2);
  return relation_from_exprs(box_set(bounds), std::move(exprs));
}

Relation swizzle_layout_mapping(const Swizzle &sw) {
  const std::int64_t n = sw.bits();
  return compose(compose(lex_coord_mapping(n), binary_swizzle_mapping(sw)),
                 lex_linearization(n));
}

} // namespace layrel
