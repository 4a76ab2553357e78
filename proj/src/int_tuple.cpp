#include "layrel/int_tuple.hpp"

#include "layrel/checked.hpp"
#include "layrel/error.hpp"
#include "lexer.hpp"
#include "parse_helpers.hpp"

namespace layrel {

IntTuple::IntTuple(std::vector<IntTuple> children)
    : tuple_(true), children_(std::move(children)) {
  if (children_.empty())
    throw Error(ErrorKind::InvalidShape, "empty tuple");
}

std::vector<std::int64_t> IntTuple::leaves() const {
  if (is_leaf())
    return {leaf_};
  std::vector<std::int64_t> out;
  for (const auto &c : children_) {
    auto sub = c.leaves();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::size_t IntTuple::leaf_count() const noexcept {
  if (is_leaf())
    return 1;
  std::size_t n = 0;
  for (const auto &c : children_)
    n += c.leaf_count();
  return n;
}

bool congruent(const IntTuple &a, const IntTuple &b) {
  if (a.is_leaf() || b.is_leaf())
    return a.is_leaf() && b.is_leaf();
  if (a.children().size() != b.children().size())
    return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!congruent(a.children()[i], b.children()[i]))
      return false;
  return true;
}

namespace {

IntTuple rebuild(std::span<const std::int64_t> values, std::size_t &next,
                 const IntTuple &like) {
  if (like.is_leaf())
    return IntTuple(values[next++]);
  std::vector<IntTuple> kids;
  for (const auto &c : like.children())
    kids.push_back(rebuild(values, next, c));
  return IntTuple(std::move(kids));
}

} // namespace

IntTuple unflatten(std::span<const std::int64_t> values, const IntTuple &like) {
  if (values.size() != like.leaf_count())
    throw Error(ErrorKind::InvalidShape,
                "cannot nest " + std::to_string(values.size()) +
                    " values like " + to_string(like));
  std::size_t next = 0;
  return rebuild(values, next, like);
}

IntTuple flat_tuple(std::span<const std::int64_t> values) {
  if (values.empty())
    throw Error(ErrorKind::InvalidShape, "empty tuple");
  if (values.size() == 1)
    return IntTuple(values[0]);
  std::vector<IntTuple> kids(values.begin(), values.end());
  return IntTuple(std::move(kids));
}

std::int64_t product(const IntTuple &t) {
  std::int64_t p = 1;
  for (auto v : t.leaves())
    p = checked_mul(p, v);
  return p;
}

std::string to_string(const IntTuple &t) {
  if (t.is_leaf())
    return std::to_string(t.value());
  std::string out = "(";
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (i)
      out += ",";
    out += to_string(t.children()[i]);
  }
  return out + ")";
}

namespace detail {

IntTuple parse_int_tuple(Lexer &lex) {
  if (!lex.accept("("))
    return IntTuple(lex.expect_signed_int());
  std::vector<IntTuple> kids;
  do {
    kids.push_back(parse_int_tuple(lex));
  } while (lex.accept(","));
  lex.expect(")");
  if (kids.size() == 1)
    return kids.front();
  return IntTuple(std::move(kids));
}

} // namespace detail

IntTuple parse_int_tuple(std::string_view text) {
  detail::Lexer lex(text);
  IntTuple t = detail::parse_int_tuple(lex);
  lex.expect_end();
  return t;
}

} // namespace layrel
