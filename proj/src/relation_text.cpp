#include "layrel/relation_text.hpp"

#include <algorithm>
#include <optional>
#include <vector>

#include <json.hpp>

#include "layrel/checked.hpp"
#include "layrel/error.hpp"
#include "lexer.hpp"

namespace layrel {

using detail::Lexer;

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back("c" + std::to_string(i));
  return names;
}

class ExprParser {
public:
  ExprParser(Lexer &lex, std::span<const std::string> vars)
      : lex_(lex), vars_(vars) {}

  QaExpr parse_sum() {
    std::vector<QaExpr> terms;
    terms.push_back(parse_term());
    while (true) {
      if (lex_.accept("+"))
        terms.push_back(parse_term());
      else if (lex_.accept("-"))
        terms.push_back(QaExpr::scale(-1, parse_term()));
      else
        break;
    }
    return QaExpr::sum(std::move(terms));
  }

private:
  bool starts_factor() const {
    const auto &t = lex_.peek();
    return t.kind == Lexer::Kind::Ident ? t.text != "mod" && t.text != "and"
                                        : lex_.is("(");
  }

  QaExpr parse_term() {
    QaExpr acc = parse_unary();
    while (true) {
      const std::size_t at = lex_.pos();
      if (lex_.accept("*")) {
        acc = multiply(acc, parse_unary(), at);
      } else if (lex_.accept("mod")) {
        acc = QaExpr::mod(acc, positive_literal("modulus"));
      } else if (acc.is_constant() && starts_factor()) {
        acc = multiply(acc, parse_unary(), at);
      } else {
        return acc;
      }
    }
  }

  QaExpr multiply(const QaExpr &a, const QaExpr &b, std::size_t at) {
    if (a.is_constant())
      return QaExpr::scale(a.value(), b);
    if (b.is_constant())
      return QaExpr::scale(b.value(), a);
    throw ParseError("product of two non-constant terms is not quasi-affine",
                     at);
  }

  QaExpr parse_unary() {
    if (lex_.accept("-"))
      return QaExpr::scale(-1, parse_unary());
    return parse_primary();
  }

  QaExpr parse_primary() {
    const auto &t = lex_.peek();
    if (t.kind == Lexer::Kind::Int)
      return QaExpr::constant(lex_.expect_int());
    if (lex_.accept("(")) {
      QaExpr e = parse_sum();
      lex_.expect(")");
      return e;
    }
    if (lex_.accept("floor")) {
      lex_.expect("(");
      QaExpr e = parse_sum();
      lex_.expect("/");
      const std::int64_t d = positive_literal("divisor");
      lex_.expect(")");
      return QaExpr::floor_div(e, d);
    }
    if (t.kind == Lexer::Kind::Ident) {
      auto it = std::find(vars_.begin(), vars_.end(), t.text);
      if (it == vars_.end())
        lex_.fail("unknown variable");
      lex_.next();
      return QaExpr::variable(static_cast<std::size_t>(it - vars_.begin()));
    }
    lex_.fail("expected an expression");
  }

  std::int64_t positive_literal(const char *what) {
    const std::size_t at = lex_.pos();
    const std::int64_t v = lex_.expect_int();
    if (v <= 0)
      throw ParseError(std::string(what) + " must be positive", at);
    return v;
  }

  Lexer &lex_;
  std::span<const std::string> vars_;
};

std::vector<std::int64_t> parse_int_list(Lexer &lex, std::string_view close) {
  std::vector<std::int64_t> values;
  if (lex.accept(close))
    return values;
  do {
    values.push_back(lex.expect_signed_int());
  } while (lex.accept(","));
  lex.expect(close);
  return values;
}

Relation parse_pair_list(Lexer &lex) {
  std::vector<Relation::Pair> pairs;
  std::optional<std::size_t> in_arity, out_arity;
  do {
    const std::size_t at = lex.pos();
    lex.expect("[");
    Point in = parse_int_list(lex, "]");
    lex.expect("->");
    lex.expect("[");
    Point out = parse_int_list(lex, "]");
    if (!in_arity) {
      in_arity = in.size();
      out_arity = out.size();
    } else if (in.size() != *in_arity || out.size() != *out_arity) {
      throw ParseError("pair arity differs from the first pair", at);
    }
    pairs.emplace_back(std::move(in), std::move(out));
  } while (lex.accept(";"));
  lex.expect("}");
  lex.expect_end();
  return Relation::from_pairs(*in_arity, *out_arity, std::move(pairs));
}

Relation parse_set_builder(Lexer &lex) {
  std::vector<std::string> vars;
  lex.expect("[");
  if (!lex.accept("]")) {
    do {
      const std::size_t at = lex.pos();
      std::string name(lex.expect_ident());
      if (std::find(vars.begin(), vars.end(), name) != vars.end())
        throw ParseError("duplicate variable '" + name + "'", at);
      vars.push_back(std::move(name));
    } while (lex.accept(","));
    lex.expect("]");
  }
  lex.expect("->");
  lex.expect("[");
  std::vector<QaExpr> exprs;
  ExprParser ep(lex, vars);
  if (!lex.accept("]")) {
    do {
      exprs.push_back(ep.parse_sum());
    } while (lex.accept(","));
    lex.expect("]");
  }

  std::vector<std::optional<std::pair<std::int64_t, std::int64_t>>> bounds(
      vars.size());
  if (lex.accept(":")) {
    do {
      std::int64_t lo = lex.expect_signed_int();
      if (!lex.accept("<=")) {
        lex.expect("<");
        lo = checked_add(lo, 1);
      }
      std::vector<std::size_t> named;
      do {
        const std::size_t at = lex.pos();
        auto name = lex.expect_ident();
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end())
          throw ParseError("bound on unknown variable", at);
        named.push_back(static_cast<std::size_t>(it - vars.begin()));
      } while (lex.accept(","));
      const bool strict = !lex.accept("<=");
      if (strict)
        lex.expect("<");
      const std::size_t hi_at = lex.pos();
      std::int64_t hi = lex.expect_signed_int();
      if (strict)
        hi = checked_sub(hi, 1);
      for (std::size_t v : named) {
        if (bounds[v])
          throw ParseError("variable '" + vars[v] + "' is bounded twice",
                           hi_at);
        bounds[v] = std::make_pair(lo, hi);
      }
    } while (lex.accept("and"));
  }
  const std::size_t end_at = lex.pos();
  lex.expect("}");
  lex.expect_end();

  std::vector<std::int64_t> extents;
  bool any_empty = false;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (!bounds[v])
      throw ParseError("variable '" + vars[v] + "' is unbounded", end_at);
    const std::int64_t n =
        checked_add(checked_sub(bounds[v]->second, bounds[v]->first), 1);
    any_empty = any_empty || n < 1;
    extents.push_back(std::max<std::int64_t>(n, 1));
  }
  std::vector<Point> points;
  if (!any_empty) {
    for (Point p : box_set(extents)) {
      for (std::size_t v = 0; v < p.size(); ++v)
        p[v] += bounds[v]->first;
      points.push_back(std::move(p));
    }
  }
  return relation_from_exprs(BoundedSet(vars.size(), std::move(points)),
                             std::move(exprs));
}

} // namespace

std::string print_point(const Point &p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i)
      out += ", ";
    out += std::to_string(p[i]);
  }
  return out + "]";
}

std::string print_relation(const Relation &r, Format format) {
  if (format == Format::Json) {
    nlohmann::ordered_json j;
    j["in_arity"] = r.in_arity();
    j["out_arity"] = r.out_arity();
    auto pairs = nlohmann::ordered_json::array();
    for (const auto &[in, out] : r.pairs())
      pairs.push_back({in, out});
    j["pairs"] = std::move(pairs);
    if (r.closed_form()) {
      auto exprs = nlohmann::ordered_json::array();
      for (const auto &e : *r.closed_form())
        exprs.push_back(e.to_string());
      j["expr"] = std::move(exprs);
    } else {
      j["expr"] = nullptr;
    }
    return j.dump();
  }

  const BoundedSet dom = domain(r);
  const auto bounds = box_bounds(dom);
  if (r.closed_form() && (bounds || r.in_arity() == 0) && !r.empty()) {
    const auto names = default_names(r.in_arity());
    std::string out = "{ [";
    for (std::size_t i = 0; i < names.size(); ++i)
      out += (i ? ", " : "") + names[i];
    out += "] -> [";
    const auto &exprs = *r.closed_form();
    for (std::size_t i = 0; i < exprs.size(); ++i)
      out += (i ? ", " : "") + exprs[i].to_string(names);
    out += "]";
    if (r.in_arity() > 0) {
      out += " : ";
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i)
          out += " and ";
        out += std::to_string((*bounds)[i].first) + " <= " + names[i] +
               " <= " + std::to_string((*bounds)[i].second);
      }
    }
    return out + " }";
  }
  if (r.empty())
    return "{ }";
  std::string out = "{ ";
  bool first = true;
  for (const auto &[in, o] : r.pairs()) {
    if (!first)
      out += "; ";
    first = false;
    out += print_point(in) + " -> " + print_point(o);
  }
  return out + " }";
}

Relation parse_relation(std::string_view text) {
  Lexer lex(text);
  lex.expect("{");
  if (lex.is("\""))
    return parse_relation_json(text);
  if (lex.accept("}")) {
    lex.expect_end();
    return Relation(0, 0);
  }
  // Peek past '[' to choose between set-builder and pair-list forms.
  Lexer probe = lex;
  probe.expect("[");
  if (probe.peek().kind == Lexer::Kind::Ident)
    return parse_set_builder(lex);
  if (probe.is("]")) {
    // `[] -> [...]`: constant expressions are valid in both forms; the
    // set-builder reading covers every case the pair list can express
    // for a single zero-arity input.
    Lexer probe2 = lex;
    try {
      return parse_set_builder(probe2);
    } catch (const ParseError &) {
      return parse_pair_list(lex);
    }
  }
  return parse_pair_list(lex);
}

Relation parse_relation_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  try {
    const auto in_arity = j.at("in_arity").get<std::size_t>();
    const auto out_arity = j.at("out_arity").get<std::size_t>();
    std::vector<Relation::Pair> pairs;
    for (const auto &pair : j.at("pairs")) {
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError("each pair must be [[in...],[out...]]", 0);
      pairs.emplace_back(pair[0].get<Point>(), pair[1].get<Point>());
    }
    Relation graph = Relation::from_pairs(in_arity, out_arity, pairs);
    const auto &expr = j.at("expr");
    if (expr.is_null())
      return graph;
    const auto names = default_names(in_arity);
    std::vector<QaExpr> exprs;
    for (const auto &s : expr) {
      const auto str = s.get<std::string>();
      Lexer lex(str);
      exprs.push_back(ExprParser(lex, names).parse_sum());
      lex.expect_end();
    }
    if (exprs.size() != out_arity)
      throw ParseError("expr count differs from out_arity", 0);
    Relation with_form = relation_from_exprs(domain(graph), std::move(exprs));
    if (!(with_form == graph))
      throw ParseError("expr does not reproduce the listed pairs", 0);
    return with_form;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("invalid relation JSON: ") + e.what(), 0);
  }
}

QaExpr parse_qa_expr(std::string_view text,
                     std::span<const std::string> variables) {
  Lexer lex(text);
  QaExpr e = ExprParser(lex, variables).parse_sum();
  lex.expect_end();
  return e;
}

Point parse_point(std::string_view text) {
  Lexer lex(text);
  Point p;
  std::string_view close;
  if (lex.accept("["))
    close = "]";
  else if (lex.accept("("))
    close = ")";
  if (!close.empty()) {
    p = parse_int_list(lex, close);
  } else {
    do {
      p.push_back(lex.expect_signed_int());
    } while (lex.accept(","));
  }
  lex.expect_end();
  return p;
}

} // namespace layrel
