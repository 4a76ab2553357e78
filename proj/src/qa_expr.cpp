#include "layrel/qa_expr.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "layrel/checked.hpp"
#include "layrel/error.hpp"

namespace layrel {

struct QaExpr::Node {
  Kind kind = Kind::Constant;
  std::int64_t value = 0;
  std::size_t var = 0;
  std::vector<QaExpr> operands;
};

QaExpr::QaExpr() : QaExpr(std::make_shared<const Node>()) {}

QaExpr::QaExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

QaExpr QaExpr::constant(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return QaExpr(std::move(n));
}

QaExpr QaExpr::variable(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = index;
  return QaExpr(std::move(n));
}

QaExpr QaExpr::sum(std::vector<QaExpr> terms) {
  std::vector<QaExpr> flat;
  flat.reserve(terms.size());
  std::optional<std::size_t> const_slot;
  std::int64_t const_total = 0;
  for (auto &t : terms) {
    std::vector<QaExpr> pieces;
    if (t.kind() == Kind::Sum)
      pieces.assign(t.operands().begin(), t.operands().end());
    else
      pieces.push_back(t);
    for (auto &p : pieces) {
      if (p.is_constant()) {
        const_total = checked_add(const_total, p.value());
        if (!const_slot) {
          const_slot = flat.size();
          flat.push_back(p);
        }
      } else {
        flat.push_back(p);
      }
    }
  }
  if (const_slot) {
    if (const_total == 0 && flat.size() > 1)
      flat.erase(flat.begin() + static_cast<std::ptrdiff_t>(*const_slot));
    else
      flat[*const_slot] = constant(const_total);
  }
  if (flat.empty())
    return constant(0);
  if (flat.size() == 1)
    return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->operands = std::move(flat);
  return QaExpr(std::move(n));
}

QaExpr QaExpr::scale(std::int64_t factor, const QaExpr &operand) {
  if (factor == 0)
    return constant(0);
  if (factor == 1)
    return operand;
  if (operand.is_constant())
    return constant(checked_mul(factor, operand.value()));
  if (operand.kind() == Kind::Scale)
    return scale(checked_mul(factor, operand.value()), operand.operands()[0]);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->value = factor;
  n->operands = {operand};
  return QaExpr(std::move(n));
}

QaExpr QaExpr::floor_div(const QaExpr &operand, std::int64_t divisor) {
  if (divisor <= 0)
    throw Error(ErrorKind::Construction,
                "floor division requires a positive divisor, got " +
                    std::to_string(divisor));
  if (divisor == 1)
    return operand;
  if (operand.is_constant())
    return constant(layrel::floor_div(operand.value(), divisor));
  auto n = std::make_shared<Node>();
  n->kind = Kind::FloorDiv;
  n->value = divisor;
  n->operands = {operand};
  return QaExpr(std::move(n));
}

QaExpr QaExpr::mod(const QaExpr &operand, std::int64_t modulus) {
  if (modulus <= 0)
    throw Error(ErrorKind::Construction,
                "modulo requires a positive modulus, got " +
                    std::to_string(modulus));
  if (modulus == 1)
    return constant(0);
  if (operand.is_constant())
    return constant(floor_mod(operand.value(), modulus));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mod;
  n->value = modulus;
  n->operands = {operand};
  return QaExpr(std::move(n));
}

QaExpr::Kind QaExpr::kind() const noexcept { return node_->kind; }
std::int64_t QaExpr::value() const noexcept { return node_->value; }
std::size_t QaExpr::variable_index() const noexcept { return node_->var; }
std::span<const QaExpr> QaExpr::operands() const noexcept {
  return node_->operands;
}

std::int64_t QaExpr::evaluate(std::span<const std::int64_t> point) const {
  switch (kind()) {
  case Kind::Constant:
    return value();
  case Kind::Variable:
    if (variable_index() >= point.size())
      throw Error(ErrorKind::Construction,
                  "variable c" + std::to_string(variable_index()) +
                      " is out of range for a point of arity " +
                      std::to_string(point.size()));
    return point[variable_index()];
  case Kind::Sum: {
    std::int64_t acc = 0;
    for (const auto &t : operands())
      acc = checked_add(acc, t.evaluate(point));
    return acc;
  }
  case Kind::Scale:
    return checked_mul(value(), operands()[0].evaluate(point));
  case Kind::FloorDiv:
    return layrel::floor_div(operands()[0].evaluate(point), value());
  case Kind::Mod:
    return floor_mod(operands()[0].evaluate(point), value());
  }
  return 0;
}

QaExpr QaExpr::substitute(std::span<const QaExpr> replacements) const {
  switch (kind()) {
  case Kind::Constant:
    return *this;
  case Kind::Variable:
    if (variable_index() >= replacements.size())
      throw Error(ErrorKind::Construction,
                  "no replacement for variable c" +
                      std::to_string(variable_index()));
    return replacements[variable_index()];
  case Kind::Sum: {
    std::vector<QaExpr> terms;
    terms.reserve(operands().size());
    for (const auto &t : operands())
      terms.push_back(t.substitute(replacements));
    return sum(std::move(terms));
  }
  case Kind::Scale:
    return scale(value(), operands()[0].substitute(replacements));
  case Kind::FloorDiv:
    return floor_div(operands()[0].substitute(replacements), value());
  case Kind::Mod:
    return mod(operands()[0].substitute(replacements), value());
  }
  return *this;
}

std::size_t QaExpr::variable_bound() const noexcept {
  if (kind() == Kind::Variable)
    return variable_index() + 1;
  std::size_t bound = 0;
  for (const auto &op : operands())
    bound = std::max(bound, op.variable_bound());
  return bound;
}

namespace {

std::string var_name(std::size_t i, std::span<const std::string> names) {
  if (i < names.size())
    return names[i];
  return "c" + std::to_string(i);
}

std::string render(const QaExpr &e, std::span<const std::string> names);

// Operand of a product or of unary minus: sums and modulos need parentheses
// because `mod` binds like `*`.
std::string render_atom(const QaExpr &e, std::span<const std::string> names) {
  if (e.kind() == QaExpr::Kind::Sum || e.kind() == QaExpr::Kind::Mod)
    return "(" + render(e, names) + ")";
  return render(e, names);
}

std::string render_scaled(std::int64_t k, const QaExpr &e,
                          std::span<const std::string> names) {
  if (k == 1)
    return render_atom(e, names);
  if (k == -1)
    return "-" + render_atom(e, names);
  return std::to_string(k) + "*" + render_atom(e, names);
}

std::string render(const QaExpr &e, std::span<const std::string> names) {
  using Kind = QaExpr::Kind;
  switch (e.kind()) {
  case Kind::Constant:
    return std::to_string(e.value());
  case Kind::Variable:
    return var_name(e.variable_index(), names);
  case Kind::Scale:
    return render_scaled(e.value(), e.operands()[0], names);
  case Kind::FloorDiv: {
    const auto &num = e.operands()[0];
    const std::string body = num.kind() == Kind::Sum
                                 ? "(" + render(num, names) + ")"
                                 : render(num, names);
    return "floor(" + body + "/" + std::to_string(e.value()) + ")";
  }
  case Kind::Mod: {
    const auto &arg = e.operands()[0];
    const bool bare = arg.kind() == Kind::Variable ||
                      arg.kind() == Kind::FloorDiv ||
                      arg.kind() == Kind::Constant;
    const std::string body =
        bare ? render(arg, names) : "(" + render(arg, names) + ")";
    return body + " mod " + std::to_string(e.value());
  }
  case Kind::Sum: {
    std::string out;
    bool first = true;
    for (const auto &t : e.operands()) {
      if (first) {
        out += render(t, names);
        first = false;
        continue;
      }
      if (t.kind() == Kind::Scale && t.value() < 0) {
        out += " - " + render_scaled(-t.value(), t.operands()[0], names);
      } else if (t.kind() == Kind::Constant && t.value() < 0) {
        out += " - " + std::to_string(-t.value());
      } else {
        out += " + " + render(t, names);
      }
    }
    return out;
  }
  }
  return {};
}

} // namespace

std::string QaExpr::to_string(std::span<const std::string> names) const {
  return render(*this, names);
}

QaExpr operator+(const QaExpr &a, const QaExpr &b) {
  return QaExpr::sum({a, b});
}

QaExpr operator-(const QaExpr &a, const QaExpr &b) {
  return QaExpr::sum({a, QaExpr::scale(-1, b)});
}

QaExpr operator*(std::int64_t k, const QaExpr &e) { return QaExpr::scale(k, e); }

bool structurally_equal(const QaExpr &a, const QaExpr &b) {
  if (a.kind() != b.kind())
    return false;
  if (a.kind() == QaExpr::Kind::Variable)
    return a.variable_index() == b.variable_index();
  if (a.value() != b.value() || a.operands().size() != b.operands().size())
    return false;
  for (std::size_t i = 0; i < a.operands().size(); ++i)
    if (!structurally_equal(a.operands()[i], b.operands()[i]))
      return false;
  return true;
}

} // namespace layrel
