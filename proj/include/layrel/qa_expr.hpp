#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace layrel {

/// Immutable quasi-affine expression over integer variables c0..c{k-1}.
///
/// Nodes are integer constants, variables, sums, products with an integer
/// scalar, floor division by a positive constant and modulo by a positive
/// constant. The factory functions apply a small set of structural
/// normalizations (constant folding, flattening of nested sums, merging of
/// nested scalings) so that printing and re-parsing an expression reaches a
/// fixed point. No algebraic simplification beyond that is attempted.
class QaExpr {
public:
  enum class Kind { Constant, Variable, Sum, Scale, FloorDiv, Mod };

  /// The zero constant.
  QaExpr();

  static QaExpr constant(std::int64_t value);
  static QaExpr variable(std::size_t index);
  static QaExpr sum(std::vector<QaExpr> terms);
  static QaExpr scale(std::int64_t factor, const QaExpr &operand);
  static QaExpr floor_div(const QaExpr &operand, std::int64_t divisor);
  static QaExpr mod(const QaExpr &operand, std::int64_t modulus);

  Kind kind() const noexcept;

  /// Constant value, scale factor, divisor or modulus depending on kind.
  std::int64_t value() const noexcept;
  std::size_t variable_index() const noexcept;
  std::span<const QaExpr> operands() const noexcept;

  bool is_constant() const noexcept { return kind() == Kind::Constant; }

  /// Evaluates at an integer point; throws on overflow or when the point is
  /// too short for a referenced variable.
  std::int64_t evaluate(std::span<const std::int64_t> point) const;

  /// Replaces variable i with `replacements[i]`.
  QaExpr substitute(std::span<const QaExpr> replacements) const;

  /// One past the largest referenced variable index (0 when none).
  std::size_t variable_bound() const noexcept;

  /// Renders with the given variable names, defaulting to c0, c1, ...
  std::string to_string(std::span<const std::string> names = {}) const;

  friend QaExpr operator+(const QaExpr &a, const QaExpr &b);
  friend QaExpr operator-(const QaExpr &a, const QaExpr &b);
  friend QaExpr operator*(std::int64_t k, const QaExpr &e);

private:
  struct Node;
  explicit QaExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Structural equality of normalized trees.
bool structurally_equal(const QaExpr &a, const QaExpr &b);

} // namespace layrel
