#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "crflat/series.hpp"

namespace crflat {

/// Syntax tree of a defining-function expression.
///
/// Grammar: integer literals, the imaginary unit `i`, identifiers, binary
/// `+ - * /`, unary `-`, `^` with a nonnegative integer literal exponent,
/// parentheses. `^` binds tightest, then unary minus, then `* /`, then
/// `+ -`; binary operators associate to the left.
struct ExprAst {
  enum class Kind { Number, ImaginaryUnit, Variable, Neg, Add, Sub, Mul, Div, Pow };

  Kind kind = Kind::Number;
  std::string text;          // digits for Number, identifier for Variable
  int exponent = 0;          // Pow only
  std::size_t position = 0;  // byte offset of the node in the source
  std::vector<ExprAst> children;
};

/// Throws ParseError (with position) on malformed input.
ExprAst parse(std::string_view text);

/// Exact series value of the expression, every leaf taken to `order`.
/// Division goes through invert_unit. Throws Error(UndeclaredVariable) or
/// Error(DivisionByNonUnit).
Series evaluate(const ExprAst& ast, const Context& ctx, int order);

/// parse + evaluate.
Series parse_series(std::string_view text, const Context& ctx, int order);

/// Fully parenthesized rendering; parses back to an equal tree.
std::string to_string(const ExprAst& ast);

}  // namespace crflat
