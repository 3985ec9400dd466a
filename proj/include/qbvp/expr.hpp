#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "qbvp/error.hpp"

namespace qbvp {

/// Malformed expression text. position() is the 0-based offset of the offending character.
class ExprSyntaxError : public Error {
 public:
  ExprSyntaxError(const std::string& message, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation left the real domain (division by zero, log of a non-positive
/// number, sqrt of a negative number, non-finite result).
class ExprDomainError : public Error {
 public:
  ExprDomainError(const std::string& message, std::string subexpression);
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

/// Immutable parsed expression in one real variable `x`.
///
/// Grammar (whitespace is ignored between tokens):
///
///     expr    = term { ("+" | "-") term } ;
///     term    = unary { ("*" | "/") unary } ;
///     unary   = "-" unary | power ;
///     power   = primary [ "^" unary ] ;          (* right-associative *)
///     primary = number | "x" | "pi" | "e"
///             | func "(" expr ")" | "(" expr ")" ;
///     func    = "sin" | "cos" | "sinh" | "cosh" | "exp" | "log" | "sqrt" | "abs" ;
///     number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
///             | "." digits [ ... ] ;
///
/// `^` binds tighter than unary minus, so "-x^2" is -(x^2). There is no
/// implicit multiplication. Copies share the tree; evaluation is reentrant.
class Expr {
 public:
  enum class Kind { constant, variable, negate, add, subtract, multiply, divide, power, call };
  enum class Function { sin, cos, sinh, cosh, exp, log, sqrt, abs };

  struct Node;

  static Expr parse(std::string_view source);

  /// Value at x. Throws ExprDomainError naming the failing sub-expression.
  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  /// Canonical, fully parenthesised form; parse(str()) rebuilds an identical tree.
  std::string str() const;

  const Node& root() const { return *root_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

struct Expr::Node {
  Kind kind = Kind::constant;
  double value = 0.0;         // constant
  std::string name;           // named constant ("pi", "e"), else empty
  Function function = Function::sin;
  std::shared_ptr<const Node> lhs;  // operand of unary nodes and calls
  std::shared_ptr<const Node> rhs;
};

bool operator==(const Expr::Node& a, const Expr::Node& b);

}  // namespace qbvp
