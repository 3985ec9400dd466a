#include "qbvp/expr.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <utility>

namespace qbvp {

ExprSyntaxError::ExprSyntaxError(const std::string& message, std::size_t position)
    : Error(message + " at position " + std::to_string(position)), position_(position) {}

ExprDomainError::ExprDomainError(const std::string& message, std::string subexpression)
    : Error(message + " in " + subexpression), subexpression_(std::move(subexpression)) {}

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct FunctionName {
  std::string_view name;
  Expr::Function function;
};

constexpr std::array<FunctionName, 8> kFunctions{{
    {"sin", Expr::Function::sin},
    {"cos", Expr::Function::cos},
    {"sinh", Expr::Function::sinh},
    {"cosh", Expr::Function::cosh},
    {"exp", Expr::Function::exp},
    {"log", Expr::Function::log},
    {"sqrt", Expr::Function::sqrt},
    {"abs", Expr::Function::abs},
}};

std::string_view function_name(Expr::Function f) {
  for (const auto& entry : kFunctions)
    if (entry.function == f) return entry.name;
  return "?";
}

NodePtr make_constant(double value, std::string name = {}) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::constant;
  n->value = value;
  n->name = std::move(name);
  return n;
}

NodePtr make_node(Expr::Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == src_.size()) throw ExprSyntaxError("empty expression", pos_);
    auto node = expr();
    skip_space();
    if (pos_ != src_.size()) throw ExprSyntaxError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
    return node;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) lhs = make_node(Expr::Kind::add, lhs, term());
      else if (accept('-')) lhs = make_node(Expr::Kind::subtract, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make_node(Expr::Kind::multiply, lhs, unary());
      else if (accept('/')) lhs = make_node(Expr::Kind::divide, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_node(Expr::Kind::negate, unary());
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make_node(Expr::Kind::power, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ == src_.size()) throw ExprSyntaxError("unexpected end of expression", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!accept(')')) throw ExprSyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ExprSyntaxError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ExprSyntaxError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      // Only an exponent if digits follow; otherwise the 'e' starts a new token.
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto* first = src_.data() + start;
    const auto* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
      throw ExprSyntaxError("malformed number", start);
    return make_constant(value);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view id = src_.substr(start, pos_ - start);
    if (id == "x") return make_node(Expr::Kind::variable, nullptr);
    if (id == "pi") return make_constant(std::numbers::pi, "pi");
    if (id == "e") return make_constant(std::numbers::e, "e");
    for (const auto& entry : kFunctions) {
      if (entry.name != id) continue;
      if (!accept('(')) throw ExprSyntaxError("function '" + std::string(id) + "' expects one argument", pos_);
      auto arg = expr();
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == ',')
        throw ExprSyntaxError("function '" + std::string(id) + "' takes exactly one argument", pos_);
      if (!accept(')')) throw ExprSyntaxError("expected ')'", pos_);
      auto call = std::make_shared<Expr::Node>();
      call->kind = Expr::Kind::call;
      call->function = entry.function;
      call->lhs = std::move(arg);
      return call;
    }
    throw ExprSyntaxError("unknown identifier '" + std::string(id) + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void print(const Expr::Node& n, std::string& out) {
  switch (n.kind) {
    case Expr::Kind::constant: {
      if (!n.name.empty()) {
        out += n.name;
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case Expr::Kind::variable:
      out += 'x';
      return;
    case Expr::Kind::negate:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      return;
    case Expr::Kind::call:
      out += function_name(n.function);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
    default:
      break;
  }
  const char* op = " + ";
  switch (n.kind) {
    case Expr::Kind::subtract: op = " - "; break;
    case Expr::Kind::multiply: op = " * "; break;
    case Expr::Kind::divide: op = " / "; break;
    case Expr::Kind::power: op = " ^ "; break;
    default: break;
  }
  out += '(';
  print(*n.lhs, out);
  out += op;
  print(*n.rhs, out);
  out += ')';
}

std::string to_text(const Expr::Node& n) {
  std::string s;
  print(n, s);
  return s;
}

double checked(const Expr::Node& n, double v) {
  if (!std::isfinite(v)) throw ExprDomainError("non-finite result", to_text(n));
  return v;
}

double evaluate(const Expr::Node& n, double x) {
  switch (n.kind) {
    case Expr::Kind::constant: return n.value;
    case Expr::Kind::variable: return x;
    case Expr::Kind::negate: return -evaluate(*n.lhs, x);
    case Expr::Kind::add: return checked(n, evaluate(*n.lhs, x) + evaluate(*n.rhs, x));
    case Expr::Kind::subtract: return checked(n, evaluate(*n.lhs, x) - evaluate(*n.rhs, x));
    case Expr::Kind::multiply: return checked(n, evaluate(*n.lhs, x) * evaluate(*n.rhs, x));
    case Expr::Kind::divide: {
      const double num = evaluate(*n.lhs, x);
      const double den = evaluate(*n.rhs, x);
      if (den == 0.0) throw ExprDomainError("division by zero", to_text(n));
      return checked(n, num / den);
    }
    case Expr::Kind::power: {
      const double base = evaluate(*n.lhs, x);
      const double exponent = evaluate(*n.rhs, x);
      if (base == 0.0 && exponent < 0.0) throw ExprDomainError("division by zero", to_text(n));
      if (base < 0.0 && exponent != std::trunc(exponent))
        throw ExprDomainError("negative base with non-integer exponent", to_text(n));
      return checked(n, std::pow(base, exponent));
    }
    case Expr::Kind::call: {
      const double a = evaluate(*n.lhs, x);
      switch (n.function) {
        case Expr::Function::sin: return std::sin(a);
        case Expr::Function::cos: return std::cos(a);
        case Expr::Function::sinh: return checked(n, std::sinh(a));
        case Expr::Function::cosh: return checked(n, std::cosh(a));
        case Expr::Function::exp: return checked(n, std::exp(a));
        case Expr::Function::log:
          if (a <= 0.0) throw ExprDomainError("log of non-positive value", to_text(n));
          return std::log(a);
        case Expr::Function::sqrt:
          if (a < 0.0) throw ExprDomainError("sqrt of negative value", to_text(n));
          return std::sqrt(a);
        case Expr::Function::abs: return std::abs(a);
      }
    }
  }
  return 0.0;
}

bool same(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

}  // namespace

bool operator==(const Expr::Node& a, const Expr::Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::constant:
      return a.name == b.name && std::bit_cast<std::uint64_t>(a.value) == std::bit_cast<std::uint64_t>(b.value);
    case Expr::Kind::variable: return true;
    case Expr::Kind::call: return a.function == b.function && same(a.lhs, b.lhs);
    default: return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
  }
}

bool operator==(const Expr& a, const Expr& b) { return *a.root_ == *b.root_; }

Expr Expr::parse(std::string_view source) { return Expr(Parser(source).parse()); }

double Expr::eval(double x) const { return evaluate(*root_, x); }

std::string Expr::str() const { return to_text(*root_); }

}  // namespace qbvp
