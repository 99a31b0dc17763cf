#pragma once

// Expression trees for radial profile functions f(t), as written in
// configuration files:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' exponent)?
//   base   := 't' | number | '(' expr ')' | 'exp' '(' expr ')' | 'ln' '(' expr ')'
//   exponent := ['-'] number | '(' ['-'] number ['/' number] ')'
//
// Numbers are exact rationals (integers, decimals). Constant subtrees are
// folded while building, so printing and re-parsing is a fixed point.

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>

namespace thom {

class Expr {
 public:
  enum class Kind { Var, Num, Add, Sub, Mul, Div, Neg, Pow, Exp, Ln };

  Expr();  // the number 0
  static Expr t();
  static Expr number(const mpq_class& q);
  static Expr add(const Expr& a, const Expr& b);
  static Expr sub(const Expr& a, const Expr& b);
  static Expr mul(const Expr& a, const Expr& b);
  static Expr div(const Expr& a, const Expr& b);
  static Expr neg(const Expr& a);
  static Expr pow(const Expr& a, const mpq_class& q);
  static Expr exp(const Expr& a);
  static Expr ln(const Expr& a);

  Kind kind() const;
  /// Number value (Num) or exponent (Pow).
  const mpq_class& value() const;
  Expr lhs() const;
  Expr rhs() const;
  bool is_number() const { return kind() == Kind::Num; }
  bool is_zero() const;

  /// d/dt, symbolic.
  Expr derive() const;
  /// Numeric value at t; throws DomainError outside the natural domain.
  double eval(double t) const;
  /// Canonical text; parse(str()) reproduces an identical tree.
  std::string str() const;

  bool operator==(const Expr& o) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Kind k, const Expr& a, const Expr& b, const mpq_class& v);
  std::string str_prec(int ctx) const;
  int precedence() const;

  std::shared_ptr<const Node> node_;
};

/// Parses the grammar above; throws ParseError carrying the byte offset.
Expr parse_expression(std::string_view src);

/// Parses "p", "-p", "p/q" or a decimal into an exact rational.
mpq_class parse_rational(std::string_view src);

}  // namespace thom
