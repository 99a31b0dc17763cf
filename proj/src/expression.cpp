#include "thom/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "thom/errors.hpp"

namespace thom {

struct Expr::Node {
  Kind kind = Kind::Num;
  mpq_class value = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

}  // namespace

Expr::Expr() : node_(std::make_shared<const Node>()) {}

Expr Expr::make(Kind k, const Expr& a, const Expr& b, const mpq_class& v) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->value = v;
  n->a = a.node_;
  n->b = b.node_;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::t() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::number(const mpq_class& q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Num;
  n->value = q;
  n->value.canonicalize();
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const mpq_class& Expr::value() const { return node_->value; }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }
bool Expr::is_zero() const { return kind() == Kind::Num && value() == 0; }

Expr Expr::add(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return number(a.value() + b.value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return make(Kind::Add, a, b, 0);
}

Expr Expr::sub(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return number(a.value() - b.value());
  if (b.is_zero()) return a;
  if (a.is_zero()) return neg(b);
  return make(Kind::Sub, a, b, 0);
}

Expr Expr::mul(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return number(a.value() * b.value());
  if (a.is_zero() || b.is_zero()) return number(0);
  if (a.is_number() && a.value() == 1) return b;
  if (b.is_number() && b.value() == 1) return a;
  return make(Kind::Mul, a, b, 0);
}

Expr Expr::div(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError("division by the constant 0");
  if (a.is_number() && b.is_number()) return number(a.value() / b.value());
  if (a.is_zero()) return number(0);
  if (b.is_number() && b.value() == 1) return a;
  return make(Kind::Div, a, b, 0);
}

Expr Expr::neg(const Expr& a) {
  if (a.is_number()) return number(-a.value());
  if (a.kind() == Kind::Neg) return a.lhs();
  return make(Kind::Neg, a, Expr(), 0);
}

Expr Expr::pow(const Expr& a, const mpq_class& q) {
  if (q == 0) return number(1);
  if (q == 1) return a;
  if (a.is_number() && is_integer(q)) {
    const long e = q.get_num().get_si();
    if (a.value() == 0 && e < 0) throw DomainError("0 raised to a negative power");
    mpq_class r = 1;
    for (long k = 0; k < std::labs(e); ++k) r *= a.value();
    if (e < 0) r = 1 / r;
    return number(r);
  }
  return make(Kind::Pow, a, Expr(), q);
}

Expr Expr::exp(const Expr& a) {
  if (a.is_zero()) return number(1);
  return make(Kind::Exp, a, Expr(), 0);
}

Expr Expr::ln(const Expr& a) {
  if (a.is_number() && a.value() == 1) return number(0);
  if (a.is_number() && a.value() <= 0) throw DomainError("ln of a non-positive constant");
  return make(Kind::Ln, a, Expr(), 0);
}

Expr Expr::derive() const {
  switch (kind()) {
    case Kind::Var:
      return number(1);
    case Kind::Num:
      return number(0);
    case Kind::Add:
      return add(lhs().derive(), rhs().derive());
    case Kind::Sub:
      return sub(lhs().derive(), rhs().derive());
    case Kind::Mul:
      return add(mul(lhs().derive(), rhs()), mul(lhs(), rhs().derive()));
    case Kind::Div:
      return div(sub(mul(lhs().derive(), rhs()), mul(lhs(), rhs().derive())), pow(rhs(), 2));
    case Kind::Neg:
      return neg(lhs().derive());
    case Kind::Pow:
      return mul(mul(number(value()), pow(lhs(), value() - 1)), lhs().derive());
    case Kind::Exp:
      return mul(*this, lhs().derive());
    case Kind::Ln:
      return div(lhs().derive(), lhs());
  }
  return number(0);
}

double Expr::eval(double t) const {
  switch (kind()) {
    case Kind::Var:
      return t;
    case Kind::Num:
      return value().get_d();
    case Kind::Add:
      return lhs().eval(t) + rhs().eval(t);
    case Kind::Sub:
      return lhs().eval(t) - rhs().eval(t);
    case Kind::Mul:
      return lhs().eval(t) * rhs().eval(t);
    case Kind::Div: {
      const double d = rhs().eval(t);
      if (std::fabs(d) < 1e-300) throw DomainError("division by ~0 in " + str());
      return lhs().eval(t) / d;
    }
    case Kind::Neg:
      return -lhs().eval(t);
    case Kind::Pow: {
      const double b = lhs().eval(t);
      if (b < 0 && !is_integer(value())) throw DomainError("fractional power of a negative value in " + str());
      if (b == 0 && value() < 0) throw DomainError("negative power of 0 in " + str());
      return std::pow(b, value().get_d());
    }
    case Kind::Exp:
      return std::exp(lhs().eval(t));
    case Kind::Ln: {
      const double a = lhs().eval(t);
      if (!(a > 0)) throw DomainError("ln of a non-positive value in " + str());
      return std::log(a);
    }
  }
  return 0;
}

int Expr::precedence() const {
  switch (kind()) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Pow:
      return 4;
    case Kind::Num:
      if (!is_integer(value())) return 2;
      return value() < 0 ? 3 : 5;
    default:
      return 5;
  }
}

namespace {

bool is_negative_lead(const Expr& e) {
  return e.kind() == Expr::Kind::Neg || (e.is_number() && e.value() < 0);
}

std::string exponent_str(const mpq_class& q) {
  if (is_integer(q) && q > 0) return q.get_str();
  return "(" + q.get_str() + ")";
}

}  // namespace

std::string Expr::str_prec(int ctx) const {
  std::string s;
  auto right = [](const Expr& e, int c) {
    return is_negative_lead(e) ? "(" + e.str_prec(0) + ")" : e.str_prec(c);
  };
  switch (kind()) {
    case Kind::Var:
      s = "t";
      break;
    case Kind::Num:
      s = value().get_str();
      break;
    case Kind::Add:
      s = lhs().str_prec(1) + "+" + right(rhs(), 2);
      break;
    case Kind::Sub:
      s = lhs().str_prec(1) + "-" + right(rhs(), 2);
      break;
    case Kind::Mul:
      s = lhs().str_prec(2) + "*" + right(rhs(), 3);
      break;
    case Kind::Div:
      s = lhs().str_prec(2) + "/" + right(rhs(), 3);
      break;
    case Kind::Neg:
      s = "-" + lhs().str_prec(4);
      break;
    case Kind::Pow:
      s = lhs().str_prec(5) + "^" + exponent_str(value());
      break;
    case Kind::Exp:
      s = "exp(" + lhs().str_prec(0) + ")";
      break;
    case Kind::Ln:
      s = "ln(" + lhs().str_prec(0) + ")";
      break;
  }
  return precedence() < ctx ? "(" + s + ")" : s;
}

std::string Expr::str() const { return str_prec(0); }

bool Expr::operator==(const Expr& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind() || value() != o.value()) return false;
  switch (kind()) {
    case Kind::Var:
    case Kind::Num:
      return true;
    case Kind::Neg:
    case Kind::Pow:
    case Kind::Exp:
    case Kind::Ln:
      return lhs() == o.lhs();
    default:
      return lhs() == o.lhs() && rhs() == o.rhs();
  }
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse_all() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  mpq_class number_literal() {
    skip();
    const std::size_t start = pos_;
    mpz_class whole = 0, frac = 0, scale = 1;
    bool digits = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      whole = whole * 10 + (s_[pos_++] - '0');
      digits = true;
    }
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        frac = frac * 10 + (s_[pos_++] - '0');
        scale *= 10;
        digits = true;
      }
    }
    if (!digits) {
      pos_ = start;
      fail("expected a number");
    }
    mpq_class q(whole * scale + frac, scale);
    q.canonicalize();
    return q;
  }

  bool at_end() {
    skip();
    return pos_ == s_.size();
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool keyword(std::string_view kw) {
    skip();
    if (s_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t end = pos_ + kw.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e = Expr::add(e, term());
      else if (accept('-'))
        e = Expr::sub(e, term());
      else
        return e;
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (accept('*')) {
        e = Expr::mul(e, factor());
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Expr d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        e = Expr::div(e, d);
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return Expr::neg(factor());
    Expr b = base();
    if (accept('^')) b = Expr::pow(b, exponent());
    return b;
  }

  mpq_class exponent() {
    if (accept('(')) {
      const bool negative = accept('-');
      mpq_class q = number_literal();
      if (accept('/')) {
        const std::size_t at = pos_;
        mpq_class d = number_literal();
        if (d == 0) throw ParseError("zero denominator in exponent", at);
        q /= d;
      }
      expect(')');
      return negative ? mpq_class(-q) : q;
    }
    const bool negative = accept('-');
    mpq_class q = number_literal();
    return negative ? mpq_class(-q) : q;
  }

  Expr base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::number(number_literal());
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (keyword("exp")) {
      expect('(');
      Expr e = expr();
      expect(')');
      return Expr::exp(e);
    }
    if (keyword("ln")) {
      const std::size_t at = pos_;
      expect('(');
      Expr e = expr();
      expect(')');
      if (e.is_number() && e.value() <= 0) throw ParseError("ln of a non-positive constant", at);
      return Expr::ln(e);
    }
    if (keyword("t")) return Expr::t();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view src) { return Parser(src).parse_all(); }

mpq_class parse_rational(std::string_view src) {
  Parser p(src);
  const bool negative = p.accept('-');
  mpq_class q = p.number_literal();
  if (p.accept('/')) {
    mpq_class d = p.number_literal();
    if (d == 0) p.fail("zero denominator");
    q /= d;
  }
  if (!p.at_end()) p.fail("trailing characters after rational");
  return negative ? mpq_class(-q) : q;
}

}  // namespace thom
