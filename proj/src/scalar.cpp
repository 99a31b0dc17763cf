#include "thom/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "thom/errors.hpp"

namespace thom {

// ---------------------------------------------------------------- Bindings

Bindings::Bindings(std::optional<Expr> phi, std::optional<Expr> sigma, std::optional<double> t0)
    : t0_(t0) {
  if (phi) phi_.push_back(*phi);
  if (sigma) sigma_.push_back(*sigma);
}

const Expr& Bindings::phi(int k) const {
  if (phi_.empty()) throw MissingBinding("phi is not bound");
  while (static_cast<int>(phi_.size()) <= k) phi_.push_back(phi_.back().derive());
  return phi_[k];
}

const Expr& Bindings::sigma(int k) const {
  if (sigma_.empty()) throw MissingBinding("sigma is not bound");
  while (static_cast<int>(sigma_.size()) <= k) sigma_.push_back(sigma_.back().derive());
  return sigma_[k];
}

// ------------------------------------------------------------ atom tables

namespace {

AtomTable merge(const AtomTable& a, const AtomTable& b) {
  if (b.empty()) return a;
  if (a.empty()) return b;
  AtomTable r;
  r.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if ((*i)->ordinal < (*j)->ordinal) {
      r.push_back(*i++);
    } else if ((*j)->ordinal < (*i)->ordinal) {
      r.push_back(*j++);
    } else {
      if ((*i)->key != (*j)->key)
        throw std::logic_error("atom ordinal collision: " + (*i)->key + " / " + (*j)->key);
      r.push_back(*i++);
      ++j;
    }
  }
  r.insert(r.end(), i, a.end());
  r.insert(r.end(), j, b.end());
  return r;
}

const AtomDef* find_atom(const AtomTable& atoms, Ordinal v) {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), v,
                             [](const AtomPtr& a, Ordinal x) { return a->ordinal < x; });
  if (it == atoms.end() || (*it)->ordinal != v) return nullptr;
  return it->get();
}

Ordinal atom_ordinal(const std::string& key) {
  std::uint32_t h = 2166136261u;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 16777619u;
  }
  return var::atom_bit | (h & 0x0FFFFFFFu);
}

AtomPtr imaginary_atom() {
  static const AtomPtr a = [] {
    auto d = std::make_shared<AtomDef>();
    d->kind = AtomDef::Kind::Sqrt;
    d->key = "i";
    d->ordinal = var::i;
    d->square = Poly::constant(-1);
    d->rate = std::make_shared<const RadialScalar>();
    return AtomPtr(d);
  }();
  return a;
}

RadialScalar atom_value(const AtomPtr& a) {
  return RadialScalar::fraction(Poly::variable(a->ordinal), Poly::constant(1), {a});
}

}  // namespace

std::string variable_name(Ordinal v, const AtomTable& atoms) {
  switch (v) {
    case var::t:
      return "t";
    case var::t0:
      return "t0";
    case var::pi:
      return "pi";
    case var::i:
      return "i";
    default:
      break;
  }
  if (v >= var::atom_bit) {
    if (const AtomDef* a = find_atom(atoms, v)) return a->key;
    return "atom#" + std::to_string(v & 0x0FFFFFFFu);
  }
  if (v >= var::s(0)) return "s" + std::to_string(v - var::s(0));
  if (v >= var::c(0)) return "c" + std::to_string(v - var::c(0));
  return "x" + std::to_string(v);
}

// ------------------------------------------------------------ RadialScalar

RadialScalar::RadialScalar(const mpq_class& q) {
  mpq_class r = q;
  r.canonicalize();
  num_ = Poly::constant(r.get_num());
  den_ = Poly::constant(r.get_den());
}

RadialScalar RadialScalar::t() { return fraction(Poly::variable(var::t), Poly::constant(1), {}); }
RadialScalar RadialScalar::t0() { return fraction(Poly::variable(var::t0), Poly::constant(1), {}); }
RadialScalar RadialScalar::pi() { return fraction(Poly::variable(var::pi), Poly::constant(1), {}); }
RadialScalar RadialScalar::i() { return atom_value(imaginary_atom()); }
RadialScalar RadialScalar::c(int k) { return fraction(Poly::variable(var::c(k)), Poly::constant(1), {}); }
RadialScalar RadialScalar::s(int k) { return fraction(Poly::variable(var::s(k)), Poly::constant(1), {}); }

RadialScalar RadialScalar::fraction(Poly num, Poly den, AtomTable atoms) {
  RadialScalar r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.atoms_ = std::move(atoms);
  r.canonicalize();
  return r;
}

void RadialScalar::reduce_roots() {
  for (int pass = 0; pass < 8; ++pass) {
    bool changed = false;
    const AtomTable snapshot = atoms_;
    for (const auto& a : snapshot) {
      if (a->kind != AtomDef::Kind::Sqrt) continue;
      const Ordinal k = a->ordinal;
      const bool in_num = num_.degree(k) >= 2;
      const bool in_den = den_.contains(k);
      if (!in_num && !in_den) continue;
      atoms_ = merge(atoms_, a->square_atoms);
      changed = true;
      if (in_num) num_ = num_.reduce_square(k, a->square);
      if (den_.degree(k) >= 2) den_ = den_.reduce_square(k, a->square);
      if (den_.contains(k)) {
        auto parts = den_.coefficients_in(k);
        const Poly d0 = parts.count(0) ? parts[0] : Poly();
        const Poly d1 = parts[1];
        const Poly conj = d0 - d1.times(Monomial::var(k));
        num_ = (num_ * conj).reduce_square(k, a->square);
        den_ = d0 * d0 - d1 * d1 * a->square;
        if (den_.is_zero()) throw InconsistentNormalization("square-root atom annihilates a denominator");
      }
    }
    if (!changed) return;
  }
}

void RadialScalar::canonicalize() {
  if (den_.is_zero()) throw DomainError("division by zero");
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    atoms_.clear();
    return;
  }
  bool roots = false;
  for (const auto& a : atoms_)
    if (a->kind == AtomDef::Kind::Sqrt) roots = true;
  if (roots) reduce_roots();
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    atoms_.clear();
    return;
  }
  if (!den_.is_one()) {
    const Poly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  if (den_.lead().coef < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (!atoms_.empty()) {
    AtomTable kept;
    for (const auto& a : atoms_)
      if (num_.contains(a->ordinal) || den_.contains(a->ordinal)) kept.push_back(a);
    atoms_ = std::move(kept);
  }
}

RadialScalar RadialScalar::operator+(const RadialScalar& o) const {
  if (o.num_.is_zero()) return *this;
  if (num_.is_zero()) return o;
  RadialScalar r;
  r.atoms_ = merge(atoms_, o.atoms_);
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
  } else if (den_.is_constant() || o.den_.is_constant()) {
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
  } else {
    const Poly g = gcd(den_, o.den_);
    const Poly a = *den_.divide_exact(g);
    const Poly b = *o.den_.divide_exact(g);
    r.num_ = num_ * b + o.num_ * a;
    r.den_ = den_ * b;
  }
  if (r.num_.is_zero()) return RadialScalar();
  if (r.den_.is_one()) {
    r.canonicalize();
    return r;
  }
  // Neither summand has square-root atoms left to reduce after addition.
  const Poly g = gcd(r.num_, r.den_);
  if (!g.is_one()) {
    r.num_ = *r.num_.divide_exact(g);
    r.den_ = *r.den_.divide_exact(g);
  }
  if (r.den_.lead().coef < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  AtomTable kept;
  for (const auto& at : r.atoms_)
    if (r.num_.contains(at->ordinal) || r.den_.contains(at->ordinal)) kept.push_back(at);
  r.atoms_ = std::move(kept);
  return r;
}

RadialScalar RadialScalar::operator-() const {
  RadialScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

RadialScalar RadialScalar::operator-(const RadialScalar& o) const { return *this + (-o); }

RadialScalar RadialScalar::operator*(const RadialScalar& o) const {
  if (num_.is_zero() || o.num_.is_zero()) return RadialScalar();
  if (is_one()) return o;
  if (o.is_one()) return *this;
  RadialScalar r;
  r.atoms_ = merge(atoms_, o.atoms_);
  bool roots = false;
  for (const auto& a : r.atoms_)
    if (a->kind == AtomDef::Kind::Sqrt && num_.contains(a->ordinal) && o.num_.contains(a->ordinal)) roots = true;
  if (roots) {
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.canonicalize();
    return r;
  }
  // Cross cancellation keeps the product reduced.
  Poly an = num_, ad = den_, bn = o.num_, bd = o.den_;
  if (!bd.is_one()) {
    const Poly g = gcd(an, bd);
    if (!g.is_one()) {
      an = *an.divide_exact(g);
      bd = *bd.divide_exact(g);
    }
  }
  if (!ad.is_one()) {
    const Poly g = gcd(bn, ad);
    if (!g.is_one()) {
      bn = *bn.divide_exact(g);
      ad = *ad.divide_exact(g);
    }
  }
  r.num_ = an * bn;
  r.den_ = ad * bd;
  if (r.den_.lead().coef < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  AtomTable kept;
  for (const auto& at : r.atoms_)
    if (r.num_.contains(at->ordinal) || r.den_.contains(at->ordinal)) kept.push_back(at);
  r.atoms_ = std::move(kept);
  return r;
}

RadialScalar RadialScalar::inverse() const {
  if (num_.is_zero()) throw DomainError("inverse of zero");
  return fraction(den_, num_, atoms_);
}

RadialScalar RadialScalar::operator/(const RadialScalar& o) const { return *this * o.inverse(); }

RadialScalar RadialScalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RadialScalar r(1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

RadialScalar RadialScalar::scaled(const mpq_class& q) const { return *this * RadialScalar(q); }

mpq_class RadialScalar::rational_value() const {
  if (!is_rational()) throw std::logic_error("rational_value of a non-constant scalar");
  mpq_class q(num_.constant_value(), den_.constant_value());
  q.canonicalize();
  return q;
}

std::string RadialScalar::str() const {
  auto name = [this](Ordinal v) { return variable_name(v, atoms_); };
  if (den_.is_one()) return num_.to_string(name);
  if (is_rational()) return rational_value().get_str();
  return "(" + num_.to_string(name) + ")/(" + den_.to_string(name) + ")";
}

// -------------------------------------------------------------- evaluation

namespace {

using cplx = std::complex<double>;

cplx variable_value(Ordinal v, double t, const Bindings& b, const AtomTable& atoms) {
  switch (v) {
    case var::t:
      return t;
    case var::t0:
      if (!b.t0()) throw MissingBinding("t0 is not bound");
      return *b.t0();
    case var::pi:
      return std::numbers::pi;
    case var::i:
      return cplx(0, 1);
    default:
      break;
  }
  if (v >= var::atom_bit) {
    const AtomDef* a = find_atom(atoms, v);
    if (!a) throw MissingBinding("unregistered atom");
    switch (a->kind) {
      case AtomDef::Kind::Exp:
        if (!a->arg) return std::exp(b.phi(0).eval(t));
        return std::exp(a->arg->eval_complex(t, b));
      case AtomDef::Kind::Sqrt: {
        RadialScalar sq = RadialScalar::fraction(a->square, Poly::constant(1), a->square_atoms);
        return std::sqrt(sq.eval_complex(t, b));
      }
      case AtomDef::Kind::Log:
        return std::log(a->arg->eval_complex(t, b));
      case AtomDef::Kind::Pow:
        return std::pow(a->arg->eval_complex(t, b), a->q.get_d());
    }
  }
  if (v >= var::s(0)) return b.sigma(static_cast<int>(v - var::s(0))).eval(t);
  if (v >= var::c(0)) return b.phi(static_cast<int>(v - var::c(0)) + 1).eval(t);
  throw MissingBinding("unknown variable");
}

struct PolyValue {
  cplx value;
  double scale;
};

PolyValue eval_poly(const Poly& p, double t, const Bindings& b, const AtomTable& atoms) {
  std::vector<std::pair<Ordinal, cplx>> cache;
  auto value_of = [&](Ordinal v) {
    for (const auto& [k, x] : cache)
      if (k == v) return x;
    const cplx x = variable_value(v, t, b, atoms);
    cache.emplace_back(v, x);
    return x;
  };
  PolyValue r{0.0, 0.0};
  for (const auto& term : p.terms()) {
    cplx x = term.coef.get_d();
    for (const auto& f : term.mono.factors()) x *= std::pow(value_of(f.var), f.exp);
    r.value += x;
    r.scale += std::abs(x);
  }
  return r;
}

}  // namespace

std::pair<std::complex<double>, double> RadialScalar::eval_numerator(double t, const Bindings& b) const {
  const PolyValue v = eval_poly(num_, t, b, atoms_);
  return {v.value, v.scale};
}

std::complex<double> RadialScalar::eval_complex(double t, const Bindings& b) const {
  const PolyValue n = eval_poly(num_, t, b, atoms_);
  const PolyValue d = eval_poly(den_, t, b, atoms_);
  if (std::abs(d.value) < 1e-300) throw DomainError("denominator vanishes at t = " + std::to_string(t));
  return n.value / d.value;
}

double eval(const RadialScalar& f, double t, const Bindings& b) {
  const cplx v = f.eval_complex(t, b);
  if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
    throw MissingBinding("value is not real: " + f.str());
  return v.real();
}

// -------------------------------------------------------------- derivative

namespace {

RadialScalar variable_rate(Ordinal v, const AtomTable& atoms) {
  switch (v) {
    case var::t:
      return RadialScalar(1);
    case var::t0:
    case var::pi:
    case var::i:
      return RadialScalar();
    default:
      break;
  }
  if (v >= var::atom_bit) {
    const AtomDef* a = find_atom(atoms, v);
    if (!a) throw std::logic_error("derivative of an unregistered atom");
    if (a->kind == AtomDef::Kind::Log) return *a->rate;
    for (const auto& p : atoms)
      if (p.get() == a) return *a->rate * atom_value(p);
    throw std::logic_error("atom table inconsistent");
  }
  if (v >= var::s(0)) return RadialScalar::s(static_cast<int>(v - var::s(0)) + 1);
  if (v >= var::c(0)) return RadialScalar::c(static_cast<int>(v - var::c(0)) + 1);
  throw std::logic_error("derivative of an unknown variable");
}

RadialScalar derive_poly(const Poly& p, const AtomTable& atoms) {
  RadialScalar r;
  for (Ordinal v : p.variables()) {
    const RadialScalar rate = variable_rate(v, atoms);
    if (rate.is_zero_symbolic()) continue;
    r += RadialScalar::fraction(p.derivative(v), Poly::constant(1), atoms) * rate;
  }
  return r;
}

}  // namespace

RadialScalar derive(const RadialScalar& f) {
  const RadialScalar dn = derive_poly(f.num_, f.atoms_);
  if (f.den_.is_constant()) return dn / RadialScalar::fraction(f.den_, Poly::constant(1), {});
  const RadialScalar dd = derive_poly(f.den_, f.atoms_);
  const RadialScalar d = RadialScalar::fraction(f.den_, Poly::constant(1), f.atoms_);
  return (dn - f * dd) / d;
}

// ---------------------------------------------------------------- zero test

bool is_zero(const RadialScalar& f) {
  if (f.is_zero_symbolic()) return true;
  const std::string key = f.str();
  std::uint64_t seed = 1469598103934665603ULL;
  for (unsigned char ch : key) seed = (seed ^ ch) * 1099511628211ULL;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  int conclusive = 0;
  for (int sample = 0; sample < 3; ++sample) {
    const double a = unit(rng), bb = unit(rng), c = unit(rng), p = unit(rng), q = unit(rng), r = unit(rng);
    const Expr t = Expr::t();
    const Expr phi = Expr::add(Expr::mul(Expr::number(mpq_class(a)), Expr::ln(Expr::add(Expr::number(1), Expr::mul(Expr::number(mpq_class(bb)), t)))),
                               Expr::mul(Expr::number(mpq_class(c)), t));
    const Expr sigma = Expr::add(Expr::div(Expr::number(mpq_class(p)), Expr::add(Expr::number(1), Expr::mul(Expr::number(mpq_class(q)), t))),
                                 Expr::number(mpq_class(r)));
    const Bindings bind(phi, sigma, 0.5 + 2.5 * unit(rng));
    const double tv = 0.3 + 1.7 * unit(rng);
    try {
      const auto [value, scale] = f.eval_numerator(tv, bind);
      if (!std::isfinite(scale)) continue;
      ++conclusive;
      if (std::abs(value) > 1e-8 * scale) return false;
    } catch (const Error&) {
      continue;
    }
  }
  if (conclusive == 0) return false;
  throw InconsistentNormalization("symbolically nonzero value vanishes numerically: " + key);
}

RadialScalar tilde_sigma(const RadialScalar& sigma) {
  const RadialScalar w = RadialScalar(1) + RadialScalar::t() * sigma;
  if (w.is_zero_symbolic()) throw DegenerateMetric("1 + t sigma vanishes identically");
  return -sigma / w;
}

// -------------------------------------------------------------------- atoms

RadialScalar exp_of(const RadialScalar& arg) {
  if (arg.is_zero_symbolic()) return RadialScalar(1);
  if (arg.num().lead().coef < 0) return exp_of(-arg).inverse();
  auto d = std::make_shared<AtomDef>();
  d->kind = AtomDef::Kind::Exp;
  d->key = "exp(" + arg.str() + ")";
  d->ordinal = atom_ordinal(d->key);
  d->arg = std::make_shared<const RadialScalar>(arg);
  d->rate = std::make_shared<const RadialScalar>(derive(arg));
  return atom_value(d);
}

RadialScalar exp_of_phi() {
  static const AtomPtr a = [] {
    auto d = std::make_shared<AtomDef>();
    d->kind = AtomDef::Kind::Exp;
    d->key = "exp(phi)";
    d->ordinal = atom_ordinal(d->key);
    d->rate = std::make_shared<const RadialScalar>(RadialScalar::c(0));
    return AtomPtr(d);
  }();
  return atom_value(a);
}

RadialScalar sqrt_of(const RadialScalar& base) {
  if (base.is_zero_symbolic()) return RadialScalar();
  Poly p = base.den().is_one() ? base.num() : base.num() * base.den();
  const RadialScalar outer_den = RadialScalar::fraction(base.den(), Poly::constant(1), base.atoms());
  // Pull out square integer content and even powers of the monomial content.
  mpz_class content = p.content();
  bool negative = content < 0;
  if (negative) content = -content;
  p = *p.divide_exact(Poly::constant(content));
  // Only a constant negative square becomes i; otherwise the sign stays inside
  // so that the principal branch agrees with the atom.
  if (negative && !p.is_constant()) negative = false;
  if (negative) p = -p;
  mpz_class root;
  mpz_class rest = content;
  {
    mpz_class f = 1, r = content;
    for (mpz_class k = 2; k * k <= r; ++k) {
      while (r % (k * k) == 0) {
        r /= k * k;
        f *= k;
      }
    }
    root = f;
    rest = r;
  }
  const Monomial mc = p.monomial_content();
  Monomial even, odd;
  for (const auto& f : mc.factors()) {
    if (f.exp / 2) even = even * Monomial::var(f.var, f.exp / 2);
    if (f.exp % 2) odd = odd * Monomial::var(f.var);
  }
  p = p.divide_monomial(even * even);
  p = p.scaled(rest);
  RadialScalar outside = RadialScalar::fraction(Poly::term(even, root), Poly::constant(1), base.atoms());
  if (negative) outside = outside * RadialScalar::i();
  if (p.is_one()) return outside / outer_den;
  auto d = std::make_shared<AtomDef>();
  d->kind = AtomDef::Kind::Sqrt;
  d->square = p;
  d->square_atoms = base.atoms();
  const RadialScalar sq = RadialScalar::fraction(p, Poly::constant(1), base.atoms());
  d->key = "sqrt(" + sq.str() + ")";
  d->ordinal = atom_ordinal(d->key);
  d->rate = std::make_shared<const RadialScalar>(derive(sq) / sq.scaled(2));
  return outside * atom_value(d) / outer_den;
}

RadialScalar log_of(const RadialScalar& arg) {
  if (arg.is_zero_symbolic()) throw DomainError("ln of zero");
  if (arg.is_one()) return RadialScalar();
  auto d = std::make_shared<AtomDef>();
  d->kind = AtomDef::Kind::Log;
  d->key = "ln(" + arg.str() + ")";
  d->ordinal = atom_ordinal(d->key);
  d->arg = std::make_shared<const RadialScalar>(arg);
  d->rate = std::make_shared<const RadialScalar>(derive(arg) / arg);
  return atom_value(d);
}

RadialScalar power_of(const RadialScalar& base, const mpq_class& q) {
  if (q.get_den() == 1) return base.pow(static_cast<int>(q.get_num().get_si()));
  if (q.get_den() == 2) {
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return sqrt_of(base) * base.pow(static_cast<int>(k.get_si()));
  }
  if (base.is_one()) return RadialScalar(1);
  auto d = std::make_shared<AtomDef>();
  d->kind = AtomDef::Kind::Pow;
  d->key = "pow(" + base.str() + "," + q.get_str() + ")";
  d->ordinal = atom_ordinal(d->key);
  d->arg = std::make_shared<const RadialScalar>(base);
  d->q = q;
  d->rate = std::make_shared<const RadialScalar>(derive(base) / base * RadialScalar(q));
  return atom_value(d);
}

// ------------------------------------------------------ expression lowering

RadialScalar to_scalar(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Var:
      return RadialScalar::t();
    case K::Num:
      return RadialScalar(e.value());
    case K::Add:
      return to_scalar(e.lhs()) + to_scalar(e.rhs());
    case K::Sub:
      return to_scalar(e.lhs()) - to_scalar(e.rhs());
    case K::Mul:
      return to_scalar(e.lhs()) * to_scalar(e.rhs());
    case K::Div: {
      const RadialScalar d = to_scalar(e.rhs());
      if (d.is_zero_symbolic()) throw DomainError("division by an expression that vanishes identically");
      return to_scalar(e.lhs()) / d;
    }
    case K::Neg:
      return -to_scalar(e.lhs());
    case K::Pow:
      return power_of(to_scalar(e.lhs()), e.value());
    case K::Exp: {
      const Expr a = e.lhs();
      switch (a.kind()) {
        case K::Ln:
          return to_scalar(a.lhs());
        case K::Add:
          return to_scalar(Expr::exp(a.lhs())) * to_scalar(Expr::exp(a.rhs()));
        case K::Sub:
          return to_scalar(Expr::exp(a.lhs())) / to_scalar(Expr::exp(a.rhs()));
        case K::Neg:
          return to_scalar(Expr::exp(a.lhs())).inverse();
        case K::Mul:
          if (a.lhs().is_number() && a.rhs().kind() == K::Ln) return power_of(to_scalar(a.rhs().lhs()), a.lhs().value());
          if (a.rhs().is_number() && a.lhs().kind() == K::Ln) return power_of(to_scalar(a.lhs().lhs()), a.rhs().value());
          break;
        default:
          break;
      }
      return exp_of(to_scalar(a));
    }
    case K::Ln: {
      const Expr a = e.lhs();
      if (a.kind() == K::Exp) return to_scalar(a.lhs());
      if (a.kind() == K::Pow) return to_scalar(Expr::ln(a.lhs())).scaled(a.value());
      return log_of(to_scalar(a));
    }
  }
  return RadialScalar();
}

}  // namespace thom
