#include "thom/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace thom {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(Ordinal v, std::int32_t e) {
  Monomial m;
  if (e != 0) m.f_.push_back({v, e});
  return m;
}

std::int32_t Monomial::exponent(Ordinal v) const {
  for (const auto& f : f_) {
    if (f.var == v) return f.exp;
    if (f.var < v) break;
  }
  return 0;
}

std::int32_t Monomial::total_degree() const {
  std::int32_t d = 0;
  for (const auto& f : f_) d += f.exp;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto i = f_.begin();
  auto j = o.f_.begin();
  while (i != f_.end() && j != o.f_.end()) {
    if (i->var > j->var) {
      r.f_.push_back(*i++);
    } else if (i->var < j->var) {
      r.f_.push_back(*j++);
    } else {
      const std::int32_t e = i->exp + j->exp;
      if (e != 0) r.f_.push_back({i->var, e});
      ++i;
      ++j;
    }
  }
  r.f_.insert(r.f_.end(), i, f_.end());
  r.f_.insert(r.f_.end(), j, o.f_.end());
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& d) const {
  Monomial r;
  auto i = f_.begin();
  auto j = d.f_.begin();
  while (j != d.f_.end()) {
    if (i == f_.end() || i->var < j->var) return std::nullopt;
    if (i->var > j->var) {
      r.f_.push_back(*i++);
      continue;
    }
    const std::int32_t e = i->exp - j->exp;
    if (e < 0) return std::nullopt;
    if (e > 0) r.f_.push_back({i->var, e});
    ++i;
    ++j;
  }
  r.f_.insert(r.f_.end(), i, f_.end());
  return r;
}

Monomial Monomial::without(Ordinal v) const {
  Monomial r;
  for (const auto& f : f_)
    if (f.var != v) r.f_.push_back(f);
  return r;
}

Monomial Monomial::with_exponent(Ordinal v, std::int32_t e) const {
  return without(v) * Monomial::var(v, e);
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto i = a.f_.begin();
  auto j = b.f_.begin();
  while (i != a.f_.end() && j != b.f_.end()) {
    if (i->var > j->var) {
      ++i;
    } else if (i->var < j->var) {
      ++j;
    } else {
      r.f_.push_back({i->var, std::min(i->exp, j->exp)});
      ++i;
      ++j;
    }
  }
  return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  const std::size_t na = a.f_.size(), nb = b.f_.size();
  for (std::size_t k = 0;; ++k) {
    if (k == na && k == nb) return 0;
    if (k == na) return -1;
    if (k == nb) return 1;
    const auto& x = a.f_[k];
    const auto& y = b.f_[k];
    if (x.var != y.var) return x.var > y.var ? 1 : -1;
    if (x.exp != y.exp) return x.exp > y.exp ? 1 : -1;
  }
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& f : f_) {
    h = (h ^ f.var) * 1099511628211ULL;
    h = (h ^ static_cast<std::uint32_t>(f.exp)) * 1099511628211ULL;
  }
  return h;
}

// -------------------------------------------------------------------- Poly

namespace {

bool term_greater(const Poly::Term& a, const Poly::Term& b) {
  return Monomial::compare(a.mono, b.mono) > 0;
}

}  // namespace

Poly Poly::constant(const mpz_class& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({Monomial(), c});
  return p;
}

Poly Poly::variable(Ordinal v, std::int32_t e) {
  Poly p;
  p.terms_.push_back({Monomial::var(v, e), 1});
  return p;
}

Poly Poly::term(const Monomial& m, const mpz_class& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1;
}

mpz_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_[0].mono.is_one() ? terms_[0].coef : mpz_class(0);
}

Poly Poly::operator+(const Poly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    const int c = Monomial::compare(i->mono, j->mono);
    if (c > 0) {
      r.terms_.push_back(*i++);
    } else if (c < 0) {
      r.terms_.push_back(*j++);
    } else {
      mpz_class s = i->coef + j->coef;
      if (s != 0) r.terms_.push_back({i->mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, terms_.end());
  r.terms_.insert(r.terms_.end(), j, o.terms_.end());
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (is_constant()) return o.scaled(terms_[0].coef);
  if (o.is_constant()) return scaled(o.terms_[0].coef);
  if (o.terms_.size() == 1) {
    Poly r = times(o.terms_[0].mono);
    return r.scaled(o.terms_[0].coef);
  }
  if (terms_.size() == 1) return o * *this;
  std::vector<Term> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc.push_back({a.mono * b.mono, a.coef * b.coef});
  return from_terms(std::move(acc));
}

Poly Poly::scaled(const mpz_class& c) const {
  if (c == 0) return {};
  Poly r = *this;
  if (c != 1)
    for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Poly Poly::times(const Monomial& m) const {
  if (m.is_one()) return *this;
  Poly r = *this;
  // Multiplication by a monomial preserves the term order.
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r = Poly::constant(1);
  Poly b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if (terms_[k].coef != o.terms_[k].coef || !(terms_[k].mono == o.terms_[k].mono)) return false;
  return true;
}

std::int32_t Poly::degree(Ordinal v) const {
  std::int32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

std::vector<Ordinal> Poly::variables() const {
  std::vector<Ordinal> vs;
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors()) vs.push_back(f.var);
  std::sort(vs.begin(), vs.end(), std::greater<>());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

mpz_class Poly::content() const {
  if (terms_.empty()) return 0;
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  if (terms_.front().coef < 0) g = -g;
  return g;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.front().mono;
  for (const auto& t : terms_) {
    if (g.is_one()) break;
    g = Monomial::gcd(g, t.mono);
  }
  return g;
}

std::map<std::int32_t, Poly> Poly::coefficients_in(Ordinal v) const {
  std::map<std::int32_t, std::vector<Term>> parts;
  for (const auto& t : terms_) {
    const std::int32_t e = t.mono.exponent(v);
    parts[e].push_back({e ? t.mono.without(v) : t.mono, t.coef});
  }
  std::map<std::int32_t, Poly> out;
  for (auto& [e, ts] : parts) out.emplace(e, Poly::from_terms(std::move(ts)));
  return out;
}

Poly Poly::leading_coefficient_in(Ordinal v) const {
  const std::int32_t d = degree(v);
  std::vector<Term> ts;
  for (const auto& t : terms_)
    if (t.mono.exponent(v) == d) ts.push_back({t.mono.without(v), t.coef});
  return from_terms(std::move(ts));
}

Poly Poly::derivative(Ordinal v) const {
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    const std::int32_t e = t.mono.exponent(v);
    if (e == 0) continue;
    ts.push_back({t.mono.with_exponent(v, e - 1), t.coef * e});
  }
  return from_terms(std::move(ts));
}

Poly Poly::reduce_square(Ordinal v, const Poly& square) const {
  if (degree(v) < 2) return *this;
  std::vector<Term> keep;
  Poly extra;
  for (const auto& t : terms_) {
    const std::int32_t e = t.mono.exponent(v);
    if (e < 2) {
      keep.push_back(t);
      continue;
    }
    Poly part = Poly::term(t.mono.with_exponent(v, e % 2), t.coef);
    extra = extra + part * square.pow(static_cast<unsigned>(e / 2));
  }
  Poly r = from_terms(std::move(keep)) + extra;
  // `square` may itself reintroduce v only if it contains v, which callers exclude.
  return r;
}

Poly Poly::divide_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) {
    auto q = t.mono.divide(m);
    if (!q) throw std::logic_error("divide_monomial: not divisible");
    t.mono = *q;
  }
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return Poly();
  if (d.is_constant()) {
    const mpz_class& c = d.terms_[0].coef;
    Poly r = *this;
    for (auto& t : r.terms_) {
      if (!mpz_divisible_p(t.coef.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
      mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
    }
    return r;
  }
  for (Ordinal v : d.variables())
    if (degree(v) < d.degree(v)) return std::nullopt;
  if (d.terms_.size() == 1) {
    Poly r = *this;
    const auto& dt = d.terms_[0];
    for (auto& t : r.terms_) {
      auto q = t.mono.divide(dt.mono);
      if (!q || !mpz_divisible_p(t.coef.get_mpz_t(), dt.coef.get_mpz_t())) return std::nullopt;
      t.mono = *q;
      mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), dt.coef.get_mpz_t());
    }
    return r;
  }
  std::vector<Term> quot;
  Poly rem = *this;
  const Term& dl = d.lead();
  while (!rem.is_zero()) {
    const Term& rl = rem.lead();
    auto qm = rl.mono.divide(dl.mono);
    if (!qm || !mpz_divisible_p(rl.coef.get_mpz_t(), dl.coef.get_mpz_t())) return std::nullopt;
    mpz_class qc;
    mpz_divexact(qc.get_mpz_t(), rl.coef.get_mpz_t(), dl.coef.get_mpz_t());
    quot.push_back({*qm, qc});
    rem = rem - d.times(*qm).scaled(qc);
  }
  return from_terms(std::move(quot));
}

std::string Poly::to_string(const NameFn& name) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    mpz_class c = t.coef;
    if (c < 0) {
      s += '-';
      c = -c;
    } else if (!first) {
      s += '+';
    }
    first = false;
    const bool unit = (c == 1);
    if (!unit || t.mono.is_one()) s += c.get_str();
    bool need_star = !unit;
    for (const auto& f : t.mono.factors()) {
      if (need_star) s += '*';
      s += name(f.var);
      if (f.exp != 1) s += "^" + std::to_string(f.exp);
      need_star = true;
    }
  }
  return s;
}

std::size_t Poly::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& t : terms_) {
    h = (h ^ t.mono.hash()) * 1099511628211ULL;
    h = (h ^ static_cast<std::size_t>(mpz_get_si(t.coef.get_mpz_t()))) * 1099511628211ULL;
  }
  return h;
}

// --------------------------------------------------------------------- gcd

namespace {

Poly positive(Poly p) {
  if (!p.is_zero() && p.lead().coef < 0) return -p;
  return p;
}

Poly gcd_rec(const Poly& a, const Poly& b);

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
Poly content_in(const Poly& p, Ordinal v) {
  auto cs = p.coefficients_in(v);
  Poly g;
  // Start from the smallest coefficient; it bounds the gcd.
  std::vector<const Poly*> order;
  for (const auto& [e, c] : cs) order.push_back(&c);
  std::sort(order.begin(), order.end(),
            [](const Poly* x, const Poly* y) { return x->terms().size() < y->terms().size(); });
  for (const Poly* c : order) {
    g = gcd_rec(g, *c);
    if (g.is_one()) break;
  }
  return g;
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw std::logic_error("gcd: inexact division");
  return *q;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, Ordinal x) {
  const std::int32_t db = b.degree(x);
  const Poly lb = b.leading_coefficient_in(x);
  Poly r = a;
  while (!r.is_zero()) {
    const std::int32_t dr = r.degree(x);
    if (dr < db) break;
    const Poly lr = r.leading_coefficient_in(x);
    r = r * lb - (lr * b).times(Monomial::var(x, dr - db));
  }
  return r;
}

Poly primitive_in(const Poly& p, Ordinal x) {
  const Poly c = content_in(p, x);
  return positive(exact(p, c));
}

Poly gcd_rec(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) return positive(b0);
  if (b0.is_zero()) return positive(a0);
  if (a0.is_constant() || b0.is_constant()) {
    mpz_class g;
    const mpz_class ca = a0.content(), cb = b0.content();
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return Poly::constant(g);
  }
  if (a0 == b0 || a0 == -b0) return positive(a0);

  const Monomial mg = Monomial::gcd(a0.monomial_content(), b0.monomial_content());
  Poly a = a0.divide_monomial(a0.monomial_content());
  Poly b = b0.divide_monomial(b0.monomial_content());

  // Variables present in only one argument can be removed by taking content.
  for (int pass = 0; pass < 2; ++pass) {
    const auto va = a.variables();
    const auto vb = b.variables();
    bool changed = false;
    for (Ordinal v : va)
      if (!std::binary_search(vb.begin(), vb.end(), v, std::greater<>())) {
        a = content_in(a, v);
        changed = true;
        break;
      }
    for (Ordinal v : vb)
      if (!std::binary_search(va.begin(), va.end(), v, std::greater<>())) {
        b = content_in(b, v);
        changed = true;
        break;
      }
    if (changed) return positive(gcd_rec(a, b).times(mg));
  }
  if (a.is_constant() || b.is_constant()) return positive(gcd_rec(a, b).times(mg));

  if (a.terms().size() <= b.terms().size()) {
    if (auto q = b.divide_exact(a)) return positive(a.times(mg));
  } else {
    if (auto q = a.divide_exact(b)) return positive(b.times(mg));
  }

  // Main variable: the common one of smallest degree keeps the PRS short.
  const auto vars = a.variables();
  Ordinal x = vars.front();
  std::int32_t best = 1 << 30;
  for (Ordinal v : vars) {
    const std::int32_t d = std::max(a.degree(v), b.degree(v));
    if (d < best) {
      best = d;
      x = v;
    }
  }
  const Poly ca = content_in(a, x);
  const Poly cb = content_in(b, x);
  const Poly c = gcd_rec(ca, cb);
  Poly p = exact(a, ca);
  Poly q = exact(b, cb);
  if (p.degree(x) < q.degree(x)) std::swap(p, q);
  Poly g;
  for (;;) {
    Poly r = pseudo_remainder(p, q, x);
    if (r.is_zero()) {
      g = primitive_in(q, x);
      break;
    }
    if (r.degree(x) == 0) {
      g = Poly::constant(1);
      break;
    }
    p = std::move(q);
    q = primitive_in(r, x);
  }
  return positive((c * g).times(mg));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_rec(a, b); }

}  // namespace thom
