#include "thom/superalgebra.hpp"

#include <bit>
#include <stdexcept>

#include "thom/errors.hpp"

namespace thom {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) throw DimensionMismatch("dimension must be in 1.." + std::to_string(kMaxDim));
}

int popcount(unsigned x) { return std::popcount(x); }

/// Bits of `mask` strictly below `k`.
int below(std::uint8_t mask, int k) { return popcount(mask & ((1u << k) - 1u)); }
int above(std::uint8_t mask, int k) { return popcount(mask & ~((2u << k) - 1u) & 0xFFu); }

}  // namespace

// --------------------------------------------------------- PolyCoefficient

PolyCoefficient::PolyCoefficient(int n) : n_(n) { check_dim(n); }

PolyCoefficient::PolyCoefficient(int n, const RadialScalar& c) : n_(n) {
  check_dim(n);
  if (!c.is_zero_symbolic()) terms_.emplace(VMonomial{}, c);
}

PolyCoefficient PolyCoefficient::v(int n, int k) {
  PolyCoefficient p(n);
  VMonomial m{};
  m[k] = 1;
  p.add_term(m, RadialScalar(1));
  return p;
}

bool PolyCoefficient::is_radial() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == VMonomial{});
}

RadialScalar PolyCoefficient::radial_part() const {
  auto it = terms_.find(VMonomial{});
  return it == terms_.end() ? RadialScalar() : it->second;
}

void PolyCoefficient::add_term(const VMonomial& m, const RadialScalar& c) {
  if (c.is_zero_symbolic()) return;
  const int last = n_ - 1;
  if (m[last] >= 2) {
    // v_n^2 = t - sum_{i<n} v_i^2
    VMonomial r = m;
    r[last] -= 2;
    add_term(r, c * RadialScalar::t());
    const RadialScalar mc = -c;
    for (int i = 0; i < last; ++i) {
      VMonomial s = r;
      s[i] += 2;
      add_term(s, mc);
    }
    return;
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero_symbolic()) terms_.erase(it);
  }
}

PolyCoefficient PolyCoefficient::operator+(const PolyCoefficient& o) const {
  PolyCoefficient r = *this;
  r += o;
  return r;
}

PolyCoefficient& PolyCoefficient::operator+=(const PolyCoefficient& o) {
  if (o.n_ != n_) throw DimensionMismatch("coefficient dimensions differ");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolyCoefficient PolyCoefficient::operator-() const {
  PolyCoefficient r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

PolyCoefficient PolyCoefficient::operator-(const PolyCoefficient& o) const { return *this + (-o); }

PolyCoefficient PolyCoefficient::operator*(const PolyCoefficient& o) const {
  if (o.n_ != n_) throw DimensionMismatch("coefficient dimensions differ");
  PolyCoefficient r(n_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      VMonomial m;
      for (int k = 0; k < kMaxDim; ++k) m[k] = static_cast<std::uint8_t>(ma[k] + mb[k]);
      r.add_term(m, ca * cb);
    }
  return r;
}

PolyCoefficient PolyCoefficient::scaled(const RadialScalar& c) const {
  if (c.is_zero_symbolic()) return PolyCoefficient(n_);
  PolyCoefficient r = *this;
  for (auto& [m, x] : r.terms_) x = x * c;
  return r;
}

PolyCoefficient PolyCoefficient::derivative(int k) const {
  PolyCoefficient r(n_);
  for (const auto& [m, c] : terms_) {
    if (m[k] > 0) {
      VMonomial d = m;
      d[k] -= 1;
      r.add_term(d, c.scaled(m[k]));
    }
    const RadialScalar dc = derive(c);
    if (!dc.is_zero_symbolic()) {
      VMonomial u = m;
      u[k] += 1;
      r.add_term(u, dc.scaled(2));
    }
  }
  return r;
}

PolyCoefficient PolyCoefficient::map(const std::function<RadialScalar(const RadialScalar&)>& f) const {
  PolyCoefficient r(n_);
  for (const auto& [m, c] : terms_) r.add_term(m, f(c));
  return r;
}

std::complex<double> PolyCoefficient::eval(const std::vector<double>& v, const Bindings& b) const {
  if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("vector length differs from n");
  double t = 0;
  for (double x : v) t += x * x;
  std::complex<double> s = 0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> x = c.eval_complex(t, b);
    for (int k = 0; k < n_; ++k)
      for (int e = 0; e < m[k]; ++e) x *= v[k];
    s += x;
  }
  return s;
}

namespace {

std::string vmono_str(const VMonomial& m, int n) {
  std::string s;
  for (int k = 0; k < n; ++k) {
    if (!m[k]) continue;
    if (!s.empty()) s += '.';
    s += "v" + std::to_string(k + 1);
    if (m[k] > 1) s += "^" + std::to_string(m[k]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace

std::string PolyCoefficient::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += ';';
    s += vmono_str(m, n_) + ":" + c.str();
  }
  return s;
}

bool is_zero(const PolyCoefficient& x) {
  bool zero = true;
  for (const auto& [m, c] : x.terms())
    if (!is_zero(c)) zero = false;
  return zero;
}

// ------------------------------------------------------------ FormMonomial

int FormMonomial::psi_degree() const { return popcount(psi); }
int FormMonomial::varpi_degree() const { return popcount(varpi); }

int FormMonomial::omega_degree() const {
  int d = 0;
  for (auto e : omega) d += e;
  return d;
}

bool FormMonomial::has_extended() const {
  if (varpi) return true;
  for (auto e : b)
    if (e) return true;
  return false;
}

std::string FormMonomial::str() const {
  std::string s;
  auto add = [&s](const std::string& g) {
    if (!s.empty()) s += '.';
    s += g;
  };
  for (int k = 0; k < kMaxDim; ++k)
    if (psi >> k & 1u) add("psi" + std::to_string(k + 1));
  for (int k = 0; k < kMaxDim; ++k)
    if (varpi >> k & 1u) add("w" + std::to_string(k + 1));
  for (int i = 0; i < kMaxDim; ++i)
    for (int j = i + 1; j < kMaxDim; ++j) {
      const int e = omega[pair_index(i, j)];
      if (!e) continue;
      std::string g = "om" + std::to_string(i + 1) + std::to_string(j + 1);
      if (e > 1) g += "^" + std::to_string(e);
      add(g);
    }
  for (int k = 0; k < kMaxDim; ++k) {
    if (!b[k]) continue;
    std::string g = "b" + std::to_string(k + 1);
    if (b[k] > 1) g += "^" + std::to_string(b[k]);
    add(g);
  }
  return s.empty() ? "1" : s;
}

namespace {

/// a * b in canonical order; returns 0 when an odd generator repeats.
int multiply_monomials(const FormMonomial& a, const FormMonomial& b, FormMonomial& out) {
  if ((a.psi & b.psi) || (a.varpi & b.varpi)) return 0;
  int flips = popcount(a.varpi) * popcount(b.psi);
  for (int j = 0; j < kMaxDim; ++j) {
    if (b.psi >> j & 1u) flips += above(a.psi, j);
    if (b.varpi >> j & 1u) flips += above(a.varpi, j);
  }
  out.psi = a.psi | b.psi;
  out.varpi = a.varpi | b.varpi;
  for (int p = 0; p < kMaxPairs; ++p) out.omega[p] = static_cast<std::uint8_t>(a.omega[p] + b.omega[p]);
  for (int k = 0; k < kMaxDim; ++k) out.b[k] = static_cast<std::uint8_t>(a.b[k] + b.b[k]);
  return flips % 2 ? -1 : 1;
}

/// Sign and pair index for Omega^{km}: Omega^{km} = sign * Omega_pair.
std::pair<int, int> omega_slot(int k, int m) {
  return k < m ? std::pair{1, pair_index(k, m)} : std::pair{-1, pair_index(m, k)};
}

}  // namespace

// -------------------------------------------------------------------- Form

Form::Form(int n) : n_(n) { check_dim(n); }

Form::Form(int n, const PolyCoefficient& c) : n_(n) {
  check_dim(n);
  add_term(FormMonomial{}, c);
}

Form::Form(int n, const RadialScalar& c) : Form(n, PolyCoefficient(n, c)) {}

Form Form::monomial(int n, const FormMonomial& m, const PolyCoefficient& c) {
  Form f(n);
  f.add_term(m, c);
  return f;
}

Form Form::v(int n, int k) { return Form(n, PolyCoefficient::v(n, k)); }

Form Form::psi(int n, int k) {
  FormMonomial m;
  m.psi = static_cast<std::uint8_t>(1u << k);
  return monomial(n, m, PolyCoefficient(n, RadialScalar(1)));
}

Form Form::omega(int n, int i, int j) {
  if (i == j) return Form(n);
  FormMonomial m;
  const auto [sign, p] = omega_slot(i, j);
  m.omega[p] = 1;
  return monomial(n, m, PolyCoefficient(n, RadialScalar(sign)));
}

Form Form::varpi(int n, int k) {
  FormMonomial m;
  m.varpi = static_cast<std::uint8_t>(1u << k);
  return monomial(n, m, PolyCoefficient(n, RadialScalar(1)));
}

Form Form::b(int n, int k) {
  FormMonomial m;
  m.b[k] = 1;
  return monomial(n, m, PolyCoefficient(n, RadialScalar(1)));
}

void Form::add_term(const FormMonomial& m, const PolyCoefficient& c) {
  if (c.is_zero()) return;
  if (c.dim() != n_) throw DimensionMismatch("coefficient dimension differs from form dimension");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Form::is_even() const {
  for (const auto& [m, c] : terms_)
    if (m.is_odd()) return false;
  return true;
}

PolyCoefficient Form::coefficient(const FormMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? PolyCoefficient(n_) : it->second;
}

Form Form::operator+(const Form& o) const {
  Form r = *this;
  r += o;
  return r;
}

Form& Form::operator+=(const Form& o) {
  if (o.n_ != n_) throw DimensionMismatch("form dimensions differ");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form Form::operator-() const {
  Form r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::operator*(const Form& o) const {
  if (o.n_ != n_) throw DimensionMismatch("form dimensions differ");
  Form r(n_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      FormMonomial m;
      const int sign = multiply_monomials(ma, mb, m);
      if (!sign) continue;
      const PolyCoefficient c = ca * cb;
      r.add_term(m, sign > 0 ? c : -c);
    }
  return r;
}

Form Form::scaled(const RadialScalar& c) const {
  if (c.is_zero_symbolic()) return Form(n_);
  Form r = *this;
  for (auto& [m, x] : r.terms_) x = x.scaled(c);
  return r;
}

Form Form::scaled(const PolyCoefficient& c) const {
  Form r(n_);
  for (const auto& [m, x] : terms_) r.add_term(m, x * c);
  return r;
}

Form Form::filter(const std::function<bool(const FormMonomial&)>& keep) const {
  Form r(n_);
  for (const auto& [m, c] : terms_)
    if (keep(m)) r.terms_.emplace(m, c);
  return r;
}

Form Form::map(const std::function<RadialScalar(const RadialScalar&)>& f) const {
  Form r(n_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.map(f));
  return r;
}

std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += '|';
    s += c.str() + "@" + m.str();
  }
  return s;
}

bool is_zero(const Form& x) {
  bool zero = true;
  for (const auto& [m, c] : x.terms())
    if (!is_zero(c)) zero = false;
  return zero;
}

// ---------------------------------------------------------- differentials

namespace {

/// Adds sum_k D_k(c) Psi^k * m.
void coefficient_differential(Form& out, int n, const FormMonomial& m, const PolyCoefficient& c) {
  for (int k = 0; k < n; ++k) {
    if (m.psi >> k & 1u) continue;
    PolyCoefficient dk = c.derivative(k);
    if (dk.is_zero()) continue;
    FormMonomial r = m;
    r.psi |= static_cast<std::uint8_t>(1u << k);
    out.add_term(r, below(m.psi, k) % 2 ? -dk : dk);
  }
}

}  // namespace

Form equivariant_differential(const Form& x) {
  const int n = x.dim();
  Form out(n);
  for (const auto& [m, c] : x.terms()) {
    coefficient_differential(out, n, m, c);
    // s Psi^k = -Omega^{kj} v^j
    for (int k = 0; k < n; ++k) {
      if (!(m.psi >> k & 1u)) continue;
      FormMonomial base = m;
      base.psi &= static_cast<std::uint8_t>(~(1u << k));
      const int lead = below(m.psi, k) % 2 ? -1 : 1;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const auto [sign, p] = omega_slot(k, j);
        FormMonomial r = base;
        r.omega[p] += 1;
        const PolyCoefficient cv = c * PolyCoefficient::v(n, j);
        out.add_term(r, -lead * sign > 0 ? cv : -cv);
      }
    }
    // s varpi_k = b_k
    for (int k = 0; k < n; ++k) {
      if (!(m.varpi >> k & 1u)) continue;
      FormMonomial r = m;
      r.varpi &= static_cast<std::uint8_t>(~(1u << k));
      r.b[k] += 1;
      const int sign = (popcount(m.psi) + below(m.varpi, k)) % 2 ? -1 : 1;
      out.add_term(r, sign > 0 ? c : -c);
    }
    // s b_k = -Omega^{kj} varpi_j
    const int lead = m.is_odd() ? -1 : 1;
    for (int k = 0; k < n; ++k) {
      const int e = m.b[k];
      if (!e) continue;
      for (int j = 0; j < n; ++j) {
        if (j == k || (m.varpi >> j & 1u)) continue;
        const auto [sign, p] = omega_slot(k, j);
        FormMonomial r = m;
        r.b[k] -= 1;
        r.omega[p] += 1;
        r.varpi |= static_cast<std::uint8_t>(1u << j);
        const int move = above(m.varpi, j) % 2 ? -1 : 1;
        out.add_term(r, c.scaled(RadialScalar(-lead * sign * move * e)));
      }
    }
  }
  return out;
}

Form exterior_derivative(const Form& x) {
  const int n = x.dim();
  Form out(n);
  for (const auto& [m, c] : x.terms()) {
    if (m.has_extended()) throw Unsupported("exterior derivative on the extended sector");
    coefficient_differential(out, n, m, c);
  }
  return out;
}

namespace {

/// Even derivation x^k -> sum_j A(k, j) x^j on v, Psi, varpi and b, where
/// A(k, j) is an even form; `omega_rule` optionally maps Omega_pair.
template <class Rule, class OmegaRule>
Form even_derivation(const Form& x, Rule a, OmegaRule omega_rule) {
  const int n = x.dim();
  Form out(n);
  for (const auto& [m, c] : x.terms()) {
    // Coefficient: sum_k D_k(c) A(k, j) v^j.
    for (int k = 0; k < n; ++k) {
      const PolyCoefficient dk = c.derivative(k);
      if (dk.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const Form akj = a(k, j);
        if (akj.is_zero_symbolic()) continue;
        out += akj * Form::monomial(n, m, dk * PolyCoefficient::v(n, j));
      }
    }
    // Odd blocks: swap generator k for j in place.
    auto odd_block = [&](std::uint8_t FormMonomial::*block) {
      const std::uint8_t mask = m.*block;
      for (int k = 0; k < n; ++k) {
        if (!(mask >> k & 1u)) continue;
        const std::uint8_t rest = static_cast<std::uint8_t>(mask & ~(1u << k));
        for (int j = 0; j < n; ++j) {
          if (rest >> j & 1u) continue;
          const Form akj = a(k, j);
          if (akj.is_zero_symbolic()) continue;
          FormMonomial r = m;
          r.*block = static_cast<std::uint8_t>(rest | (1u << j));
          const int sign = (below(mask, k) + below(rest, j)) % 2 ? -1 : 1;
          out += akj * Form::monomial(n, r, sign > 0 ? c : -c);
        }
      }
    };
    odd_block(&FormMonomial::psi);
    odd_block(&FormMonomial::varpi);
    for (int k = 0; k < n; ++k) {
      const int e = m.b[k];
      if (!e) continue;
      for (int j = 0; j < n; ++j) {
        const Form akj = a(k, j);
        if (akj.is_zero_symbolic()) continue;
        FormMonomial r = m;
        r.b[k] -= 1;
        r.b[j] += 1;
        out += akj * Form::monomial(n, r, c.scaled(RadialScalar(e)));
      }
    }
    omega_rule(out, m, c);
  }
  return out;
}

}  // namespace

Form omega_action(const Form& x) {
  const int n = x.dim();
  return even_derivation(
      x, [n](int k, int j) { return Form::omega(n, k, j); },
      [](Form&, const FormMonomial&, const PolyCoefficient&) {});
}

SoNElement::SoNElement(int n_, std::vector<mpq_class> e) : n(n_), entries(std::move(e)) {
  if (static_cast<int>(entries.size()) != n * n) throw DimensionMismatch("so(n) element must be n x n");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (entries[i * n + j] + entries[j * n + i] != 0) throw NotAntisymmetric("so(n) element is not antisymmetric");
}

Form lie_action(const SoNElement& lambda, LieScope scope, const Form& x) {
  const int n = x.dim();
  if (lambda.n != n) throw DimensionMismatch("so(n) element dimension differs from form dimension");
  auto rule = [&](int k, int j) {
    if (lambda(k, j) == 0) return Form(n);
    return Form(n, RadialScalar(lambda(k, j)));
  };
  auto omega_rule = [&](Form& out, const FormMonomial& m, const PolyCoefficient& c) {
    if (scope != LieScope::Full) return;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const int e = m.omega[pair_index(i, j)];
        if (!e) continue;
        FormMonomial rest = m;
        rest.omega[pair_index(i, j)] -= 1;
        // Omega^{ij} -> lambda_{ik} Omega^{kj} - Omega^{ik} lambda_{kj}
        Form image(n);
        for (int k = 0; k < n; ++k) {
          if (lambda(i, k) != 0) image += Form::omega(n, k, j).scaled(RadialScalar(lambda(i, k)));
          if (lambda(k, j) != 0) image -= Form::omega(n, i, k).scaled(RadialScalar(lambda(k, j)));
        }
        out += image * Form::monomial(n, rest, c.scaled(RadialScalar(e)));
      }
  };
  return even_derivation(x, rule, omega_rule);
}

PolyCoefficient top_psi_coefficient(const Form& x) {
  FormMonomial top;
  top.psi = static_cast<std::uint8_t>((1u << x.dim()) - 1u);
  return x.coefficient(top);
}

// ---------------------------------------------------------------- numerics

std::complex<double> GrassmannNumber::at(std::uint8_t mask) const {
  auto it = coef.find(mask);
  return it == coef.end() ? 0.0 : it->second;
}

double GrassmannNumber::max_abs() const {
  double m = 0;
  for (const auto& [k, v] : coef) m = std::max(m, std::abs(v));
  return m;
}

GrassmannNumber GrassmannNumber::operator-(const GrassmannNumber& o) const {
  GrassmannNumber r = *this;
  for (const auto& [k, v] : o.coef) r.coef[k] -= v;
  return r;
}

GrassmannNumber substitute_numeric(const Form& x, const std::vector<double>& v, const std::vector<double>& omega,
                                   const Bindings& b) {
  const int n = x.dim();
  if (static_cast<int>(omega.size()) != n * n) throw DimensionMismatch("Omega must be n x n");
  GrassmannNumber g;
  g.n = n;
  for (const auto& [m, c] : x.terms()) {
    if (m.has_extended()) throw Unsupported("numeric substitution of varpi or b");
    std::complex<double> value = c.eval(v, b);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int e = 0; e < m.omega[pair_index(i, j)]; ++e) value *= omega[i * n + j];
    g.coef[m.psi] += value;
  }
  return g;
}

// -------------------------------------------------------------- FormMatrix

FormMatrix::FormMatrix(int rows, int cols, int n) : rows_(rows), cols_(cols), n_(n), e_(rows * cols, Form(n)) {}

FormMatrix FormMatrix::identity(int size, int n) {
  FormMatrix m(size, size, n);
  for (int i = 0; i < size; ++i) m(i, i) = Form(n, RadialScalar(1));
  return m;
}

FormMatrix FormMatrix::operator+(const FormMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
  FormMatrix r = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
  return r;
}

FormMatrix FormMatrix::operator-(const FormMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
  FormMatrix r = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
  return r;
}

FormMatrix FormMatrix::operator*(const FormMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix shapes do not compose");
  FormMatrix r(rows_, o.cols_, n_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j)
      for (int k = 0; k < cols_; ++k) {
        const Form& a = (*this)(i, k);
        const Form& b = o(k, j);
        if (a.is_zero_symbolic() || b.is_zero_symbolic()) continue;
        r(i, j) += a * b;
      }
  return r;
}

FormMatrix FormMatrix::transpose() const {
  FormMatrix r(cols_, rows_, n_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

FormMatrix FormMatrix::scaled(const RadialScalar& c) const {
  FormMatrix r = *this;
  for (auto& f : r.e_) f = f.scaled(c);
  return r;
}

bool is_zero(const FormMatrix& m) {
  bool zero = true;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) zero = false;
  return zero;
}

}  // namespace thom
