#pragma once

// Exact radial scalars: rational functions over Z in t, the constant t0, the
// symbol pi, the derivative towers c_k = phi^(k+1) and s_k = sigma^(k), and
// registered transcendental atoms (exponentials, square roots, logarithms,
// rational powers).
//
// A value N/D is canonical when gcd(N, D) = 1, the leading coefficient of D
// is positive, every square-root atom occurs in N at most linearly and not at
// all in D. Atoms are treated as algebraically independent; `is_zero` checks
// that assumption numerically.

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thom/expression.hpp"
#include "thom/poly.hpp"

namespace thom {

namespace var {
inline constexpr Ordinal t = 1;
inline constexpr Ordinal t0 = 2;
inline constexpr Ordinal pi = 3;
inline constexpr Ordinal i = 4;
/// c_k: (k+1)-th derivative of phi.
inline constexpr Ordinal c(int k) { return 16 + static_cast<Ordinal>(k); }
/// s_k: k-th derivative of sigma.
inline constexpr Ordinal s(int k) { return 48 + static_cast<Ordinal>(k); }
inline constexpr Ordinal atom_bit = 0x10000000u;
}  // namespace var

class RadialScalar;
struct AtomDef;
using AtomPtr = std::shared_ptr<const AtomDef>;
/// Sorted by ordinal.
using AtomTable = std::vector<AtomPtr>;

/// Numeric interpretation of phi, sigma and t0.
class Bindings {
 public:
  Bindings() = default;
  Bindings(std::optional<Expr> phi, std::optional<Expr> sigma, std::optional<double> t0);

  bool has_phi() const { return !phi_.empty(); }
  bool has_sigma() const { return !sigma_.empty(); }
  const std::optional<double>& t0() const { return t0_; }
  /// k-th derivative of phi (k = 0 is phi itself).
  const Expr& phi(int k) const;
  const Expr& sigma(int k) const;

 private:
  mutable std::vector<Expr> phi_, sigma_;
  std::optional<double> t0_;
};

class RadialScalar {
 public:
  RadialScalar() : den_(Poly::constant(1)) {}
  RadialScalar(long v) : RadialScalar(mpq_class(v)) {}  // NOLINT
  RadialScalar(const mpq_class& q);                      // NOLINT

  static RadialScalar t();
  static RadialScalar t0();
  static RadialScalar pi();
  static RadialScalar i();
  static RadialScalar c(int k);
  static RadialScalar s(int k);
  /// Builds num/den and canonicalizes; atoms must cover all atom ordinals used.
  static RadialScalar fraction(Poly num, Poly den, AtomTable atoms);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const AtomTable& atoms() const { return atoms_; }

  RadialScalar operator+(const RadialScalar& o) const;
  RadialScalar operator-(const RadialScalar& o) const;
  RadialScalar operator-() const;
  RadialScalar operator*(const RadialScalar& o) const;
  RadialScalar operator/(const RadialScalar& o) const;
  RadialScalar& operator+=(const RadialScalar& o) { return *this = *this + o; }
  RadialScalar& operator-=(const RadialScalar& o) { return *this = *this - o; }
  RadialScalar& operator*=(const RadialScalar& o) { return *this = *this * o; }
  RadialScalar pow(int e) const;
  RadialScalar inverse() const;
  RadialScalar scaled(const mpq_class& q) const;

  bool operator==(const RadialScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RadialScalar& o) const { return !(*this == o); }

  /// Exact symbolic test, no numeric guard.
  bool is_zero_symbolic() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  mpq_class rational_value() const;
  bool depends_on(Ordinal v) const { return num_.contains(v) || den_.contains(v); }
  bool has_atoms() const { return !atoms_.empty(); }

  /// Canonical whitespace-free text: "num" or "(num)/(den)".
  std::string str() const;
  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

  std::complex<double> eval_complex(double t, const Bindings& b) const;
  /// Numerator value and the sum of absolute term values at t.
  std::pair<std::complex<double>, double> eval_numerator(double t, const Bindings& b) const;

 private:
  friend RadialScalar derive(const RadialScalar&);
  void canonicalize();
  void reduce_roots();

  Poly num_, den_;
  AtomTable atoms_;
};

struct AtomDef {
  enum class Kind { Exp, Sqrt, Log, Pow };
  Kind kind;
  std::string key;
  Ordinal ordinal;
  /// Exp: the argument (absent for exp(phi)); Log: the argument; Pow: the base.
  std::shared_ptr<const RadialScalar> arg;
  /// Sqrt: the square of the atom.
  Poly square;
  AtomTable square_atoms;
  /// Pow: exponent.
  mpq_class q;
  /// d(atom)/dt divided by the atom (Exp, Pow) or d(atom)/dt itself (Log).
  std::shared_ptr<const RadialScalar> rate;
};

/// Display name used in serialization for a variable ordinal.
std::string variable_name(Ordinal v, const AtomTable& atoms);

RadialScalar derive(const RadialScalar& f);

/// Exact zero test guarded by complex evaluation at three seeded random
/// bindings. Throws InconsistentNormalization if a symbolically nonzero value
/// vanishes numerically at every sample (an atom dependence).
bool is_zero(const RadialScalar& f);

/// -sigma / (1 + t sigma); throws DegenerateMetric if 1 + t sigma == 0.
RadialScalar tilde_sigma(const RadialScalar& sigma);

/// Real value at t. Throws DomainError for denominators below 1e-300 and
/// MissingBinding when phi, sigma or t0 are needed but unbound or when the
/// value has an imaginary part.
double eval(const RadialScalar& f, double t, const Bindings& b);

RadialScalar exp_of(const RadialScalar& arg);
/// e^phi for symbolic phi, with derivative c0 e^phi.
RadialScalar exp_of_phi();
RadialScalar sqrt_of(const RadialScalar& base);
RadialScalar log_of(const RadialScalar& arg);
RadialScalar power_of(const RadialScalar& base, const mpq_class& q);

/// Converts an expression tree in t into a radial scalar.
RadialScalar to_scalar(const Expr& e);

}  // namespace thom
