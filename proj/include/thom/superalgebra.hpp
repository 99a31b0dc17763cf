#pragma once

// Graded-commutative algebra over polynomials in v^1..v^n with radial
// coefficients, generated by Psi^i (odd, degree 1), Omega^{ij} (even,
// degree 2, antisymmetric), and in the extended sector varpi_k (odd,
// degree -1) and b_k (even, degree 0).
//
// Indices are 0-based in the API and 1-based in serialized text. Monomials
// are stored in the generator order Psi < varpi < Omega < b, each block
// ascending; the sign of any reordering is absorbed into the coefficient.
// Polynomial coefficients are kept in the normal form where v^n appears at
// most linearly (v_n^2 is rewritten as t - sum_{i<n} v_i^2), so radial
// dependence is carried by the RadialScalar coefficients.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "thom/scalar.hpp"

namespace thom {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxPairs = kMaxDim * (kMaxDim - 1) / 2;

/// Exponents of v^1..v^n.
using VMonomial = std::array<std::uint8_t, kMaxDim>;

class PolyCoefficient {
 public:
  explicit PolyCoefficient(int n = 2);
  PolyCoefficient(int n, const RadialScalar& c);
  static PolyCoefficient v(int n, int k);

  int dim() const { return n_; }
  const std::map<VMonomial, RadialScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when no v-monomial other than 1 occurs.
  bool is_radial() const;
  /// Coefficient of the monomial 1.
  RadialScalar radial_part() const;

  PolyCoefficient operator+(const PolyCoefficient& o) const;
  PolyCoefficient operator-(const PolyCoefficient& o) const;
  PolyCoefficient operator-() const;
  PolyCoefficient operator*(const PolyCoefficient& o) const;
  PolyCoefficient& operator+=(const PolyCoefficient& o);
  PolyCoefficient scaled(const RadialScalar& c) const;
  bool operator==(const PolyCoefficient& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  /// D_k = d/dv^k acting on functions of v and t = (v, v).
  PolyCoefficient derivative(int k) const;
  /// Applies f to every radial coefficient.
  PolyCoefficient map(const std::function<RadialScalar(const RadialScalar&)>& f) const;

  std::complex<double> eval(const std::vector<double>& v, const Bindings& b) const;
  /// "vmono:scalar" terms joined by ';'.
  std::string str() const;

 private:
  void add_term(const VMonomial& m, const RadialScalar& c);
  int n_;
  std::map<VMonomial, RadialScalar> terms_;
};

/// Index of the pair (i, j), i < j, in the Omega exponent vector.
constexpr int pair_index(int i, int j) { return i * (2 * kMaxDim - i - 1) / 2 + (j - i - 1); }

struct FormMonomial {
  std::uint8_t psi = 0;    // bit k: Psi^k
  std::uint8_t varpi = 0;  // bit k: varpi_k
  std::array<std::uint8_t, kMaxPairs> omega{};
  std::array<std::uint8_t, kMaxDim> b{};

  auto operator<=>(const FormMonomial&) const = default;
  bool operator==(const FormMonomial&) const = default;

  int psi_degree() const;
  int varpi_degree() const;
  int omega_degree() const;
  bool is_odd() const { return (psi_degree() + varpi_degree()) % 2 == 1; }
  /// Psi:1, Omega:2, varpi:-1, b:0.
  int degree() const { return psi_degree() + 2 * omega_degree() - varpi_degree(); }
  bool has_extended() const;
  std::string str() const;
};

class Form {
 public:
  using Terms = std::map<FormMonomial, PolyCoefficient>;

  explicit Form(int n = 2);
  Form(int n, const PolyCoefficient& c);
  Form(int n, const RadialScalar& c);
  static Form monomial(int n, const FormMonomial& m, const PolyCoefficient& c);
  static Form v(int n, int k);
  static Form psi(int n, int k);
  /// Omega^{ij} with Omega^{ji} = -Omega^{ij}, Omega^{ii} = 0.
  static Form omega(int n, int i, int j);
  static Form varpi(int n, int k);
  static Form b(int n, int k);

  int dim() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero_symbolic() const { return terms_.empty(); }
  /// Every monomial has even parity.
  bool is_even() const;
  PolyCoefficient coefficient(const FormMonomial& m) const;

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator-() const;
  Form operator*(const Form& o) const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form scaled(const RadialScalar& c) const;
  Form scaled(const PolyCoefficient& c) const;
  bool operator==(const Form& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  /// Terms whose monomial satisfies the predicate.
  Form filter(const std::function<bool(const FormMonomial&)>& keep) const;
  /// Applies f to every radial coefficient.
  Form map(const std::function<RadialScalar(const RadialScalar&)>& f) const;

  /// Sorted terms "coeff@mono" joined by '|'; "0" for the zero form.
  std::string str() const;

  void add_term(const FormMonomial& m, const PolyCoefficient& c);

 private:
  int n_;
  Terms terms_;
};

/// Guarded exact zero test over all radial coefficients.
bool is_zero(const Form& x);
bool is_zero(const PolyCoefficient& x);

/// Cartan-model differential (omega = 0):
/// s v^k = Psi^k, s Psi^k = -Omega^{km} v^m, s Omega = 0,
/// s varpi_k = b_k, s b_k = -Omega^{km} varpi_m.
Form equivariant_differential(const Form& x);

/// Exterior derivative along V: s with Omega set to zero, on forms without
/// extended generators. Throws Unsupported otherwise.
Form exterior_derivative(const Form& x);

/// Even derivation L(Omega) x^k = Omega^{km} x^m for x in {v, Psi, varpi, b}.
Form omega_action(const Form& x);

struct SoNElement {
  int n;
  std::vector<mpq_class> entries;  // row-major n x n
  /// Throws NotAntisymmetric unless lambda + lambda^T = 0.
  SoNElement(int n, std::vector<mpq_class> entries);
  const mpq_class& operator()(int i, int j) const { return entries[i * n + j]; }
};

enum class LieScope { VOnly, Full };

/// Derivation x^k -> lambda_{km} x^m on v, Psi, varpi, b; with Full scope
/// also Omega -> [lambda, Omega].
Form lie_action(const SoNElement& lambda, LieScope scope, const Form& x);

/// Coefficient of Psi^1...Psi^n with no Omega, varpi or b.
PolyCoefficient top_psi_coefficient(const Form& x);

/// Element of the Grassmann algebra on Psi^1..Psi^n with numeric coefficients.
struct GrassmannNumber {
  int n = 0;
  std::map<std::uint8_t, std::complex<double>> coef;  // Psi bitmask -> value
  std::complex<double> at(std::uint8_t mask) const;
  double max_abs() const;
  GrassmannNumber operator-(const GrassmannNumber& o) const;
};

/// Substitutes numeric v and Omega (antisymmetric, row-major n x n).
GrassmannNumber substitute_numeric(const Form& x, const std::vector<double>& v,
                                   const std::vector<double>& omega, const Bindings& b);

/// Dense matrix of forms.
class FormMatrix {
 public:
  FormMatrix() = default;
  FormMatrix(int rows, int cols, int n);
  static FormMatrix identity(int size, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const { return n_; }
  Form& operator()(int i, int j) { return e_[i * cols_ + j]; }
  const Form& operator()(int i, int j) const { return e_[i * cols_ + j]; }

  FormMatrix operator+(const FormMatrix& o) const;
  FormMatrix operator-(const FormMatrix& o) const;
  FormMatrix operator*(const FormMatrix& o) const;
  FormMatrix transpose() const;
  FormMatrix scaled(const RadialScalar& c) const;

 private:
  int rows_ = 0, cols_ = 0, n_ = 2;
  std::vector<Form> e_;
};

bool is_zero(const FormMatrix& m);

}  // namespace thom
