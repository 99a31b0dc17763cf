#pragma once

// Sparse multivariate polynomials over the integers.
//
// Variables are identified by an Ordinal; the ordinal also fixes the variable
// order used by the lexicographic term order (higher ordinal = more
// significant). Terms are kept sorted in decreasing term order with nonzero
// coefficients, so structural equality is mathematical equality.

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace thom {

using Ordinal = std::uint32_t;

struct VarPow {
  Ordinal var;
  std::int32_t exp;
  bool operator==(const VarPow&) const = default;
};

/// Power product; factors sorted by decreasing ordinal, exponents positive.
class Monomial {
 public:
  using Storage = boost::container::small_vector<VarPow, 4>;

  Monomial() = default;
  static Monomial var(Ordinal v, std::int32_t e = 1);

  const Storage& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  std::int32_t exponent(Ordinal v) const;
  std::int32_t total_degree() const;

  Monomial operator*(const Monomial& o) const;
  /// Returns nullopt unless `d` divides *this.
  std::optional<Monomial> divide(const Monomial& d) const;
  Monomial without(Ordinal v) const;
  Monomial with_exponent(Ordinal v, std::int32_t e) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& o) const { return f_ == o.f_; }
  /// Lexicographic term order: -1, 0, +1.
  static int compare(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  Storage f_;
};

class Poly {
 public:
  struct Term {
    Monomial mono;
    mpz_class coef;
  };

  using NameFn = std::function<std::string(Ordinal)>;

  Poly() = default;
  static Poly constant(const mpz_class& c);
  static Poly variable(Ordinal v, std::int32_t e = 1);
  static Poly term(const Monomial& m, const mpz_class& c);
  /// Builds from unsorted, possibly duplicated terms.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const;
  /// Constant value; only meaningful when is_constant().
  mpz_class constant_value() const;
  const Term& lead() const { return terms_.front(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const mpz_class& c) const;
  Poly times(const Monomial& m) const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::int32_t degree(Ordinal v) const;
  bool contains(Ordinal v) const { return degree(v) > 0; }
  /// Ordinals present, decreasing.
  std::vector<Ordinal> variables() const;

  /// Integer content, sign chosen so that content * primitive == *this with
  /// positive leading coefficient of the primitive part.
  mpz_class content() const;
  Monomial monomial_content() const;
  /// Coefficients as a polynomial in `v`: exponent -> coefficient (v-free).
  std::map<std::int32_t, Poly> coefficients_in(Ordinal v) const;
  Poly leading_coefficient_in(Ordinal v) const;
  Poly derivative(Ordinal v) const;
  /// Replaces every v^e with e >= 2 by v^(e mod 2) * square^(e / 2).
  Poly reduce_square(Ordinal v, const Poly& square) const;

  std::optional<Poly> divide_exact(const Poly& d) const;
  Poly divide_monomial(const Monomial& m) const;

  std::string to_string(const NameFn& name) const;
  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor in Z[x...], with positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace thom
