#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "thom/pfaffian.hpp"

using namespace thom;

namespace {

/// 1/(2^d d!) sum over all permutations; independent of the library code.
template <class T>
T brute_force_pfaffian(const Matrix<T>& a, const T& zero) {
  const int n = a.rows();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  T acc = zero;
  long norm = 1;
  for (int k = 1; k <= n / 2; ++k) norm *= 2 * k;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    T prod = a(p[0], p[1]);
    for (int k = 2; k < n; k += 2) prod = prod * a(p[k], p[k + 1]);
    acc = inversions % 2 ? acc - prod : acc + prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc / T(norm);
}

Matrix<double> random_antisymmetric(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix<double> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = u(rng);
      a(j, i) = -a(i, j);
    }
  return a;
}

Matrix<RadialScalar> symbolic_antisymmetric(int n) {
  Matrix<RadialScalar> a(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = RadialScalar::c(k++);
      a(j, i) = -a(i, j);
    }
  return a;
}

FormMatrix lift(const Matrix<RadialScalar>& a, int n) {
  FormMatrix f(a.rows(), a.cols(), n);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) f(i, j) = Form(n, a(i, j));
  return f;
}

}  // namespace

TEST_CASE("small Pfaffians") {
  Matrix<RadialScalar> a(2, 2);
  a(0, 1) = RadialScalar::c(0);
  a(1, 0) = -RadialScalar::c(0);
  CHECK(pfaffian(a) == RadialScalar::c(0));
  const Matrix<RadialScalar> b = symbolic_antisymmetric(4);
  const RadialScalar expected = b(0, 1) * b(2, 3) - b(0, 2) * b(1, 3) + b(0, 3) * b(1, 2);
  CHECK(pfaffian(b) == expected);
  CHECK(brute_force_pfaffian(b, RadialScalar()) == expected);
  CHECK(pfaffian_recursive(b) == expected);
}

TEST_CASE("matching sum, row expansion and permutation sum agree") {
  for (int n : {2, 4, 6}) {
    const Matrix<RadialScalar> a = symbolic_antisymmetric(n);
    const RadialScalar pf = pfaffian(a);
    CHECK(pf == pfaffian_recursive(a));
    CHECK(pf == brute_force_pfaffian(a, RadialScalar()));
    CHECK(pf * pf == determinant(a));
  }
  std::mt19937 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix<double> a = random_antisymmetric(rng, 8);
    CHECK(pfaffian(a) == doctest::Approx(pfaffian_recursive(a)).epsilon(1e-12));
  }
}

TEST_CASE("Pf squared equals Det on random numeric matrices") {
  std::mt19937 rng(1234);
  for (int n : {2, 4, 6})
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix<double> a = random_antisymmetric(rng, n);
      const double pf = pfaffian(a), det = determinant(a);
      CHECK(std::abs(pf * pf - det) <= 1e-9 * std::max(1.0, std::abs(det)));
    }
}

TEST_CASE("Pfaffian of Psi^i Psi^j") {
  for (int n : {2, 4, 6}) {
    FormMatrix a(n, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) a(i, j) = Form::psi(n, i) * Form::psi(n, j);
    long nfact = 1, norm = 1;
    for (int k = 1; k <= n; ++k) nfact *= k;
    for (int k = 1; k <= n / 2; ++k) norm *= 2 * k;
    const Form pf = pfaffian(a);
    CHECK(top_psi_coefficient(pf) == PolyCoefficient(n, RadialScalar(mpq_class(nfact, norm))));
    CHECK(pf.terms().size() == 1);
  }
}

TEST_CASE("input validation") {
  Matrix<double> odd(3, 3);
  CHECK_THROWS_AS(pfaffian(odd), OddDimension);
  Matrix<double> sym(2, 2);
  sym(0, 1) = sym(1, 0) = 1;
  CHECK_THROWS_AS(pfaffian(sym), NotAntisymmetric);
  FormMatrix oddentries(2, 2, 2);
  oddentries(0, 1) = Form::psi(2, 0);
  oddentries(1, 0) = -Form::psi(2, 0);
  CHECK_THROWS_AS(pfaffian(oddentries), Unsupported);
}

TEST_CASE("determinants of S(D)") {
  const RadialScalar d = RadialScalar::s(0), e = RadialScalar::c(1);
  const RadialScalar t = RadialScalar::t();
  for (int n : {2, 4}) {
    CHECK(determinant(FormMatrix::identity(n, n)) == Form(n, RadialScalar(1)));
    CHECK(determinant(s_matrix(n, d)) == Form(n, RadialScalar(1) + t * d));
    CHECK(is_zero(s_matrix(n, d) * s_matrix(n, e) - s_matrix(n, d + e + t * d * e)));
  }
}

TEST_CASE("Pfaffian under S(D) conjugation") {
  const RadialScalar d = RadialScalar::s(0) / (RadialScalar::t() + 2);
  for (int n : {2, 4}) {
    const FormMatrix a = lift(symbolic_antisymmetric(n), n);
    const FormMatrix s = s_matrix(n, d);
    const FormMatrix sas = conjugate(a, s);
    CHECK(is_zero(sas - s_conjugate_closed_form(a, d)));
    CHECK(is_zero(pfaffian(sas) - determinant(s) * pfaffian(a)));
    CHECK(is_zero(conjugate(a, FormMatrix::identity(n, n)) - a));
  }
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix<double> a = random_antisymmetric(rng, 4);
    Matrix<double> s(4, 4);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s(i, j) = u(rng);
    CHECK(pfaffian(conjugate(a, s)) == doctest::Approx(determinant(s) * pfaffian(a)).epsilon(1e-10));
  }
}

TEST_CASE("gauges") {
  const RadialScalar t = RadialScalar::t();
  const MMatrix flat{RadialScalar(), RadialScalar(), RadialScalar(1), RadialScalar()};
  CHECK(gauge_D2(flat).is_zero_symbolic());
  CHECK_THROWS_AS(gauge_D1(flat), GaugeSingular);
  const RadialScalar s0 = RadialScalar::s(0);
  const RadialScalar k = (RadialScalar(1) + t * s0) / t;
  const MMatrix degenerate{-k, k / t, k * t, -k};
  CHECK_THROWS_AS(gauge_D2(degenerate), GaugeSingular);
  const MMatrix generic{RadialScalar::c(0), RadialScalar::c(1), RadialScalar(1) + t * s0, RadialScalar::c(0) - s0};
  CHECK(generic.times_sbar(gauge_D2(generic)).m22.is_zero_symbolic());
  CHECK(generic.times_sbar(gauge_D1(generic)).m12.is_zero_symbolic());
  const RadialScalar d = RadialScalar::s(1);
  const MMatrix md = generic.times_sbar(d);
  CHECK(md.m12 == generic.m11 * d + generic.m12 * (RadialScalar(1) + t * d));
  CHECK(md.m11 == generic.m11);
  CHECK(md.m21 == generic.m21);
}
