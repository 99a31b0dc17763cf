#include "thom/pfaffian.hpp"

#include <numeric>

namespace thom {

Form epsilon_contraction(const std::vector<FormMatrix>& factors) {
  if (factors.empty()) throw DimensionMismatch("no factors to contract");
  const int n = factors[0].rows();
  if (static_cast<int>(factors.size()) * 2 != n) throw DimensionMismatch("need n/2 factors of size n");
  for (const auto& f : factors) {
    if (f.rows() != n || f.cols() != n) throw DimensionMismatch("factor shapes differ");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!detail::commuting(f(i, j))) throw Unsupported("contracted entries must have even degree");
  }
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Form acc(factors[0].dim());
  do {
    Form prod = factors[0](p[0], p[1]);
    for (std::size_t k = 1; k < factors.size() && !prod.is_zero_symbolic(); ++k)
      prod = prod * factors[k](p[2 * k], p[2 * k + 1]);
    if (prod.is_zero_symbolic()) continue;
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    acc += inversions % 2 ? -prod : prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

FormMatrix conjugate(const FormMatrix& a, const FormMatrix& s) {
  if (a.rows() != s.rows() || a.cols() != s.rows()) throw DimensionMismatch("conjugation shapes differ");
  return s.transpose() * a * s;
}

Matrix<double> conjugate(const Matrix<double>& a, const Matrix<double>& s) {
  const int n = a.rows();
  if (a.cols() != n || s.rows() != n || s.cols() != n) throw DimensionMismatch("conjugation shapes differ");
  Matrix<double> as(n, n), r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) as(i, j) += a(i, k) * s(k, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r(i, j) += s(k, i) * as(k, j);
  return r;
}

FormMatrix s_matrix(int n, const RadialScalar& d) {
  FormMatrix s = FormMatrix::identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) += (Form::v(n, i) * Form::v(n, j)).scaled(d);
  return s;
}

FormMatrix s_conjugate_closed_form(const FormMatrix& a, const RadialScalar& d) {
  const int n = a.rows();
  const int dim = a.dim();
  // w^j = v_k A^{kj}
  std::vector<Form> w(n, Form(dim));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) w[j] += Form::v(dim, k) * a(k, j);
  FormMatrix r = a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) += (Form::v(dim, i) * w[j] - Form::v(dim, j) * w[i]).scaled(d);
  return r;
}

MMatrix MMatrix::times_sbar(const RadialScalar& d) const {
  const RadialScalar s22 = RadialScalar(1) + RadialScalar::t() * d;
  return {m11, m11 * d + m12 * s22, m21, m21 * d + m22 * s22};
}

FormMatrix trace_product(const MMatrix& m, const NMatrix& n) {
  return n.block[0][0].scaled(m.m11) + n.block[1][0].scaled(m.m12) + n.block[0][1].scaled(m.m21) +
         n.block[1][1].scaled(m.m22);
}

SbarConjugation sbar_conjugate(const NMatrix& n, const RadialScalar& d) {
  const int dim = n.block[0][0].dim();
  const FormMatrix s = s_matrix(dim, d);
  SbarConjugation out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.conjugated.block[a][b] = conjugate(n.block[a][b], s);
  const RadialScalar s22 = RadialScalar(1) + RadialScalar::t() * d;
  for (int b = 0; b < 2; ++b) {
    out.left_action.block[0][b] = n.block[0][b] + n.block[1][b].scaled(d);
    out.left_action.block[1][b] = n.block[1][b].scaled(s22);
  }
  out.agree = true;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if (!is_zero(out.conjugated.block[a][b] - out.left_action.block[a][b])) out.agree = false;
  return out;
}

RadialScalar gauge_D1(const MMatrix& m) {
  const RadialScalar den = m.m11 + RadialScalar::t() * m.m12;
  if (den.is_zero_symbolic()) throw GaugeSingular("M11 + t M12 vanishes identically");
  return -m.m12 / den;
}

RadialScalar gauge_D2(const MMatrix& m) {
  const RadialScalar den = m.m21 + RadialScalar::t() * m.m22;
  if (den.is_zero_symbolic()) throw GaugeSingular("M21 + t M22 vanishes identically");
  return -m.m22 / den;
}

}  // namespace thom
