#include "thom/geometry.hpp"

#include <cmath>

#include "thom/errors.hpp"

namespace thom {

namespace {

using PolyMatrix = std::vector<std::vector<PolyCoefficient>>;

RadialScalar one() { return RadialScalar(1); }
RadialScalar tt() { return RadialScalar::t(); }

PolyCoefficient vv(int n, int i, int j) { return PolyCoefficient::v(n, i) * PolyCoefficient::v(n, j); }

/// scale * (delta_ij + s v_i v_j)
PolyMatrix radial_tensor(int n, const RadialScalar& scale, const RadialScalar& s) {
  PolyMatrix m(n, std::vector<PolyCoefficient>(n, PolyCoefficient(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PolyCoefficient e = vv(n, i, j).scaled(s * scale);
      if (i == j) e = e + PolyCoefficient(n, scale);
      m[i][j] = e;
    }
  return m;
}

PolyMatrix metric_poly(const MetricSpec& spec) { return radial_tensor(spec.n, spec.u, spec.sigma); }

PolyMatrix inverse_metric_poly(const MetricSpec& spec) {
  return radial_tensor(spec.n, spec.u.inverse(), tilde_sigma(spec.sigma));
}

FormMatrix to_forms(const PolyMatrix& m, int n) {
  FormMatrix r(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = Form(n, m[i][j]);
  return r;
}

Form v_dot_psi(int n) {
  Form r(n);
  for (int k = 0; k < n; ++k) r += Form::v(n, k) * Form::psi(n, k);
  return r;
}

void check_dim(int n) {
  if (n < 2 || n > kMaxDim || n % 2) throw DimensionMismatch("fiber dimension must be even and at most 8");
}

}  // namespace

MetricSpec MetricSpec::generic(int n) {
  check_dim(n);
  MetricSpec s;
  s.n = n;
  s.u = exp_of_phi();
  s.c = RadialScalar::c(0);
  s.sigma = RadialScalar::s(0);
  s.sqrt_h = sqrt_of(s.one_plus_t_sigma());
  s.label = "generic";
  return s;
}

MetricSpec MetricSpec::from_expressions(int n, const Expr& phi, const Expr& sigma) {
  MetricSpec s = from_scalars(n, to_scalar(Expr::exp(phi)), to_scalar(phi.derive()), to_scalar(sigma));
  s.label = "phi=" + phi.str() + ", sigma=" + sigma.str();
  return s;
}

MetricSpec MetricSpec::from_scalars(int n, const RadialScalar& u, const RadialScalar& c, const RadialScalar& sigma) {
  check_dim(n);
  MetricSpec s;
  s.n = n;
  s.u = u;
  s.c = c;
  s.sigma = sigma;
  s.sqrt_h = sqrt_of(s.one_plus_t_sigma());
  return s;
}

RadialScalar MetricSpec::one_plus_t_tilde_sigma() const {
  const RadialScalar h = one_plus_t_sigma();
  if (h.is_zero_symbolic()) throw DegenerateMetric("1 + t sigma vanishes identically");
  return h.inverse();
}

void validate(const MetricSpec& spec, double t_max, int samples) {
  check_dim(spec.n);
  const RadialScalar h = spec.one_plus_t_sigma();
  if (h.is_zero_symbolic()) throw DegenerateMetric("1 + t sigma vanishes identically");
  for (int k = 0; k < samples; ++k) {
    const double t = samples > 1 ? t_max * k / (samples - 1) : 0.0;
    double value;
    try {
      value = eval(h, t, spec.bindings);
    } catch (const DomainError&) {
      throw DegenerateMetric("1 + t sigma is undefined at t = " + std::to_string(t));
    }
    if (!(value > 0)) throw DegenerateMetric("1 + t sigma <= 0 at t = " + std::to_string(t));
  }
}

FormMatrix metric(const MetricSpec& spec) { return to_forms(metric_poly(spec), spec.n); }

FormMatrix inverse_metric(const MetricSpec& spec) { return to_forms(inverse_metric_poly(spec), spec.n); }

Christoffel::Christoffel(int n) : n_(n), e_(n * n * n, PolyCoefficient(n)) {}

Christoffel christoffel(const MetricSpec& spec) {
  const int n = spec.n;
  const PolyMatrix g = metric_poly(spec), ginv = inverse_metric_poly(spec);
  // dg[l][i][j] = d_l g_ij
  std::vector<PolyMatrix> dg(n);
  for (int l = 0; l < n; ++l) {
    dg[l] = g;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg[l][i][j] = g[i][j].derivative(l);
  }
  Christoffel r(n);
  const RadialScalar half(mpq_class(1, 2));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const PolyCoefficient lower = (dg[i][l][j] + dg[j][i][l] - dg[l][i][j]).scaled(half);
        if (lower.is_zero()) continue;
        for (int k = 0; k < n; ++k) r(k, i, j) = r(k, i, j) + ginv[k][l] * lower;
      }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) r(k, i, j) = r(k, j, i);
  return r;
}

Christoffel christoffel_closed_form(const MetricSpec& spec) {
  const int n = spec.n;
  const RadialScalar f = spec.one_plus_t_tilde_sigma();
  const RadialScalar ds = derive(spec.sigma);
  const RadialScalar diag = f * (spec.sigma - spec.c), quad = f * (ds - spec.sigma * spec.c);
  Christoffel r(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        PolyCoefficient e = (PolyCoefficient::v(n, k) * vv(n, i, j)).scaled(quad);
        if (i == j) e = e + PolyCoefficient::v(n, k).scaled(diag);
        if (j == k) e = e + PolyCoefficient::v(n, i).scaled(spec.c);
        if (i == k) e = e + PolyCoefficient::v(n, j).scaled(spec.c);
        r(k, i, j) = e;
      }
  return r;
}

ConnectionCoefficients connection_coefficients(const MetricSpec& spec) {
  const RadialScalar f = spec.one_plus_t_tilde_sigma();
  return {f * (derive(spec.sigma) - spec.c * spec.sigma), f * (spec.sigma - spec.c), spec.c};
}

FormMatrix connection_matrix(const Christoffel& gamma) {
  const int n = gamma.dim();
  FormMatrix r(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!gamma(j, i, k).is_zero()) r(i, j) += Form::psi(n, k).scaled(gamma(j, i, k));
  return r;
}

FormMatrix connection_matrix(const MetricSpec& spec) { return connection_matrix(christoffel(spec)); }

FormMatrix connection_closed_form(const MetricSpec& spec) {
  const int n = spec.n;
  const auto [a, b, c] = connection_coefficients(spec);
  const Form vpsi = v_dot_psi(n);
  FormMatrix r(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Form vi = Form::v(n, i), vj = Form::v(n, j);
      Form e = (vj * vi * vpsi).scaled(a) + (vj * Form::psi(n, i)).scaled(b) + (vi * Form::psi(n, j)).scaled(c);
      if (i == j) e += vpsi.scaled(c);
      r(i, j) = e;
    }
  return r;
}

FormMatrix curvature(const MetricSpec& spec) {
  const int n = spec.n;
  const FormMatrix gamma = connection_matrix(spec);
  FormMatrix r(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form e = exterior_derivative(gamma(i, j));
      for (int k = 0; k < n; ++k) e += gamma(k, j) * gamma(i, k);
      r(i, j) = e;
    }
  return r;
}

FormMatrix raised_curvature(const MetricSpec& spec) { return inverse_metric(spec) * curvature(spec); }

FormMatrix omega_part(const MetricSpec& spec) {
  const int n = spec.n;
  const Christoffel gamma = christoffel(spec);
  // w^l = Omega^{ml} v^m
  std::vector<Form> w(n, Form(n));
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) w[l] += Form::omega(n, m, l) * Form::v(n, m);
  FormMatrix p(n, n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      Form e = Form::omega(n, k, j);
      for (int l = 0; l < n; ++l) e += w[l].scaled(gamma(j, l, k));
      p(k, j) = e;
    }
  return inverse_metric(spec) * p;
}

FormMatrix equivariant_curvature(const MetricSpec& spec) { return raised_curvature(spec) + omega_part(spec); }

FormMatrix equivariant_curvature_trace_form(const MetricSpec& spec) {
  return trace_product(m_matrix(spec), n_matrix(spec.n)).scaled(spec.u.inverse() * spec.one_plus_t_tilde_sigma());
}

MMatrix m_matrix(const MetricSpec& spec) {
  const RadialScalar t = tt(), c = spec.c, s = spec.sigma;
  const RadialScalar dc = derive(c), ds = derive(s);
  MMatrix m;
  m.m11 = c * c * t + c * 2 - s;
  m.m12 = dc * 2 - c * c - ds + spec.one_plus_t_tilde_sigma() * (s - c) * (s + t * ds);
  m.m21 = one() + t * s;
  m.m22 = c - s;
  return m;
}

NMatrix n_matrix(int n) {
  check_dim(n);
  const Form vpsi = v_dot_psi(n);
  std::vector<Form> w(n, Form(n));  // v_k Omega^{kj}
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) w[j] += Form::v(n, k) * Form::omega(n, k, j);
  NMatrix out;
  for (auto& row : out.block)
    for (auto& b : row) b = FormMatrix(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Form vi = Form::v(n, i), vj = Form::v(n, j);
      out.block[0][0](i, j) = Form::psi(n, i) * Form::psi(n, j);
      out.block[0][1](i, j) = Form::omega(n, i, j);
      out.block[1][0](i, j) = vi * vpsi * Form::psi(n, j) - vj * vpsi * Form::psi(n, i);
      out.block[1][1](i, j) = vi * w[j] - vj * w[i];
    }
  return out;
}

}  // namespace thom
