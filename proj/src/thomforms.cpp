#include "thom/thomforms.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <random>

#include "thom/errors.hpp"

namespace thom {

namespace {

RadialScalar tt() { return RadialScalar::t(); }

long factorial(int k) {
  long r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

FormMatrix psi_psi(int n) {
  FormMatrix m(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Form::psi(n, i) * Form::psi(n, j);
  return m;
}

FormMatrix omega_matrix(int n) {
  FormMatrix m(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Form::omega(n, i, j);
  return m;
}

/// (1 + t sigma)^{(1-n)/2}
RadialScalar h_power(const MetricSpec& spec) {
  return spec.sqrt_h / spec.one_plus_t_sigma().pow(spec.n / 2);
}

Form psi_free(const Form& x) {
  return x.filter([](const FormMonomial& m) { return m.psi == 0; });
}

void check_even(int n) {
  if (n < 2 || n > kMaxDim || n % 2) throw DimensionMismatch("fiber dimension must be even and at most 8");
}

}  // namespace

RadialScalar sqrt_det_metric(const MetricSpec& spec) { return spec.u.pow(spec.n / 2) * spec.sqrt_h; }

ThomRepresentative euler_class(const MetricSpec& spec) {
  const int d = spec.n / 2;
  const RadialScalar pre = sqrt_det_metric(spec) * RadialScalar(1L << d);
  return {pfaffian(equivariant_curvature(spec)).scaled(pre), "general(" + spec.label + ")", spec.n};
}

ThomRepresentative euler_class_trace_form(const MetricSpec& spec) {
  const int d = spec.n / 2;
  const RadialScalar pre = sqrt_det_metric(spec) * RadialScalar(1L << d);
  return {pfaffian(equivariant_curvature_trace_form(spec)).scaled(pre), "general(" + spec.label + ")", spec.n};
}

RadialScalar n2_f(const MetricSpec& spec) { return (RadialScalar(1) + tt() * spec.c) / spec.sqrt_h; }

Form n2_euler_closed_form(const MetricSpec& spec) {
  if (spec.n != 2) throw DimensionMismatch("the n = 2 closed form needs n = 2");
  const RadialScalar f = n2_f(spec);
  return (Form::psi(2, 0) * Form::psi(2, 1)).scaled(derive(f) * 4) + Form::omega(2, 0, 1).scaled(f * 2);
}

GaugeDecomposition euler_via_gauge(const MetricSpec& spec, Gauge which) {
  return euler_via_gauge(spec, which, euler_class_trace_form(spec).form);
}

GaugeDecomposition euler_via_gauge(const MetricSpec& spec, Gauge which, const Form& euler) {
  const int n = spec.n, d = n / 2;
  const MMatrix m = m_matrix(spec);
  GaugeDecomposition out;
  out.which = which;
  out.d = which == Gauge::D1 ? gauge_D1(m) : gauge_D2(m);
  const MMatrix md = m.times_sbar(out.d);
  const NMatrix nm = n_matrix(n);
  const RadialScalar hp = h_power(spec);
  const RadialScalar one_td = RadialScalar(1) + tt() * out.d;
  out.form = pfaffian(trace_product(md, nm)).scaled(hp * RadialScalar(1L << d) / one_td);
  out.b_coefficient = m.det() / m.m21;
  bool ok = is_zero(out.form - euler);
  if (which == Gauge::D1) {
    out.top_coefficient = RadialScalar(factorial(n) / factorial(d)) * hp * (m.m11 + tt() * m.m12) * m.m11.pow(d - 1);
    ok = ok && is_zero(top_psi_coefficient(euler) - PolyCoefficient(n, out.top_coefficient));
  } else {
    const RadialScalar ratio = RadialScalar(1) + tt() * m.m22 / m.m21;
    out.top_coefficient = RadialScalar(1L << d) * hp * ratio * m.m21.pow(d);
    ok = ok && is_zero(psi_free(euler) - pfaffian(omega_matrix(n)).scaled(out.top_coefficient));
    const FormMatrix a = psi_psi(n).scaled(m.m11) + omega_matrix(n).scaled(m.m21);
    std::vector<FormMatrix> factors{nm.block[1][0]};
    for (int k = 1; k < d; ++k) factors.push_back(a);
    out.a_term = pfaffian(a).scaled(RadialScalar(1L << d) * hp * ratio);
    out.b_term = epsilon_contraction(factors).scaled(-hp * out.b_coefficient * RadialScalar(mpq_class(d, factorial(d))));
    ok = ok && is_zero(euler - *out.a_term - *out.b_term);
  }
  out.agrees = ok;
  return out;
}

FirstIntegral det_m_first_integral(const MetricSpec& spec) {
  const RadialScalar t = tt();
  const RadialScalar k = RadialScalar(1) + t * spec.c;
  if (is_zero(k)) throw DegenerateKernel("1 + tC vanishes identically");
  const RadialScalar k2 = k * k;
  FirstIntegral out;
  out.g = spec.sigma / k2 + (t * k2).inverse() - t.inverse();
  const MMatrix m = m_matrix(spec);
  out.factorization = is_zero(m.det() - k2 * k * derive(out.g));
  out.alternative_forms =
      is_zero(out.g + m.m11 / k2) && is_zero(out.g - (spec.one_plus_t_sigma() - k2) / (t * k2));
  return out;
}

RadialScalar sigma_from_constraint(const RadialScalar& c, const RadialScalar& t0) {
  const RadialScalar t = tt();
  const RadialScalar k = RadialScalar(1) + t * c;
  if (is_zero(k)) throw DegenerateKernel("1 + tC vanishes identically");
  if (t0.is_zero_symbolic()) throw DomainError("t0 must be positive");
  if (t0.is_rational() && t0.rational_value() <= 0) throw DomainError("t0 must be positive");
  return k * k / t0 + c * (RadialScalar(2) + t * c);
}

MetricSpec constrained_spec(int n, const RadialScalar& u, const RadialScalar& c, const RadialScalar& t0) {
  MetricSpec s = MetricSpec::from_scalars(n, u, c, sigma_from_constraint(c, t0));
  s.sqrt_h = (RadialScalar(1) + tt() * c) * sqrt_of(t0 * (t0 + tt())) / t0;
  s.label = "Det M = 0, t0=" + t0.str();
  return s;
}

MetricSpec constrained_spec(int n, const Expr& phi, const RadialScalar& t0) {
  MetricSpec s = constrained_spec(n, to_scalar(Expr::exp(phi)), to_scalar(phi.derive()), t0);
  s.label = "phi=" + phi.str() + ", Det M = 0, t0=" + t0.str();
  return s;
}

ThomRepresentative harvey_lawson(const RadialScalar& t0, int n) {
  check_even(n);
  const RadialScalar s = t0 + tt();
  const RadialScalar k = sqrt_of(t0 * s);
  const FormMatrix a = omega_matrix(n) - psi_psi(n).scaled(s.inverse());
  return {pfaffian(a).scaled(RadialScalar(1L << (n / 2)) * k / s), "harvey_lawson(t0=" + t0.str() + ")", n};
}

ThomRepresentative normalized_thom(const RadialScalar& t0, int n) {
  check_even(n);
  const RadialScalar s = t0 + tt();
  const RadialScalar k = sqrt_of(t0 * s);
  const FormMatrix a = psi_psi(n).scaled(s.inverse()) - omega_matrix(n);
  const RadialScalar two_pi = RadialScalar::pi() * 2;
  return {pfaffian(a).scaled(k / s / two_pi.pow(n / 2)), "normalized(t0=" + t0.str() + ")", n};
}

ThomRepresentative mathai_quillen(int n) {
  check_even(n);
  const Form i(n, RadialScalar::i());
  Form theta(n);
  for (int k = 0; k < n; ++k) theta += Form::v(n, k) * Form::varpi(n, k) + i * Form::varpi(n, k) * Form::b(n, k);
  const Form x = i * equivariant_differential(theta);

  // Split off the b-sector: q_k b_k^2 + J_k b_k.
  std::vector<RadialScalar> q(n);
  std::vector<PolyCoefficient> j(n, PolyCoefficient(n));
  Form y(n);
  for (const auto& [m, c] : x.terms()) {
    int bdeg = 0, which = -1;
    for (int k = 0; k < n; ++k)
      if (m.b[k]) {
        bdeg += m.b[k];
        which = k;
      }
    if (bdeg == 0) {
      y.add_term(m, c);
      continue;
    }
    FormMonomial rest = m;
    rest.b[which] = 0;
    const bool pure = rest == FormMonomial{} && m.b[which] == bdeg;
    if (!pure || bdeg > 2) throw Unsupported("exponent is not a separable Gaussian in b");
    if (bdeg == 2) {
      if (!c.is_radial() || !c.radial_part().is_rational()) throw Unsupported("non-constant quadratic form in b");
      q[which] = c.radial_part();
    } else {
      j[which] = c;
    }
  }
  // int db exp(q b^2 + J b) = (pi/-q)^{1/2} exp(-J^2/(4q)) per coordinate.
  PolyCoefficient exponent(n);
  RadialScalar q_prod(1);
  for (int k = 0; k < n; ++k) {
    if (!q[k].is_rational() || q[k].rational_value() >= 0) throw Unsupported("b-integral does not converge");
    exponent = exponent + (j[k] * j[k]).scaled(-(q[k] * 4).inverse());
    q_prod = q_prod * -q[k];
  }
  if (!exponent.is_radial()) throw Unsupported("Gaussian exponent is not radial");
  const RadialScalar gauss = RadialScalar::pi().pow(n / 2) / sqrt_of(q_prod) * exp_of(exponent.radial_part());

  // Berezin integral over varpi of exp(y).
  Form power(n, RadialScalar(1)), expy(n, RadialScalar(1));
  for (int k = 1; k <= n; ++k) {
    power = (power * y).scaled(RadialScalar(mpq_class(1, k)));
    expy += power;
  }
  const auto full = static_cast<std::uint8_t>((1u << n) - 1u);
  Form berezin(n);
  for (const auto& [m, c] : expy.terms()) {
    if (m.varpi != full) continue;
    FormMonomial r = m;
    r.varpi = 0;
    berezin.add_term(r, c);
  }
  const RadialScalar two_pi = RadialScalar::pi() * 2;
  return {berezin.scaled(gauss / two_pi.pow(n)), "mathai_quillen", n};
}

Form mathai_quillen_n2_closed_form() {
  const RadialScalar f = -exp_of(-tt() / 4) / (RadialScalar::pi() * 4);
  return (Form::psi(2, 0) * Form::psi(2, 1)).scaled(derive(f) * 4) + Form::omega(2, 0, 1).scaled(f * 2);
}

bool invariance_scan(const Form& form) {
  for (const auto& [m, c] : form.terms())
    if (!c.is_radial()) return false;
  return true;
}

MetricSpec degenerate_spec(int n, const RadialScalar& t0, const RadialScalar& sigma) {
  MetricSpec s = MetricSpec::from_scalars(n, t0 / tt(), -tt().inverse(), sigma);
  s.label = "phi=ln(" + t0.str() + "/t)";
  return s;
}

double max_numeric_value(const Form& form, const std::vector<double>& ts, const Bindings& b, unsigned seed) {
  const int n = form.dim();
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  double worst = 0;
  for (double t : ts) {
    std::vector<double> v(n), om(n * n, 0.0);
    double norm = 0;
    for (auto& x : v) {
      x = g(rng);
      norm += x * x;
    }
    for (auto& x : v) x *= std::sqrt(t / norm);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        om[i * n + j] = g(rng);
        om[j * n + i] = -om[i * n + j];
      }
    worst = std::max(worst, substitute_numeric(form, v, om, b).max_abs());
  }
  return worst;
}

double sphere_volume(int n) {
  const int d = n / 2;
  return 2 * std::pow(M_PI, d) / static_cast<double>(factorial(d - 1));
}

QuadratureResult fiber_integral(const RadialScalar& f, int n, const QuadratureSpec& q, const Bindings& b) {
  check_even(n);
  const int d = n / 2;
  const double vol = sphere_volume(n), r_max = q.r_max;
  auto value = [&](double t) {
    const double x = eval(f, t, b);
    if (std::isnan(x)) throw QuadratureDiverged("integrand is undefined at t = " + std::to_string(t));
    return x;
  };
  QuadratureResult out;

  // Decay check on a geometric grid beyond r_max^2.
  std::vector<double> ratio;
  for (int k = 0; k <= 12; ++k) {
    const double t = r_max * r_max * std::pow(4.0, k);
    ratio.push_back(std::abs(value(t)) * std::pow(t, d + 0.5));
  }
  for (double r : ratio) out.tail_constant = std::max(out.tail_constant, r);
  if (!std::isfinite(out.tail_constant) || ratio.back() > 2 * ratio[6] + 1e-300)
    throw QuadratureDiverged("integrand decays slower than t^{-n/2-1/2}");

  using boost::math::quadrature::gauss_kronrod;
  auto radial = [&](double r) { return vol * value(r * r) * std::pow(r, n - 1); };
  double err_inner = 0, err_tail = 0;
  const double inner = gauss_kronrod<double, 31>::integrate(radial, 0.0, r_max, 12, q.tolerance * 1e-2, &err_inner);
  auto tail = [&](double s) {
    if (s <= 0) return 0.0;
    const double r = r_max / s;
    return radial(r) * r_max / (s * s);
  };
  out.tail = gauss_kronrod<double, 31>::integrate(tail, 0.0, 1.0, 12, q.tolerance * 1e-2, &err_tail);
  out.value = inner + out.tail;
  out.error_estimate = err_inner + err_tail;
  if (!std::isfinite(out.value) || out.error_estimate > q.tolerance) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "quadrature error estimate %.3e exceeds the tolerance %.3e", out.error_estimate,
                  q.tolerance);
    throw QuadratureDiverged(buf);
  }
  return out;
}

QuadratureResult fiber_integral(const ThomRepresentative& r, const QuadratureSpec& q, const Bindings& b) {
  const PolyCoefficient top = top_psi_coefficient(r.form);
  if (!top.is_radial()) throw NonRadialTopTerm("Psi-top coefficient depends on v beyond t");
  return fiber_integral(top.radial_part(), r.n, q, b);
}

}  // namespace thom
