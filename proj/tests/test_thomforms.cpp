#include <doctest.h>

#include <cmath>

#include "thom/errors.hpp"
#include "thom/thomforms.hpp"

using namespace thom;

namespace {

const RadialScalar t = RadialScalar::t();
RadialScalar rs(long p, long q = 1) { return RadialScalar(mpq_class(p, q)); }

Form pf_omega(int n) {
  FormMatrix m(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Form::omega(n, i, j);
  return pfaffian(m);
}

}  // namespace

TEST_CASE("flat Euler class is 2^{n/2} Pf(Omega)") {
  for (int n : {2, 4, 6}) {
    const ThomRepresentative e = euler_class(MetricSpec::from_scalars(n, 1, 0, 0));
    CHECK(e.form == pf_omega(n).scaled(RadialScalar(1L << (n / 2))));
  }
}

TEST_CASE("general Euler class is equivariantly closed") {
  for (int n : {2, 4}) {
    const MetricSpec g = MetricSpec::generic(n);
    const Form e = euler_class(g).form;
    CHECK(e == euler_class_trace_form(g).form);
    CHECK(is_zero(equivariant_differential(e)));
    const SoNElement lambda(n, [&] {
      std::vector<mpq_class> x(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          x[i * n + j] = i + 2 * j - 3;
          x[j * n + i] = -x[i * n + j];
        }
      return x;
    }());
    CHECK(is_zero(lie_action(lambda, LieScope::Full, e)));
  }
}

TEST_CASE("n = 2 reduction") {
  const MetricSpec g = MetricSpec::generic(2);
  CHECK(is_zero(euler_class(g).form - n2_euler_closed_form(g)));
  const MetricSpec e = MetricSpec::from_expressions(2, parse_expression("-t/3"), parse_expression("t/(1+t)"));
  CHECK(is_zero(euler_class(e).form - n2_euler_closed_form(e)));
}

TEST_CASE("gauge decompositions") {
  for (int n : {2, 4}) {
    const MetricSpec g = MetricSpec::generic(n);
    const Form e = euler_class(g).form;
    const GaugeDecomposition d1 = euler_via_gauge(g, Gauge::D1, e);
    const GaugeDecomposition d2 = euler_via_gauge(g, Gauge::D2, e);
    CHECK(d1.agrees);
    CHECK(d2.agrees);
    if (n == 2) {
      const RadialScalar f = n2_f(g);
      CHECK(is_zero(d1.top_coefficient - derive(f) * 4));
      CHECK(is_zero(d2.top_coefficient - f * 2));
    }
  }
  const MetricSpec flat = MetricSpec::from_scalars(4, 1, 0, 0);
  const GaugeDecomposition d2 = euler_via_gauge(flat, Gauge::D2);
  CHECK(d2.agrees);
  CHECK(d2.top_coefficient == rs(4));
  CHECK(top_psi_coefficient(euler_class(flat).form).is_zero());
  CHECK_THROWS_AS(euler_via_gauge(flat, Gauge::D1), GaugeSingular);
}

TEST_CASE("Det M first integral") {
  for (int n : {2, 4}) {
    const FirstIntegral fi = det_m_first_integral(MetricSpec::generic(n));
    CHECK(fi.factorization);
    CHECK(fi.alternative_forms);
  }
  CHECK(det_m_first_integral(MetricSpec::from_scalars(2, 1, 0, 0)).g.is_zero_symbolic());
  CHECK(m_matrix(MetricSpec::from_scalars(2, 1, 0, 0)).det().is_zero_symbolic());
  CHECK_THROWS_AS(det_m_first_integral(degenerate_spec(2, 1, 0)), DegenerateKernel);
}

TEST_CASE("sigma from the Det M = 0 constraint") {
  const RadialScalar t0 = RadialScalar::t0();
  CHECK(sigma_from_constraint(0, t0) == t0.inverse());
  const MetricSpec g = constrained_spec(4, exp_of_phi(), RadialScalar::c(0), t0);
  const MMatrix m = m_matrix(g);
  CHECK(is_zero(m.det()));
  const RadialScalar k = RadialScalar(1) + t * RadialScalar::c(0);
  const RadialScalar k0 = RadialScalar(1) + (t0 + t) * RadialScalar::c(0);
  const RadialScalar pre = k / t0;
  CHECK(is_zero(m.m11 + pre * k));
  CHECK(is_zero(m.m12 - pre * k0 / (t0 + t)));
  CHECK(is_zero(m.m21 - pre * k * (t0 + t)));
  CHECK(is_zero(m.m22 + pre * k0));
  CHECK(is_zero(g.sqrt_h * g.sqrt_h - g.one_plus_t_sigma()));
  CHECK(is_zero(g.one_plus_t_sigma() - k * k * (RadialScalar(1) + t / t0)));
  CHECK(is_zero(det_m_first_integral(g).g - t0.inverse()));
  CHECK_THROWS_AS(sigma_from_constraint(-t.inverse(), t0), DegenerateKernel);
}

TEST_CASE("Harvey-Lawson rigidity") {
  for (int n : {2, 4}) {
    for (const RadialScalar& t0 : {RadialScalar::t0(), rs(4)}) {
      const Form hl = harvey_lawson(t0, n).form;
      CHECK(is_zero(equivariant_differential(hl)));
      CHECK(invariance_scan(hl));
      for (const char* phi : {"0", "-t/2", "ln(1+t)"}) {
        const MetricSpec g = constrained_spec(n, parse_expression(phi), t0);
        CHECK(euler_class(g).form == hl);
      }
      const MetricSpec sym = constrained_spec(n, exp_of_phi(), RadialScalar::c(0), t0);
      CHECK(is_zero(euler_class_trace_form(sym).form - hl));
    }
  }
  // n = 2 against the F form: F = (t0/(t0+t))^{1/2}, 4F' = -2F/(t0+t).
  const RadialScalar t0 = RadialScalar::t0();
  const MetricSpec g = constrained_spec(2, parse_expression("-t/2"), t0);
  const RadialScalar f = n2_f(g);
  CHECK(is_zero(f * f - t0 / (t0 + t)));
  CHECK(is_zero(derive(f) * 4 + f * 2 / (t0 + t)));
}

TEST_CASE("normalized Thom form") {
  for (int n : {2, 4}) {
    const RadialScalar t0 = RadialScalar::t0();
    const Form tv = normalized_thom(t0, n).form;
    const Form hl = harvey_lawson(t0, n).form;
    const int d = n / 2;
    RadialScalar scale = (RadialScalar::pi() * 4).pow(d).inverse();
    if (d % 2) scale = -scale;
    CHECK(is_zero(tv - hl.scaled(scale)));
    CHECK(is_zero(equivariant_differential(tv)));
  }
  const PolyCoefficient top = top_psi_coefficient(normalized_thom(1, 2).form);
  CHECK(top.is_radial());
  CHECK(is_zero(top.radial_part() - (RadialScalar::pi() * 2).inverse() / ((t + 1) * sqrt_of(t + 1))));
  for (int n : {2, 4})
    for (long t0 : {1L, 4L}) {
      const QuadratureResult r = fiber_integral(normalized_thom(rs(t0), n), {}, {});
      CHECK(std::abs(r.value - 1) < 1e-8);
    }
}

TEST_CASE("Mathai-Quillen representative") {
  const ThomRepresentative u2 = mathai_quillen(2);
  CHECK(u2.form == mathai_quillen_n2_closed_form());
  for (int n : {2, 4}) {
    const ThomRepresentative u = mathai_quillen(n);
    CHECK(is_zero(equivariant_differential(u.form)));
    CHECK(invariance_scan(u));
    const QuadratureResult r = fiber_integral(u, {}, {});
    CHECK(std::abs(r.value - 1) < 1e-8);
  }
}

TEST_CASE("invariance scan") {
  CHECK(invariance_scan(harvey_lawson(rs(1), 4)));
  CHECK_FALSE(invariance_scan(euler_class(MetricSpec::generic(4))));
  CHECK(invariance_scan(euler_class(MetricSpec::generic(2))));
  const MetricSpec e = MetricSpec::from_expressions(4, parse_expression("-t/2"), parse_expression("1/(1+t)"));
  CHECK_FALSE(is_zero(m_matrix(e).det()));
  CHECK_FALSE(invariance_scan(euler_class(e)));
  const GaugeDecomposition d2 = euler_via_gauge(e, Gauge::D2);
  CHECK(d2.agrees);
  CHECK_FALSE(is_zero(d2.b_coefficient));
  CHECK_FALSE(invariance_scan(*d2.b_term));
}

TEST_CASE("degenerate kernel") {
  for (int n : {2, 4}) {
    const MetricSpec g = degenerate_spec(n, rs(2), t / (t * t + 1));
    const double worst = max_numeric_value(euler_class(g).form, {0.5, 1, 2}, {});
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("fiber integral") {
  const QuadratureSpec q;
  const RadialScalar gauss = exp_of(-t / 4) / (RadialScalar::pi() * 4);
  CHECK(std::abs(fiber_integral(gauss, 2, q, {}).value - 1) < 1e-8);
  const RadialScalar slow = (RadialScalar::pi() * 2).inverse() / ((t + 1) * sqrt_of(t + 1));
  const QuadratureResult r = fiber_integral(slow, 2, q, {});
  CHECK(std::abs(r.value - 1) < 1e-8);
  CHECK(r.tail > 0.01);
  CHECK(fiber_integral(RadialScalar(), 4, q, {}).value == 0);
  CHECK_THROWS_AS(fiber_integral((t + 1).inverse(), 2, q, {}), QuadratureDiverged);
  CHECK(sphere_volume(2) == doctest::Approx(2 * M_PI));
  CHECK(sphere_volume(4) == doctest::Approx(2 * M_PI * M_PI));

  Form nonradial = Form::psi(2, 0) * Form::psi(2, 1) * Form::v(2, 0);
  CHECK_THROWS_AS(fiber_integral(ThomRepresentative{nonradial, "x", 2}, q, {}), NonRadialTopTerm);
}
