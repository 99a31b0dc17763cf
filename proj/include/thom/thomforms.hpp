#pragma once

// Thom-class representatives: the two-function family built from the
// equivariant Euler class of an invariant metric, its Det M = 0 reduction
// (Harvey-Lawson), the Gaussian Mathai-Quillen form, and the radial fiber
// integral used to check normalization.

#include <optional>
#include <string>
#include <vector>

#include "thom/geometry.hpp"
#include "thom/pfaffian.hpp"

namespace thom {

struct ThomRepresentative {
  Form form;
  /// "general(...)", "mathai_quillen", "harvey_lawson", "normalized".
  std::string provenance;
  int n = 2;
};

/// sqrt(det g) = e^{n phi / 2} (1 + t sigma)^{1/2}.
RadialScalar sqrt_det_metric(const MetricSpec& spec);

/// 2^{n/2} sqrt(g) Pf(R_eq) with R_eq from the metric pipeline.
ThomRepresentative euler_class(const MetricSpec& spec);
/// Same form assembled from the trace form of R_eq.
ThomRepresentative euler_class_trace_form(const MetricSpec& spec);

/// F = (1 + tC) / (1 + t sigma)^{1/2}; E = 4 F' Psi^1 Psi^2 + 2 F Omega^12 at n = 2.
RadialScalar n2_f(const MetricSpec& spec);
Form n2_euler_closed_form(const MetricSpec& spec);

enum class Gauge { D1, D2 };

struct GaugeDecomposition {
  Gauge which = Gauge::D1;
  RadialScalar d;
  /// 2^{n/2} (1 + t sigma)^{(1-n)/2} (1 + tD)^{-1} Pf(Tr M(D) N).
  Form form;
  /// D1: closed-form coefficient of Psi^1...Psi^n.
  /// D2: closed-form coefficient of Pf(Omega).
  RadialScalar top_coefficient;
  /// D2 only: A^{ij} = M11 Psi^i Psi^j + M21 Omega^{ij}, B^{ij} = N21^{ij}
  /// and E = a_term + b_term with
  ///   a_term = 2^{n/2} (1 + t sigma)^{(1-n)/2} (1 + t M22/M21) Pf A,
  ///   b_term = -(1 + t sigma)^{(1-n)/2} (Det M / M21) (d/d!) eps B A...A.
  std::optional<Form> a_term, b_term;
  /// Det M / M21, the coefficient of the part that is not so(n)-invariant in v.
  RadialScalar b_coefficient;
  /// form == E, the top part of E matches top_coefficient and, for D2,
  /// E == a_term + b_term.
  bool agrees = false;
};

/// Throws GaugeSingular if the chosen gauge does not exist.
GaugeDecomposition euler_via_gauge(const MetricSpec& spec, Gauge which);
GaugeDecomposition euler_via_gauge(const MetricSpec& spec, Gauge which, const Form& euler);

struct FirstIntegral {
  /// G = sigma/(1+tC)^2 + 1/(t(1+tC)^2) - 1/t.
  RadialScalar g;
  /// Det M == (1+tC)^3 dG/dt.
  bool factorization = false;
  /// G == -M11/(1+tC)^2 == ((1+t sigma) - (1+tC)^2) / (t (1+tC)^2).
  bool alternative_forms = false;
};

/// Throws DegenerateKernel if 1 + tC vanishes identically.
FirstIntegral det_m_first_integral(const MetricSpec& spec);

/// sigma = (1+tC)^2/t0 + C(2 + tC), the solution of G = 1/t0.
RadialScalar sigma_from_constraint(const RadialScalar& c, const RadialScalar& t0);

/// The Det M = 0 metric with e^phi = u and phi' = c. sqrt(1 + t sigma) is
/// taken as (1+tC) sqrt(t0 (t0 + t)) / t0, assuming 1 + tC > 0.
MetricSpec constrained_spec(int n, const RadialScalar& u, const RadialScalar& c, const RadialScalar& t0);
MetricSpec constrained_spec(int n, const Expr& phi, const RadialScalar& t0);

/// 2^{n/2} (t0/(t0+t))^{1/2} Pf(Omega - Psi Psi / (t0 + t)).
ThomRepresentative harvey_lawson(const RadialScalar& t0, int n);
/// (2 pi)^{-n/2} (t0/(t0+t))^{1/2} Pf(Psi Psi / (t0 + t) - Omega).
ThomRepresentative normalized_thom(const RadialScalar& t0, int n);

/// (2 pi)^{-n} int db dvarpi exp(i s(varpi.v + i (varpi, b))), with the
/// b-integral done by completing the square and the varpi-integral by
/// Berezin integration (int dvarpi varpi_1 ... varpi_n = 1).
ThomRepresentative mathai_quillen(int n);
/// Closed form at n = 2: (1/4 pi) e^{-t/4} (Psi^1 Psi^2 - 2 Omega^12).
Form mathai_quillen_n2_closed_form();

/// True iff every coefficient is radial, i.e. v enters only through t.
bool invariance_scan(const Form& form);
inline bool invariance_scan(const ThomRepresentative& r) { return invariance_scan(r.form); }

/// e^phi = t0/t, so 1 + tC = 0.
MetricSpec degenerate_spec(int n, const RadialScalar& t0, const RadialScalar& sigma);
/// Largest |component| of the form at random v with |v|^2 = t and random
/// Omega, over the given t.
double max_numeric_value(const Form& form, const std::vector<double>& ts, const Bindings& b, unsigned seed = 1);

struct QuadratureSpec {
  double r_max = 16.0;
  double tolerance = 1e-10;
};

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  /// Mass beyond r_max, integrated after r = r_max / s.
  double tail = 0;
  /// K in |f(t)| <= K t^{-d-1/2} on t >= r_max^2.
  double tail_constant = 0;
};

/// Vol(S^{n-1}) = 2 pi^{n/2} / (n/2 - 1)!.
double sphere_volume(int n);

/// Vol(S^{n-1}) int_0^inf f(r^2) r^{n-1} dr. Throws QuadratureDiverged when
/// f does not decay like t^{-d-1/2} or the error estimate exceeds the
/// tolerance.
QuadratureResult fiber_integral(const RadialScalar& f, int n, const QuadratureSpec& q, const Bindings& b);
/// Integrates the Psi^1...Psi^n coefficient; NonRadialTopTerm if it depends
/// on v other than through t.
QuadratureResult fiber_integral(const ThomRepresentative& r, const QuadratureSpec& q, const Bindings& b);

}  // namespace thom
