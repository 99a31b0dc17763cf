// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "thom/errors.hpp"
#include "thom/thomforms.hpp"

using namespace thom;

namespace {

const RadialScalar t = RadialScalar::t();

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool christoffels_equal(const Christoffel& a, const Christoffel& b) {
  const int n = a.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!is_zero(a(k, i, j) - b(k, i, j))) return false;
  return true;
}

void ac1(Criterion& c) {
  for (int n : {2, 4}) {
    const auto start = std::chrono::steady_clock::now();
    const MetricSpec g = MetricSpec::generic(n);
    const std::string at = " (n=" + std::to_string(n) + ")";
    c.require(is_zero(metric(g) * inverse_metric(g) - FormMatrix::identity(n, n)), "g g^-1 = Id" + at);
    c.require(christoffels_equal(christoffel(g), christoffel_closed_form(g)), "Christoffel closed form" + at);
    c.require(is_zero(equivariant_curvature(g) - equivariant_curvature_trace_form(g)), "R_eq = trace form" + at);
    const MMatrix m = m_matrix(g);
    c.require(is_zero(m.m21 - g.one_plus_t_sigma()), "M21 = 1 + t sigma" + at);
    c.require(is_zero(m.m22 - (g.c - g.sigma)), "M22 = C - sigma" + at);
    const double s = seconds_since(start);
    c.require(s < 60, "runtime < 60 s" + at);
    c.note("n=" + std::to_string(n) + " " + fmt("%.2f s", s));
  }
}

void ac2(Criterion& c) {
  for (int n : {2, 4}) {
    const std::string at = " (n=" + std::to_string(n) + ")";
    c.require(is_zero(equivariant_differential(euler_class(MetricSpec::generic(n)).form)), "s(E) = 0 general" + at);
    c.require(is_zero(equivariant_differential(mathai_quillen(n).form)), "s(U_MQ) = 0" + at);
    c.require(is_zero(equivariant_differential(harvey_lawson(RadialScalar::t0(), n).form)), "s(E_HL) = 0" + at);
  }
}

void ac3(Criterion& c) {
  const MetricSpec g = MetricSpec::generic(2);
  const RadialScalar f = (RadialScalar(1) + t * g.c) / sqrt_of(g.one_plus_t_sigma());
  const Form expected = (Form::psi(2, 0) * Form::psi(2, 1)).scaled(derive(f) * 4) + Form::omega(2, 0, 1).scaled(f * 2);
  c.require(is_zero(euler_class(g).form - expected), "E = 4F' Psi1 Psi2 + 2F Omega12");
  const RadialScalar fmq = -exp_of(-t / 4) / (RadialScalar::pi() * 4);
  const Form mq = (Form::psi(2, 0) * Form::psi(2, 1)).scaled(derive(fmq) * 4) + Form::omega(2, 0, 1).scaled(fmq * 2);
  c.require(is_zero(mathai_quillen(2).form - mq), "Gaussian/Berezin construction = F = -(1/4pi) e^{-t/4}");
}

void ac4(Criterion& c) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  int trials = 0;
  for (int n : {2, 4, 6})
    for (int k = 0; k < 100; ++k, ++trials) {
      Matrix<double> a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          a(i, j) = u(rng);
          a(j, i) = -a(i, j);
        }
      const double pf = pfaffian(a), det = determinant(a);
      worst = std::max(worst, std::abs(pf * pf - det) / std::max(std::abs(det), 1e-300));
    }
  c.require(worst <= 1e-9, "Pf^2 = Det");
  c.note(std::to_string(trials) + " trials, max rel " + fmt("%.1e", worst));

  const RadialScalar d = RadialScalar::c(0) / (t + 1), e = RadialScalar::s(0);
  for (int n : {2, 4}) {
    const std::string at = " (n=" + std::to_string(n) + ")";
    FormMatrix a(n, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          a(i, j) = Form::omega(n, i, j).scaled(RadialScalar(i + j + 1)) +
                    (Form::psi(n, i) * Form::psi(n, j)).scaled(RadialScalar::s(1));
    const FormMatrix s = s_matrix(n, d);
    const Form det_s = determinant(s);
    c.require(is_zero(det_s - Form(n, RadialScalar(1) + t * d)), "Det S(D) = 1 + tD" + at);
    c.require(is_zero(pfaffian(conjugate(a, s)) - det_s * pfaffian(a)), "Pf(S^t A S) = Det S Pf A" + at);
    c.require(is_zero(s * s_matrix(n, e) - s_matrix(n, d + e + t * d * e)), "S(D) S(E) = S(D + E + tDE)" + at);
  }
}

void ac5(Criterion& c) {
  const FirstIntegral fi = det_m_first_integral(MetricSpec::generic(2));
  c.require(fi.factorization, "Det M = (1+tC)^3 G'");
  c.require(fi.alternative_forms, "G = -M11/(1+tC)^2");
  const RadialScalar t0 = RadialScalar::t0();
  const MetricSpec sym = constrained_spec(4, exp_of_phi(), RadialScalar::c(0), t0);
  c.require(is_zero(m_matrix(sym).det()), "Det M = 0 after sigma_from_constraint");
  int matched = 0;
  for (int n : {2, 4}) {
    const Form hl = harvey_lawson(t0, n).form;
    for (const char* phi : {"0", "-t/2", "ln(1+t)"}) {
      const bool same = euler_class(constrained_spec(n, parse_expression(phi), t0)).form == hl;
      c.require(same, std::string("rigidity phi=") + phi + " n=" + std::to_string(n));
      matched += same;
    }
  }
  c.note(std::to_string(matched) + "/6 (phi, n) pairs equal the closed form");
}

void ac6(Criterion& c) {
  c.require(invariance_scan(euler_class(MetricSpec::generic(2))), "n=2 generic is invariant");
  c.require(invariance_scan(euler_class(MetricSpec::from_expressions(2, parse_expression("-t/2"),
                                                                     parse_expression("1/(1+t)")))),
            "n=2 expression spec is invariant");
  const MetricSpec hl = constrained_spec(4, parse_expression("ln(1+t)"), RadialScalar(4));
  c.require(is_zero(m_matrix(hl).det()) && invariance_scan(euler_class(hl)), "Det M = 0, n=4 is invariant");
  const MetricSpec g = MetricSpec::generic(4);
  const Form e = euler_class(g).form;
  c.require(!invariance_scan(e), "generic n=4 is not invariant");
  const GaugeDecomposition d2 = euler_via_gauge(g, Gauge::D2, e);
  c.require(d2.agrees, "E = A-term + B-term");
  c.require(!is_zero(d2.b_coefficient), "B-term coefficient Det M / M21 is nonzero");
}

void ac7(Criterion& c) {
  const QuadratureSpec q;
  double worst = 0, slowest = 0;
  auto check = [&](const ThomRepresentative& r, const std::string& what) {
    const auto start = std::chrono::steady_clock::now();
    const double dev = std::abs(fiber_integral(r, q, {}).value - 1);
    const double s = seconds_since(start);
    worst = std::max(worst, dev);
    slowest = std::max(slowest, s);
    c.require(dev <= 1e-8, what);
    c.require(s < 5, what + " runtime");
  };
  for (int n : {2, 4})
    for (long t0 : {1L, 4L})
      check(normalized_thom(RadialScalar(t0), n), "T_V n=" + std::to_string(n) + " t0=" + std::to_string(t0));
  for (int n : {2, 4}) check(mathai_quillen(n), "MQ n=" + std::to_string(n));
  c.note("max |I - 1| " + fmt("%.1e", worst) + ", slowest " + fmt("%.3f s", slowest));
}

void ac8(Criterion& c) {
  double worst = 0;
  for (int n : {2, 4})
    for (long t0 : {1L, 3L}) {
      const MetricSpec g = degenerate_spec(n, RadialScalar(t0), t / (t * t + 1));
      worst = std::max(worst, max_numeric_value(euler_class(g).form, {0.5, 1.0, 2.0}, {}, 17));
    }
  c.require(worst < 1e-10, "|E| < 1e-10");
  c.note("max |E| " + fmt("%.1e", worst));
}

void ac9(Criterion& c) {
  for (int n : {2, 4}) {
    const std::string at = " (n=" + std::to_string(n) + ")";
    const Form i(n, RadialScalar::i());
    Form w_dot_v(n), b_dot_v(n), w_dot_psi(n), w_b(n), b_b(n), lw_w(n);
    for (int k = 0; k < n; ++k) {
      w_dot_v += Form::v(n, k) * Form::varpi(n, k);
      b_dot_v += Form::v(n, k) * Form::b(n, k);
      w_dot_psi += Form::psi(n, k) * Form::varpi(n, k);
      w_b += Form::varpi(n, k) * Form::b(n, k);
      b_b += Form::b(n, k) * Form::b(n, k);
      Form lw(n);
      for (int m = 0; m < n; ++m) lw += Form::omega(n, k, m) * Form::varpi(n, m);
      lw_w += lw * Form::varpi(n, k);
    }
    c.require(equivariant_differential(w_dot_v) == b_dot_v + w_dot_psi, "s(varpi.v) = b.v + varpi.Psi" + at);
    c.require(equivariant_differential(w_dot_v + i * w_b) == b_dot_v + w_dot_psi + i * b_b - i * lw_w,
              "s(varpi.v + i(varpi,b)) expansion" + at);
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      std::vector<Form> gens{Form::v(n, k), Form::psi(n, k), Form::varpi(n, k), Form::b(n, k)};
      for (int l = k + 1; l < n; ++l) gens.push_back(Form::omega(n, k, l));
      for (const Form& g : gens) ok = ok && equivariant_differential(equivariant_differential(g)) == -omega_action(g);
    }
    c.require(ok, "s^2 = -L(Omega) on generators" + at);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"AC1 exact pipeline identities, symbolic n in {2,4}", ac1},
      {"AC2 equivariant closedness (general, MQ, HL)", ac2},
      {"AC3 n=2 reduction and Mathai-Quillen specialization", ac3},
      {"AC4 Pfaffian and S(D) laws", ac4},
      {"AC5 Det M = 0 first integral, constraint and rigidity", ac5},
      {"AC6 invariance criterion", ac6},
      {"AC7 normalization within 1e-8", ac7},
      {"AC8 degenerate kernel vanishes", ac8},
      {"AC9 superalgebra identities", ac9},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const Error& e) {
      c.ok = false;
      c.notes.push_back(std::string("error: ") + e.kind() + ": " + e.what());
    }
    std::string notes;
    for (const auto& n : c.notes) notes += (notes.empty() ? "" : "; ") + n;
    std::printf("%s %s [%.2f s]%s%s\n", c.ok ? "PASS" : "FAIL", name.c_str(), seconds_since(start),
                notes.empty() ? "" : " ", notes.c_str());
    failed += !c.ok;
  }
  return failed ? 1 : 0;
}
