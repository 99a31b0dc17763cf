#include "thom/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "thom/errors.hpp"

namespace thom::cli {

namespace {

using nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(x);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

mpq_class parse_t0(const std::string& v) {
  try {
    return parse_rational(v);
  } catch (const Error&) {
    throw ConfigError("t0: expected a rational number, got '" + v + "'");
  }
}

void set_scalar(Config& c, const std::string& key, const std::string& value) {
  if (key == "n") {
    c.n = parse_int(key, value);
  } else if (key == "phi") {
    c.phi = value;
  } else if (key == "sigma") {
    c.sigma = value;
  } else if (key == "t0") {
    c.t0 = parse_t0(value);
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "checks") {
    c.checks = value == "all" ? std::vector<std::string>{} : split_list(value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

Config parse_text(std::string_view text) {
  Config c;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (trim(raw).empty()) continue;
    const bool indented = raw[0] == ' ' || raw[0] == '\t';
    const std::string line = trim(raw);
    const std::string where = " on line " + std::to_string(line_no);
    if (indented && section == "checks" && line.rfind("- ", 0) == 0) {
      c.checks.push_back(trim(line.substr(2)));
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ConfigError("expected 'key: value'" + where);
    const std::string key = trim(line.substr(0, colon)), value = trim(line.substr(colon + 1));
    try {
      if (indented) {
        if (section != "quadrature") throw ConfigError("unexpected indented entry");
        if (key == "tolerance")
          c.quadrature.tolerance = parse_double(key, value);
        else if (key == "r_max")
          c.quadrature.r_max = parse_double(key, value);
        else
          throw ConfigError("unknown quadrature key '" + key + "'");
        continue;
      }
      section.clear();
      if (value.empty()) {
        if (key != "quadrature" && key != "checks") throw ConfigError("missing value for '" + key + "'");
        section = key;
        if (key == "checks") c.checks.clear();
        continue;
      }
      set_scalar(c, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(e.what()) + where);
    }
  }
  return c;
}

std::string json_scalar(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  if (v.is_number()) {
    std::ostringstream s;
    s.precision(17);
    s << v.get<double>();
    return s.str();
  }
  throw ConfigError("unsupported JSON value " + v.dump());
}

Config parse_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("JSON configuration must be an object");
  Config c;
  for (const auto& [key, value] : j.items()) {
    if (key == "quadrature") {
      if (!value.is_object()) throw ConfigError("quadrature must be an object");
      for (const auto& [k, v] : value.items()) {
        if (!v.is_number()) throw ConfigError("quadrature." + k + " must be a number");
        if (k == "tolerance")
          c.quadrature.tolerance = v.get<double>();
        else if (k == "r_max")
          c.quadrature.r_max = v.get<double>();
        else
          throw ConfigError("unknown quadrature key '" + k + "'");
      }
    } else if (key == "checks" && value.is_array()) {
      c.checks.clear();
      for (const auto& id : value) c.checks.push_back(json_scalar(id));
    } else {
      set_scalar(c, key, json_scalar(value));
    }
  }
  return c;
}

std::optional<Expr> expression(const std::string& src, const char* key) {
  if (src == "generic" || src == "constrained") return std::nullopt;
  try {
    return parse_expression(src);
  } catch (const ParseError& e) {
    std::string what = e.what();
    what.erase(what.rfind(" at offset "));
    throw ParseError(std::string(key) + ": " + what, e.offset());
  }
}

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// ----------------------------------------------------------------- checks

struct Context {
  const Config& config;
  MetricSpec spec;
  RadialScalar t0;
  std::optional<Form> euler;

  const Form& euler_form() {
    if (!euler) euler = euler_class(spec).form;
    return *euler;
  }
};

struct Outcome {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::optional<double> residual;
  std::vector<std::pair<std::string, std::string>> artifacts;
  bool skipped = false;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
  void numeric(double r, double tol, const std::string& what) {
    residual = std::max(residual.value_or(0.0), r);
    require(r <= tol, what + " residual " + number(r));
  }
};

bool zero_matrix(const FormMatrix& m) { return is_zero(m); }

void check_metric(Context& cx, Outcome& o) {
  const int n = cx.spec.n;
  const FormMatrix g = metric(cx.spec), gi = inverse_metric(cx.spec);
  o.require(zero_matrix(g * gi - FormMatrix::identity(n, n)), "g g^-1 != Id");
  o.require(zero_matrix(g - g.transpose()), "g is not symmetric");
}

void check_christoffel(Context& cx, Outcome& o) {
  const Christoffel a = christoffel(cx.spec), b = christoffel_closed_form(cx.spec);
  const int n = cx.spec.n;
  bool same = true;
  for (int k = 0; k < n && same; ++k)
    for (int i = 0; i < n && same; ++i)
      for (int j = 0; j < n && same; ++j) same = is_zero(a(k, i, j) - b(k, i, j));
  o.require(same, "Christoffel definition differs from the closed form");
  o.require(zero_matrix(connection_matrix(a) - connection_closed_form(cx.spec)),
            "connection matrix differs from the A, B, C form");
}

void check_trace_form(Context& cx, Outcome& o) {
  const FormMatrix r = equivariant_curvature(cx.spec);
  o.require(zero_matrix(r - equivariant_curvature_trace_form(cx.spec)), "R_eq differs from the trace form");
  o.require(zero_matrix(r + r.transpose()), "R_eq is not antisymmetric");
  const MMatrix m = m_matrix(cx.spec);
  o.require(is_zero(m.m21 - cx.spec.one_plus_t_sigma()), "M21 != 1 + t sigma");
  o.require(is_zero(m.m22 - (cx.spec.c - cx.spec.sigma)), "M22 != C - sigma");
  const RadialScalar d = RadialScalar::t() + cx.spec.c;
  o.require(sbar_conjugate(n_matrix(cx.spec.n), d).agree, "S(D) N S(D) != Sbar(D) N");
}

void check_closedness(Context& cx, Outcome& o) {
  o.require(is_zero(equivariant_differential(cx.euler_form())), "s(E) != 0 for the configured metric");
  o.require(is_zero(equivariant_differential(harvey_lawson(cx.t0, cx.spec.n).form)), "s(E_HL) != 0");
  o.require(is_zero(equivariant_differential(mathai_quillen(cx.spec.n).form)), "s(U_MQ) != 0");
}

void check_n2(Context& cx, Outcome& o) {
  const MetricSpec spec = build_spec(cx.config, 2);
  const Form e = euler_class(spec).form;
  o.require(is_zero(e - n2_euler_closed_form(spec)), "E != 4F' Psi1 Psi2 + 2F Omega12");
  const Form mq = mathai_quillen(2).form;
  o.require(mq == mathai_quillen_n2_closed_form(), "Gaussian/Berezin construction != F = -(1/4pi) e^{-t/4}");
  o.artifacts.emplace_back("euler_n2", e.str());
  o.artifacts.emplace_back("mathai_quillen_n2", mq.str());
}

void check_gauges(Context& cx, Outcome& o) {
  int usable = 0;
  for (Gauge g : {Gauge::D1, Gauge::D2}) {
    const char* name = g == Gauge::D1 ? "D1" : "D2";
    try {
      const GaugeDecomposition dec = euler_via_gauge(cx.spec, g, cx.euler_form());
      ++usable;
      o.require(dec.agrees, std::string(name) + " decomposition differs from E");
      o.artifacts.emplace_back(std::string(name) + "_top_coefficient", dec.top_coefficient.str());
    } catch (const GaugeSingular&) {
      o.notes.push_back(std::string(name) + " gauge is singular");
    }
  }
  if (!usable) o.skipped = true;
}

void check_first_integral(Context& cx, Outcome& o) {
  try {
    const FirstIntegral fi = det_m_first_integral(cx.spec);
    o.require(fi.factorization, "Det M != (1+tC)^3 G'");
    o.require(fi.alternative_forms, "G != -M11/(1+tC)^2");
    o.artifacts.emplace_back("G", fi.g.str());
  } catch (const DegenerateKernel&) {
    o.notes.push_back("1 + tC vanishes for the configured phi");
  }
  const MetricSpec constrained = build_spec([&] {
    Config c = cx.config;
    c.sigma = "constrained";
    return c;
  }(), cx.spec.n);
  o.require(is_zero(m_matrix(constrained).det()), "Det M != 0 after the constraint");
  o.require(is_zero(det_m_first_integral(constrained).g - cx.t0.inverse()), "G != 1/t0 after the constraint");
}

void check_rigidity(Context& cx, Outcome& o) {
  const int n = cx.spec.n;
  const Form hl = harvey_lawson(cx.t0, n).form;
  std::vector<MetricSpec> specs;
  Config c = cx.config;
  c.sigma = "constrained";
  specs.push_back(build_spec(c, n));
  for (const char* phi : {"0", "-t/2", "ln(1+t)"}) specs.push_back(constrained_spec(n, parse_expression(phi), cx.t0));
  for (const MetricSpec& s : specs) o.require(is_zero(euler_class(s).form - hl), "E != E_HL for " + s.label);
  o.artifacts.emplace_back("harvey_lawson", hl.str());
}

void check_mq(Context& cx, Outcome& o) {
  const ThomRepresentative u = mathai_quillen(cx.spec.n);
  o.require(is_zero(equivariant_differential(u.form)), "s(U) != 0");
  o.require(invariance_scan(u), "U has explicit v dependence");
  if (u.n == 2) o.require(u.form == mathai_quillen_n2_closed_form(), "U != n = 2 closed form");
  const QuadratureSpec q{cx.config.quadrature.r_max, cx.config.quadrature.tolerance * 1e-2};
  o.numeric(std::abs(fiber_integral(u, q, {}).value - 1), cx.config.quadrature.tolerance, "int U");
  o.artifacts.emplace_back("mathai_quillen", u.form.str());
}

void check_normalization(Context& cx, Outcome& o) {
  const QuadratureSpec q{cx.config.quadrature.r_max, cx.config.quadrature.tolerance * 1e-2};
  const QuadratureResult tv = fiber_integral(normalized_thom(cx.t0, cx.spec.n), q, {});
  o.numeric(std::abs(tv.value - 1), cx.config.quadrature.tolerance, "int T_V");
  const QuadratureResult mq = fiber_integral(mathai_quillen(cx.spec.n), q, {});
  o.numeric(std::abs(mq.value - 1), cx.config.quadrature.tolerance, "int U");
  o.artifacts.emplace_back("integral_normalized", number(tv.value));
  o.artifacts.emplace_back("tail_normalized", number(tv.tail));
  o.artifacts.emplace_back("integral_mathai_quillen", number(mq.value));
}

void check_invariance(Context& cx, Outcome& o) {
  const int n = cx.spec.n;
  const bool det_zero = is_zero(m_matrix(cx.spec).det());
  const bool expected = n == 2 || det_zero;
  const bool scanned = invariance_scan(cx.euler_form());
  o.require(scanned == expected, std::string("invariance_scan = ") + (scanned ? "true" : "false") +
                                     " but Det M = 0 is " + (det_zero ? "true" : "false"));
  o.require(invariance_scan(harvey_lawson(cx.t0, n)), "Harvey-Lawson form is not invariant");
  o.artifacts.emplace_back("invariant", scanned ? "true" : "false");
}

void check_degenerate(Context& cx, Outcome& o) {
  const auto sigma = expression(cx.config.sigma, "sigma");
  const RadialScalar s = sigma ? to_scalar(*sigma) : RadialScalar();
  if (!sigma) o.notes.push_back("sigma = 0 used for the degenerate metric");
  const MetricSpec g = degenerate_spec(cx.spec.n, cx.t0, s);
  const double worst = max_numeric_value(euler_class(g).form, {0.5, 1.0, 2.0}, {},
                                         static_cast<unsigned>(cx.config.seed + 1));
  o.numeric(worst, 1e-10, "|E|");
}

using CheckFn = void (*)(Context&, Outcome&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"metric-identities", check_metric},
      {"christoffel-closed-form", check_christoffel},
      {"trace-form", check_trace_form},
      {"euler-closedness", check_closedness},
      {"n2-reduction", check_n2},
      {"gauge-decompositions", check_gauges},
      {"detM-first-integral", check_first_integral},
      {"harvey-lawson-rigidity", check_rigidity},
      {"mq-construction", check_mq},
      {"normalization", check_normalization},
      {"invariance-scan", check_invariance},
      {"degenerate-kernel", check_degenerate},
  };
  return r;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

std::string quote_if_needed(const std::string& s) {
  return s.find_first_of(":#") == std::string::npos && !s.empty() ? s : ordered_json(s).dump();
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, fn] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

Config parse_config(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string_view::npos && text[first] == '{' ? parse_json(text) : parse_text(text);
}

void validate_config(const Config& c) {
  if (c.n < 2 || c.n > 8 || c.n % 2) throw ConfigError("n must be even and between 2 and 8");
  if (c.t0 <= 0) throw ConfigError("t0 must be positive");
  if (!(c.quadrature.tolerance > 0)) throw ConfigError("quadrature.tolerance must be positive");
  if (!(c.quadrature.r_max > 0)) throw ConfigError("quadrature.r_max must be positive");
  if (c.phi == "constrained") throw ConfigError("phi cannot be 'constrained'");
  for (const auto& id : c.checks)
    if (std::find(check_ids().begin(), check_ids().end(), id) == check_ids().end())
      throw ConfigError("unknown check '" + id + "'");
  expression(c.phi, "phi");
  expression(c.sigma, "sigma");
  const MetricSpec spec = build_spec(c, c.n);
  if (c.phi != "generic" && c.sigma != "generic")
    validate(spec, c.quadrature.r_max * c.quadrature.r_max, 32);
}

MetricSpec build_spec(const Config& c, int n) {
  const auto phi = expression(c.phi, "phi");
  const auto sigma = expression(c.sigma, "sigma");
  const RadialScalar t0(c.t0);
  const RadialScalar u = phi ? to_scalar(Expr::exp(*phi)) : exp_of_phi();
  const RadialScalar cc = phi ? to_scalar(phi->derive()) : RadialScalar::c(0);
  MetricSpec spec;
  if (c.sigma == "constrained") {
    spec = constrained_spec(n, u, cc, t0);
  } else {
    spec = MetricSpec::from_scalars(n, u, cc, sigma ? to_scalar(*sigma) : RadialScalar::s(0));
  }
  spec.label = "phi=" + (phi ? phi->str() : c.phi) + ", sigma=" + (sigma ? sigma->str() : c.sigma);
  return spec;
}

bool Report::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.status == "fail"; });
}

Report run(const Config& config) {
  Report report{config, {}};
  Context cx{config, build_spec(config, config.n), RadialScalar(config.t0), std::nullopt};
  for (const auto& [id, fn] : registry()) {
    if (!config.checks.empty() && std::find(config.checks.begin(), config.checks.end(), id) == config.checks.end())
      continue;
    CheckResult r;
    r.id = id;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(cx, o);
    } catch (const Error& e) {
      o.ok = false;
      o.failures.push_back(std::string(e.kind()) + ": " + e.what());
    }
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.status = !o.ok ? "fail" : o.skipped ? "skipped" : "pass";
    r.residual = o.residual ? number(*o.residual) : o.ok ? "exact-zero" : "nonzero";
    std::vector<std::string> detail = o.failures;
    detail.insert(detail.end(), o.notes.begin(), o.notes.end());
    r.detail = join(detail, "; ");
    r.artifacts = std::move(o.artifacts);
    report.checks.push_back(std::move(r));
  }
  return report;
}

std::string render_config(const Config& c) {
  std::ostringstream s;
  s << "n: " << c.n << "\n";
  s << "phi: " << quote_if_needed(c.phi) << "\n";
  s << "sigma: " << quote_if_needed(c.sigma) << "\n";
  s << "t0: " << c.t0.get_str() << "\n";
  s << "seed: " << c.seed << "\n";
  s << "checks: " << (c.checks.empty() ? "all" : join(c.checks, ", ")) << "\n";
  s << "quadrature:\n";
  s << "  tolerance: " << number(c.quadrature.tolerance) << "\n";
  s << "  r_max: " << number(c.quadrature.r_max) << "\n";
  return s.str();
}

std::string render_text(const Report& report, bool timings) {
  std::ostringstream s;
  s << "thom verification report\n";
  s << "version: " << kVersion << "\n";
  s << "seed: " << report.config.seed << "\n";
  s << "config:\n";
  std::istringstream cfg(render_config(report.config));
  for (std::string line; std::getline(cfg, line);) s << "  " << line << "\n";
  s << "checks:\n";
  int pass = 0, fail = 0, skip = 0;
  for (const auto& r : report.checks) {
    (r.status == "pass" ? pass : r.status == "fail" ? fail : skip)++;
    s << "  - id: " << r.id << "\n";
    s << "    status: " << r.status << "\n";
    s << "    residual: " << r.residual << "\n";
    if (!r.detail.empty()) s << "    detail: " << quote_if_needed(r.detail) << "\n";
    if (timings) s << "    elapsed: " << number(r.elapsed) << "\n";
    if (!r.artifacts.empty()) {
      s << "    artifacts:\n";
      for (const auto& [k, v] : r.artifacts) s << "      " << k << ": " << v << "\n";
    }
  }
  s << "summary: " << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
  return s.str();
}

std::string render_json(const Report& report, bool timings) {
  const Config& c = report.config;
  ordered_json j;
  j["version"] = kVersion;
  j["seed"] = c.seed;
  j["config"] = {{"n", c.n},
                 {"phi", c.phi},
                 {"sigma", c.sigma},
                 {"t0", c.t0.get_str()},
                 {"seed", c.seed},
                 {"checks", c.checks.empty() ? check_ids() : c.checks},
                 {"quadrature", {{"tolerance", c.quadrature.tolerance}, {"r_max", c.quadrature.r_max}}}};
  ordered_json checks = ordered_json::array();
  for (const auto& r : report.checks) {
    ordered_json e{{"id", r.id}, {"status", r.status}, {"residual", r.residual}};
    if (!r.detail.empty()) e["detail"] = r.detail;
    if (timings) e["elapsed"] = r.elapsed;
    ordered_json a = ordered_json::object();
    for (const auto& [k, v] : r.artifacts) a[k] = v;
    e["artifacts"] = a;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

std::string emit(const std::string& representative, const Config& c) {
  const RadialScalar t0(c.t0);
  if (representative == "euler") return euler_class(build_spec(c, c.n)).form.str();
  if (representative == "harvey-lawson") return harvey_lawson(t0, c.n).form.str();
  if (representative == "normalized") return normalized_thom(t0, c.n).form.str();
  if (representative == "mathai-quillen") return mathai_quillen(c.n).form.str();
  throw ConfigError("unknown representative '" + representative +
                    "' (expected euler, harvey-lawson, normalized or mathai-quillen)");
}

}  // namespace thom::cli
