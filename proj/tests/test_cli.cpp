#include <doctest.h>

#include "thom/cli.hpp"
#include "thom/errors.hpp"

using namespace thom;
using namespace thom::cli;

TEST_CASE("text configuration") {
  const Config c = parse_config(
      "# comment\n"
      "n: 4\n"
      "phi: -t/2   # trailing comment\n"
      "sigma: 1/(1+t)\n"
      "t0: 0.25\n"
      "seed: 9\n"
      "checks:\n"
      "  - trace-form\n"
      "  - normalization\n"
      "quadrature:\n"
      "  tolerance: 1e-9\n"
      "  r_max: 12\n");
  CHECK(c.n == 4);
  CHECK(c.phi == "-t/2");
  CHECK(c.sigma == "1/(1+t)");
  CHECK(c.t0 == mpq_class(1, 4));
  CHECK(c.seed == 9);
  CHECK(c.checks == std::vector<std::string>{"trace-form", "normalization"});
  CHECK(c.quadrature.tolerance == 1e-9);
  CHECK(c.quadrature.r_max == 12);
  CHECK(parse_config("checks: a, b\n").checks == std::vector<std::string>{"a", "b"});
  CHECK(parse_config("checks: all\n").checks.empty());
}

TEST_CASE("JSON configuration") {
  const Config c = parse_config(R"({"n": 4, "phi": "0", "sigma": "constrained", "t0": "3/2",
                                    "checks": ["normalization"], "quadrature": {"r_max": 20}})");
  CHECK(c.n == 4);
  CHECK(c.sigma == "constrained");
  CHECK(c.t0 == mpq_class(3, 2));
  CHECK(c.checks == std::vector<std::string>{"normalization"});
  CHECK(c.quadrature.r_max == 20);
  CHECK(parse_config(R"({"t0": 2})").t0 == 2);
  CHECK_THROWS_AS(parse_config("{\"n\": "), ConfigError);
}

TEST_CASE("rendered configuration parses back") {
  Config c = parse_config("n: 4\nphi: ln(1+t)\nsigma: t/(1+t^2)\nt0: 7/3\nchecks: trace-form\n");
  const std::string text = render_config(c);
  CHECK(render_config(parse_config(text)) == text);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(parse_config("n 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("colour: red\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n: four\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("t0: x\n"), ConfigError);
  CHECK_THROWS_AS(validate_config(parse_config("n: 3\n")), ConfigError);
  CHECK_THROWS_AS(validate_config(parse_config("n: 10\n")), ConfigError);
  CHECK_THROWS_AS(validate_config(parse_config("t0: -1\n")), ConfigError);
  CHECK_THROWS_AS(validate_config(parse_config("checks: nonsense\n")), ConfigError);
  CHECK_THROWS_AS(validate_config(parse_config("sigma: -1/2\n")), DegenerateMetric);
  try {
    validate_config(parse_config("phi: exp(t\n"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
  }
  CHECK_NOTHROW(validate_config(parse_config("phi: generic\nsigma: generic\n")));
}

TEST_CASE("flat configuration passes every check") {
  const Report r = run(parse_config("n: 2\n"));
  CHECK(r.checks.size() == check_ids().size());
  for (const auto& c : r.checks) CHECK_MESSAGE(c.status == "pass", c.id << ": " << c.detail);
  CHECK(r.passed());
}

TEST_CASE("Harvey-Lawson configuration normalizes") {
  const Report r = run(parse_config("n: 4\nphi: 0\nsigma: constrained\nt0: 1\nchecks: normalization\n"));
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].status == "pass");
  CHECK(std::stod(r.checks[0].residual) <= 1e-8);
}

TEST_CASE("reports are deterministic") {
  const Config c = parse_config("n: 4\nphi: -t/2\nsigma: 1/(1+t)\nseed: 3\n");
  const Report a = run(c), b = run(c);
  CHECK(render_text(a, false) == render_text(b, false));
  CHECK(render_json(a, false) == render_json(b, false));
  CHECK(a.passed());
}

TEST_CASE("module errors fail only their check") {
  // 1 + tC = 0 here, so the first-integral analysis is degenerate while the
  // metric identities still hold.
  const Report r = run(parse_config("n: 2\nphi: ln(1/t)\nchecks: metric-identities, detM-first-integral\n"));
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].status == "pass");
  CHECK(r.checks[1].detail.find("1 + tC vanishes") != std::string::npos);
}

TEST_CASE("emit") {
  Config c;
  c.n = 2;
  CHECK(emit("harvey-lawson", c) == harvey_lawson(RadialScalar(1), 2).form.str());
  CHECK(emit("euler", c) == "1:2@om12");
  CHECK_THROWS_AS(emit("unknown", c), ConfigError);
}
