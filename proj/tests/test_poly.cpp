#include <doctest.h>

#include <random>

#include "thom/poly.hpp"

using thom::Monomial;
using thom::Poly;

namespace {

Poly x() { return Poly::variable(1); }
Poly y() { return Poly::variable(2); }
Poly z() { return Poly::variable(3); }
Poly k(long c) { return Poly::constant(c); }

Poly random_poly(std::mt19937& rng, int terms) {
  std::uniform_int_distribution<int> e(0, 2), c(-3, 3);
  std::vector<Poly::Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m = Monomial::var(1, e(rng)) * Monomial::var(2, e(rng)) * Monomial::var(3, e(rng));
    ts.push_back({m, c(rng)});
  }
  return Poly::from_terms(ts);
}

}  // namespace

TEST_CASE("ring arithmetic") {
  CHECK((x() + y()) * (x() - y()) == x() * x() - y() * y());
  CHECK((x() - x()).is_zero());
  CHECK((x() + k(1)).pow(3) == x() * x() * x() + k(3) * x() * x() + k(3) * x() + k(1));
  CHECK((x() * y()).derivative(1) == y());
}

TEST_CASE("exact division") {
  const Poly a = (x() + y() * k(2)) * (x() * z() - k(3));
  auto q = a.divide_exact(x() * z() - k(3));
  REQUIRE(q);
  CHECK(*q == x() + y() * k(2));
  CHECK_FALSE(a.divide_exact(x() + k(7)));
}

TEST_CASE("gcd recovers a planted common factor") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly g = random_poly(rng, 3);
    const Poly a = random_poly(rng, 3), b = random_poly(rng, 3);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    const Poly ga = g * a, gb = g * b;
    const Poly h = thom::gcd(ga, gb);
    const Poly gp = *g.divide_exact(Poly::constant(g.content()));
    CHECK(h.divide_exact(gp).has_value());
    CHECK(ga.divide_exact(h).has_value());
    CHECK(gb.divide_exact(h).has_value());
    CHECK(h.lead().coef > 0);
  }
}

TEST_CASE("gcd of coprime polynomials is 1") {
  CHECK(thom::gcd(x() + k(1), x() - k(1)).is_one());
  CHECK(thom::gcd(x() * y() + k(1), x()).is_one());
  CHECK(thom::gcd(k(6) * x(), k(4) * x() * y()) == k(2) * x());
}

TEST_CASE("reduce_square replaces squares of a variable") {
  // z^2 -> x
  const Poly p = z() * z() * z() + z() * z() * y();
  CHECK(p.reduce_square(3, x()) == x() * z() + x() * y());
}
