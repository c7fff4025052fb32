#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polywild/parse.hpp"

using namespace polywild;

namespace {
RingCtx q3{3, DomainDescriptor::Q()};
}

TEST_CASE("basic parses") {
  CHECK(parse_poly("x1*x3 - x2^2", q3) ==
        Poly::variable(q3, 0) * Poly::variable(q3, 2) -
            Poly::variable(q3, 1, 2));
  CHECK(parse_poly("  - 2 * x2 ", q3) == Poly::variable(q3, 1).scaled_rat(-2));
  CHECK(parse_poly("3/4", q3) ==
        Poly::constant(q3, DomainElem::from_rat(q3.coeff, Rat(3, 4))));
  CHECK(parse_poly("(x1+x2)^3", q3) ==
        (Poly::variable(q3, 0) + Poly::variable(q3, 1)).pow(3));
}

TEST_CASE("t and zeta literals") {
  RingCtx qt{2, DomainDescriptor::Qt()};
  Poly p = parse_poly("3*t^2 - 1/2 + t*x1", qt);
  DomainElem c = p.coeff_of(Monomial::unit(2));
  CHECK(c == DomainElem::from_coeffs(DomainDescriptor::Qt(), {Rat(-1, 2), Rat(0), Rat(3)}));
  RingCtx c3{1, DomainDescriptor::Zeta(3)};
  Poly z = parse_poly("zeta^2 + 1", c3);
  CHECK(z.constant_coeff() ==
        DomainElem::from_coeffs(DomainDescriptor::Zeta(3), {Rat(1), Rat(0), Rat(1)}));
  CHECK(parse_poly("zeta^3", c3).constant_coeff().is_one());
}

TEST_CASE("errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_poly("1/0", q3), doctest::Contains("byte 2"), Error);
  CHECK_THROWS_AS(parse_poly("x9", q3), Error);
  CHECK_THROWS_AS(parse_poly("x1 +", q3), Error);
  CHECK_THROWS_AS(parse_poly("t", q3), Error);  // no t over Q
  CHECK_THROWS_AS(parse_poly("(x1", q3), Error);
}

TEST_CASE("print-parse round trip on a corpus") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 60; ++t) {
    Poly p(q3);
    int terms = 1 + int(rng() % 5);
    for (int k = 0; k < terms; ++k) {
      Monomial m = Monomial::unit(3);
      for (int v = 0; v < 3; ++v) m.e[size_t(v)] = uint16_t(rng() % 4);
      long num = long(rng() % 13) - 6;
      long den = 1 + long(rng() % 4);
      p.add_term(m, DomainElem::from_rat(q3.coeff, Rat(num, den)));
    }
    CHECK(parse_poly(p.to_string(), q3) == p);
  }
  // over Q[t] with polynomial coefficients
  RingCtx qt{2, DomainDescriptor::Qt()};
  for (int t = 0; t < 30; ++t) {
    Poly p(qt);
    int terms = 1 + int(rng() % 4);
    for (int k = 0; k < terms; ++k) {
      Monomial m = Monomial::unit(2);
      for (int v = 0; v < 2; ++v) m.e[size_t(v)] = uint16_t(rng() % 3);
      std::vector<Rat> cs;
      for (int d = 0; d < 3; ++d) cs.push_back(Rat(long(rng() % 7) - 3));
      p.add_term(m, DomainElem::from_coeffs(qt.coeff, cs));
    }
    if (p.is_zero()) continue;
    CHECK(parse_poly(p.to_string(), qt) == p);
  }
}

TEST_CASE("domain parsing") {
  CHECK(parse_domain("Q") == DomainDescriptor::Q());
  CHECK(parse_domain("Z") == DomainDescriptor::Z());
  CHECK(parse_domain("Q[t]") == DomainDescriptor::Qt());
  CHECK(parse_domain("Q[zeta]/3") == DomainDescriptor::Zeta(3));
  CHECK(parse_domain("zeta^5") == DomainDescriptor::Zeta(5));
  CHECK_THROWS_AS(parse_domain("GF(7)"), Error);
}
