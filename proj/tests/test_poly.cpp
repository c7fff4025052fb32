#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polywild/parse.hpp"
#include "polywild/poly.hpp"

using namespace polywild;

namespace {
RingCtx q2{2, DomainDescriptor::Q()};
RingCtx q3{3, DomainDescriptor::Q()};

Poly P(const std::string& s, const RingCtx& r = q3) { return parse_poly(s, r); }

Poly random_poly(std::mt19937_64& rng, const RingCtx& ring, int terms, int maxdeg) {
  Poly p(ring);
  for (int t = 0; t < terms; ++t) {
    Monomial m = Monomial::unit(ring.arity);
    for (int v = 0; v < ring.arity; ++v) m.e[size_t(v)] = uint16_t(rng() % unsigned(maxdeg + 1));
    long num = long(rng() % 11) - 5;
    p.add_term(m, DomainElem::from_rat(ring.coeff, Rat(num)));
  }
  return p;
}
}  // namespace

TEST_CASE("basic arithmetic") {
  CHECK(P("(x1+x2)*(x1-x2)", q2) == P("x1^2-x2^2", q2));
  CHECK((P("x1*x2+3*x3") * Poly::zero(q3)).is_zero());
}

TEST_CASE("r reconstruction from x2 f2 - theta_1(x1)") {
  // r = x2 f2 - sum_j alpha_j^1 x1^j for t0 = 3, t1 = 2, alpha^0 = (1, 2), alpha^1 = (5)
  Poly f2 = P("x1*x3 - (1 + 2*x2 + x2^2)");
  Poly r = P("x2") * f2 - (P("x1").scaled_rat(5) + P("x1^2"));
  Poly direct = P("x1*x2*x3 - (x2 + 2*x2^2 + x2^3) - (5*x1 + x1^2)");
  CHECK(r == direct);
}

TEST_CASE("exact division") {
  CHECK(P("x1^2-x2^2", q2).div_exact(P("x1-x2", q2)) == P("x1+x2", q2));
  // q1 / x2 = f2 = x1 x3 - theta(x2) for t0 = 3, alpha = 0 (theta = z^2)
  Poly q1 = P("x1*x2*x3 - x2^3");
  CHECK(q1.div_exact(P("x2")) == P("x1*x3 - x2^2"));
  CHECK_THROWS_AS(P("x1*x2+1").div_exact(P("x1")), Error);
}

TEST_CASE("exact_div round trip on random pairs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Poly f = random_poly(rng, q2, 4, 3);
    Poly g = random_poly(rng, q2, 3, 2);
    if (g.is_zero()) continue;
    CHECK((f * g).div_exact(g) == f);
  }
}

TEST_CASE("substitution") {
  Poly f = P("x1^2*x2 + x3");
  Poly swapped = f.substitute({P("x2"), P("x1"), P("x3")});
  CHECK(swapped == P("x2^2*x1 + x3"));
  CHECK(P("x1*x3-x2^2").substitute({P("x1"), P("x2+x1^2"), P("x3")}) ==
        P("x1*x3-(x2+x1^2)^2"));
}

TEST_CASE("differentiation") {
  CHECK(P("x1*x3+x2^2").diff(1) == P("2*x2"));
  CHECK(P("7").diff(0).is_zero());
  Poly theta = P("x2^2 + 3*x2 + 1");
  CHECK(theta.diff(1) == P("2*x2 + 3"));
}

TEST_CASE("jacobian determinants") {
  auto [J1, d1] = jacobian({P("x1"), P("x2"), P("x3")});
  CHECK(d1 == P("1"));
  // the exponential map images with psi(x3) = x3 have unit jacobian
  Poly f = P("x1*x3+x2^2");
  Poly psi1 = P("x1") - f.scaled_rat(2) * P("x2") - f * f * P("x3");
  Poly psi2 = P("x2") + f * P("x3");
  auto [J2, d2] = jacobian({psi1, psi2, P("x3")});
  CHECK(d2 == P("1"));
  auto [J3, d3] = jacobian({P("x2", q2), P("x1", q2)});
  CHECK(d3 == P("-1", q2));
}

TEST_CASE("wedge2") {
  Poly f = P("x1^2*x2 + x3");
  auto w = wedge2(f, f);
  for (const Poly& c : w) CHECK(c.is_zero());
  // dh0 ^ dx1 = -a dx1 ^ dx2 for h0 = a x2 - b0 x1 (arity 2)
  Poly h0 = P("5*x2 - 3*x1", q2);
  auto w2 = wedge2(h0, P("x1", q2));
  REQUIRE(w2.size() == 1);
  CHECK(w2[0] == P("-5", q2));
  // algebraically dependent pair: wedge vanishes
  Poly g = P("x1*x3 - x2^2");
  auto w3 = wedge2(g, g * g);
  for (const Poly& c : w3) CHECK(c.is_zero());
  // antisymmetry on random pairs
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    Poly a = random_poly(rng, q3, 3, 2), b = random_poly(rng, q3, 3, 2);
    auto ab = wedge2(a, b), ba = wedge2(b, a);
    for (size_t i = 0; i < ab.size(); ++i) CHECK(ab[i] == -ba[i]);
  }
}

TEST_CASE("jacobian chain rule, determinant form") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    std::vector<Poly> phi = {P("x1 + x2^2", q2), P("x2", q2)};
    Poly rnd = random_poly(rng, q2, 2, 2);
    std::vector<Poly> psi = {P("x1", q2),
                             P("x2", q2) + rnd.substitute({P("x1", q2), Poly::zero(q2)})};
    std::vector<Poly> comp;
    for (const Poly& p : psi) comp.push_back(p.substitute(phi));
    auto [Jc, dc] = jacobian(comp);
    auto [Jpsi, dpsi] = jacobian(psi);
    auto [Jphi, dphi] = jacobian(phi);
    CHECK(dc == dpsi.substitute(phi) * dphi);
  }
}

TEST_CASE("mgcd") {
  CHECK(mgcd(P("x1*x2"), P("x1*x3")) == P("x1"));
  CHECK(mgcd(P("x1"), P("x2^2")) == P("1"));
  Poly f = P("x1*x3 - x2^2");
  Poly g = mgcd(f, f);
  CHECK((g == f || g == -f));
  std::mt19937_64 rng(17);
  for (int t = 0; t < 15; ++t) {
    Poly a = random_poly(rng, q2, 3, 2);
    Poly b = random_poly(rng, q2, 3, 2);
    Poly c = random_poly(rng, q2, 2, 2);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    Poly h = mgcd(a * c, b * c);
    CHECK((a * c).divisible_by(h));
    CHECK((b * c).divisible_by(h));
  }
  RingCtx z2{2, DomainDescriptor::Z()};
  CHECK(mgcd(P("2*x1+2*x2", z2), P("4*x1", z2)) == P("2", z2));
  RingCtx c2{2, DomainDescriptor::Zeta(3)};
  CHECK_THROWS_AS(mgcd(Poly::constant(c2, 1), Poly::constant(c2, 1)), Error);
}

TEST_CASE("nth root") {
  Poly f = P("x1 - 2*x2 + x3^2");
  CHECK(*(f * f).nth_root(2) == f);
  CHECK(*(f * f * f).nth_root(3) == f);
  CHECK(!P("x1^2 + x2").nth_root(2).has_value());
}

TEST_CASE("rational roots") {
  auto r = rational_roots({Rat(-3), Rat(-1), Rat(2)});
  CHECK(r.size() == 2);
  CHECK(std::find(r.begin(), r.end(), Rat(3, 2)) != r.end());
  CHECK(std::find(r.begin(), r.end(), Rat(-1)) != r.end());
  auto r2 = rational_roots({Rat(-1), Rat(0), Rat(0), Rat(1)});
  CHECK(r2 == std::vector<Rat>{Rat(1)});
}
