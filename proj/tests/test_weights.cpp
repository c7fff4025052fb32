#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "polywild/parse.hpp"
#include "polywild/weights.hpp"

using namespace polywild;

namespace {
RingCtx q2{2, DomainDescriptor::Q()};
RingCtx q3{3, DomainDescriptor::Q()};
Poly P(const std::string& s, const RingCtx& r = q3) { return parse_poly(s, r); }
}  // namespace

TEST_CASE("wdeg basics") {
  Weight w = Weight::uniform(2, 1);
  CHECK(wdeg(P("x1^3*x2", q2), w).v == GammaElem({4}));
  CHECK(wdeg(Poly::zero(q2), w).minus_inf);
  CHECK(wdeg(P("5", q2), w).v == GammaElem({0}));
}

TEST_CASE("delta_2 under the Z^3 lex weight with e1 < e2 < e3") {
  // encode e1 = (0,0,1), e2 = (0,1,0), e3 = (1,0,0)
  Weight w(std::vector<GammaElem>{GammaElem({0, 0, 1}), GammaElem({0, 1, 0}),
                                  GammaElem({1, 0, 0})});
  Poly f2 = P("x1*x3 - x2^2");
  GammaElem d = wdeg(f2, w).v;
  // paper order (e1, e2, e3) is the reverse of the stored coordinates
  CHECK(std::vector<long long>({d.c[2], d.c[1], d.c[0]}) ==
        std::vector<long long>({1, 0, 1}));
}

TEST_CASE("initial form") {
  // v = (e1, e2, e1) over Z^2 lex with e1 > e2
  Weight v(std::vector<GammaElem>{GammaElem({1, 0}), GammaElem({0, 1}), GammaElem({1, 0})});
  // f_theta = x1 x3 + theta(x2): the v-initial form is x1 x3
  Poly ftheta = P("x1*x3 + x2^2");
  CHECK(initial_form(ftheta, v) == P("x1*x3"));
  // y2 = x2 + f x3: initial form x1 x3^2
  Poly y2 = P("x2") + ftheta * P("x3");
  CHECK(initial_form(y2, v) == P("x1*x3^2"));
  CHECK(initial_form(P("7"), v) == P("7"));
}

TEST_CASE("initial form multiplicativity (fg)^w = f^w g^w") {
  std::mt19937_64 rng(5);
  Weight w(std::vector<GammaElem>{GammaElem({2, -1}), GammaElem({1, 3}), GammaElem({1, 0})});
  for (int t = 0; t < 30; ++t) {
    Poly f(q3), g(q3);
    for (int k = 0; k < 3; ++k) {
      Monomial m = Monomial::unit(3);
      for (int vv = 0; vv < 3; ++vv) m.e[size_t(vv)] = uint16_t(rng() % 4);
      f.add_term(m, DomainElem::from_rat(q3.coeff, Rat(long(rng() % 9) - 4)));
      Monomial m2 = Monomial::unit(3);
      for (int vv = 0; vv < 3; ++vv) m2.e[size_t(vv)] = uint16_t(rng() % 4);
      g.add_term(m2, DomainElem::from_rat(q3.coeff, Rat(long(rng() % 9) - 4)));
    }
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(initial_form(f * g, w) == initial_form(f, w) * initial_form(g, w));
    WDeg df = wdeg(f, w), dg = wdeg(g, w), ds = wdeg(f + g, w);
    WDeg mx = df < dg ? dg : df;
    CHECK(ds <= mx);
  }
}

TEST_CASE("bidegree") {
  auto [d2, d1] = bidegree(P("3*x2 + x1^4 + x1", q2));
  CHECK(d2 == 1);
  CHECK(d1 == 4);
  auto [e2, e1] = bidegree(P("x1", q2));
  CHECK(e2 == 0);
  CHECK(e1 == 1);
  // g2 = x1 + (2 x2 + x1^2)^2 over Z: (2, 4)
  RingCtx z2{2, DomainDescriptor::Z()};
  auto [f2, f1] = bidegree(parse_poly("x1 + (2*x2 + x1^2)^2", z2));
  CHECK(f2 == 2);
  CHECK(f1 == 4);
}

TEST_CASE("wdeg of differential forms") {
  Weight w = Weight::uniform(2, 1);
  Poly f = P("x1^3 + x2^2", q2);
  std::vector<Poly> df = {f.diff(0), f.diff(1)};
  WDeg d = WDeg::neg_infinity();
  for (int i = 0; i < 2; ++i) {
    if (df[size_t(i)].is_zero()) continue;
    WDeg cand = WDeg::of(wdeg(df[size_t(i)], w).v + w.w[size_t(i)]);
    if (d < cand) d = cand;
  }
  CHECK(d == wdeg(f, w));  // deg_w df = deg_w f, positive weights, char 0
  CHECK(wdeg_form({Poly::zero(q2)}, w).minus_inf);
  Poly g = P("x1*x2 + x1", q2);
  WDeg dw = wdeg_form(wedge2(f, g), w);
  CHECK(dw <= WDeg::of(wdeg(f, w).v + wdeg(g, w).v));
}

TEST_CASE("slope factorization") {
  RingCtx z2{2, DomainDescriptor::Z()};
  auto s = slope_factor(parse_poly("2*x2 + x1^2", z2));
  REQUIRE(s.has_value());
  CHECK(s->i == 2);
  CHECK(s->j == 1);
  CHECK(s->l == 2);
  CHECK(s->m == 1);
  CHECK(s->a.num().rat_value() == 2);
  CHECK(s->b.num().rat_value() * 2 == -s->b.den().rat_value());  // b = -1/2

  // tie: the deterministic order tries i = 1 first
  auto lin = slope_factor(P("x2 + x1", q2));
  REQUIRE(lin.has_value());
  CHECK(lin->i == 1);
  CHECK(lin->j == 2);
  CHECK(lin->l == 1);
  CHECK(lin->m == 1);
  CHECK(lin->b.num().rat_value() == -1);

  CHECK(!slope_factor(P("x1^2 + x2^3", q2)).has_value());
  CHECK_THROWS_AS(slope_factor(P("x1", q2)), Error);

  Poly f = P("(x1 - 3*x2^2)^2 + x2", q2);
  auto sq = slope_factor(f);
  REQUIRE(sq.has_value());
  CHECK(sq->i == 1);
  CHECK(sq->j == 2);
  CHECK(sq->l == 2);
  CHECK(sq->m == 2);
  CHECK(sq->b.num().rat_value() == 3);
}

TEST_CASE("initial support enumeration") {
  auto s1 = enumerate_initial_supports(P("x1*x3 - x2^2"));
  CHECK(s1.size() == 3);
  auto s2 = enumerate_initial_supports(P("x1^2*x2*x3"));
  CHECK(s2.size() == 1);
  CHECK(s2[0].monomials.size() == 1);
  auto s3 = enumerate_initial_supports(P("x1 + x2 + x3"));
  CHECK(s3.size() == 7);
  CHECK_THROWS_AS(enumerate_initial_supports(Poly::zero(q3)), Error);
}

TEST_CASE("supports certify themselves by their witness functionals") {
  Poly p = P("x1*x3 - x2^2 + x1^2*x2 - 5*x3");
  auto supports = enumerate_initial_supports(p);
  CHECK(!supports.empty());
  for (const auto& s : supports) {
    REQUIRE(s.witness.size() == 1);
    const auto& u = s.witness[0];
    for (const Rat& c : u) CHECK(c > 0);
    std::set<std::vector<int>> expect;
    for (const Monomial& m : s.monomials)
      expect.insert({int(m.e[0]), int(m.e[1]), int(m.e[2])});
    Rat best = 0;
    bool first = true;
    std::set<std::vector<int>> got;
    for (const auto& [m, c] : p.terms()) {
      Rat val = 0;
      for (int v = 0; v < 3; ++v) val += u[size_t(v)] * long(m.e[size_t(v)]);
      if (first || val > best) {
        best = val;
        got.clear();
        got.insert({int(m.e[0]), int(m.e[1]), int(m.e[2])});
        first = false;
      } else if (val == best) {
        got.insert({int(m.e[0]), int(m.e[1]), int(m.e[2])});
      }
    }
    CHECK(got == expect);
  }
}

TEST_CASE("oracle: weight sampling finds no support outside the enumeration") {
  Poly p = P("x1 + x2 + x3");
  auto supports = enumerate_initial_supports(p);
  std::set<std::vector<std::vector<int>>> enumerated;
  for (const auto& s : supports) {
    std::vector<std::vector<int>> key;
    for (const Monomial& m : s.monomials)
      key.push_back({int(m.e[0]), int(m.e[1]), int(m.e[2])});
    enumerated.insert(key);
  }
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c) {
        Rat best = 0;
        bool first = true;
        std::vector<std::vector<int>> got;
        for (const auto& [m, cc] : p.terms()) {
          Rat val = a * long(m.e[0]) + b * long(m.e[1]) + c * long(m.e[2]);
          if (first || val > best) {
            best = val;
            got.clear();
            got.push_back({int(m.e[0]), int(m.e[1]), int(m.e[2])});
            first = false;
          } else if (val == best) {
            got.push_back({int(m.e[0]), int(m.e[1]), int(m.e[2])});
          }
        }
        CHECK(enumerated.count(got) == 1);
      }
}

TEST_CASE("weight rank") {
  Weight w3(std::vector<GammaElem>{GammaElem({1, 0, 0}), GammaElem({0, 1, 0}),
                                   GammaElem({0, 0, 1})});
  CHECK(w3.rank() == 3);
  Weight w1 = Weight::of_ints({1, 2, 3});
  CHECK(w1.rank() == 1);
}
