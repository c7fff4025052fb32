#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polywild/coeff.hpp"

using namespace polywild;

TEST_CASE("ext_gcd over Z") {
  auto Z = DomainDescriptor::Z();
  auto g = ext_gcd_checked(DomainElem::from_int(Z, 6), DomainElem::from_int(Z, 4));
  CHECK(g.g == DomainElem::from_int(Z, 2));
  // bezout with the canonical sign: 1*6 + (-1)*4 = 2
  CHECK(g.u * DomainElem::from_int(Z, 6) + g.v * DomainElem::from_int(Z, 4) == g.g);

  auto z = ext_gcd_checked(DomainElem::from_int(Z, 5), DomainElem::from_int(Z, 0));
  CHECK(z.g == DomainElem::from_int(Z, 5));
  CHECK(z.u == DomainElem::from_int(Z, 1));
  CHECK(z.v == DomainElem::from_int(Z, 0));
}

TEST_CASE("ext_gcd over Q[t]") {
  auto Qt = DomainDescriptor::Qt();
  // t^2 - 1 and t - 1: gcd t - 1 with u = 0, v = 1
  DomainElem a = DomainElem::from_coeffs(Qt, {Rat(-1), Rat(0), Rat(1)});
  DomainElem b = DomainElem::from_coeffs(Qt, {Rat(-1), Rat(1)});
  auto g = ext_gcd_checked(a, b);
  CHECK(g.g == b);  // monic t - 1
  CHECK(g.u * a + g.v * b == g.g);
  CHECK(g.u.is_zero());
  CHECK(g.v.is_one());
}

TEST_CASE("ext_gcd rejects cyclotomic") {
  auto C = DomainDescriptor::Zeta(3);
  CHECK_THROWS_AS(DomainElem::ext_gcd(DomainElem::one(C), DomainElem::one(C)), Error);
}

TEST_CASE("V(R) membership") {
  auto Z = DomainDescriptor::Z();
  CHECK(v_of_r_member(Frac(DomainElem::from_int(Z, 3), DomainElem::from_int(Z, 5))));
  CHECK(v_of_r_member(Frac::of(DomainElem::from_int(Z, 7))));
  auto Qt = DomainDescriptor::Qt();
  DomainElem t = DomainElem::generator(Qt);
  DomainElem tp1 = t + DomainElem::one(Qt);
  CHECK(v_of_r_member(Frac(tp1, t)));
  CHECK_THROWS_AS(v_of_r_member(Frac::of(DomainElem::zero(Z))), Error);
  auto C = DomainDescriptor::Zeta(3);
  CHECK_THROWS_AS(v_of_r_member(Frac::of(DomainElem::one(C))), Error);
}

TEST_CASE("canonical fraction reduction") {
  auto Z = DomainDescriptor::Z();
  Frac q(DomainElem::from_int(Z, 4), DomainElem::from_int(Z, -6));
  CHECK(q.num() == DomainElem::from_int(Z, -2));
  CHECK(q.den() == DomainElem::from_int(Z, 3));
  CHECK(!q.in_domain());
  Frac r(DomainElem::from_int(Z, 9), DomainElem::from_int(Z, -3));
  CHECK(r.in_domain());
  CHECK(r.as_domain_elem() == DomainElem::from_int(Z, -3));
}

TEST_CASE("cyclotomic arithmetic and units") {
  auto C = DomainDescriptor::Zeta(3);
  DomainElem z = DomainElem::generator(C);
  DomainElem z3 = z * z * z;
  CHECK(z3.is_one());
  CHECK(z.is_unit());
  DomainElem zi = *z.try_inverse();
  CHECK((zi * z).is_one());
  // zeta - 1 is a zero divisor mod zeta^3 - 1: (zeta-1)(zeta^2+zeta+1) = 0
  DomainElem zm1 = z - DomainElem::one(C);
  DomainElem cyc = z * z + z + DomainElem::one(C);
  CHECK((zm1 * cyc).is_zero());
  CHECK(!zm1.is_unit());
}

TEST_CASE("ring axioms spot check in every domain") {
  std::mt19937_64 rng(42);
  auto rnd_rat = [&]() {
    return Rat(long(rng() % 19) - 9, long(rng() % 7) + 1);
  };
  for (DomainDescriptor dom : {DomainDescriptor::Q(), DomainDescriptor::Z(),
                               DomainDescriptor::Qt(), DomainDescriptor::Zeta(4),
                               DomainDescriptor::ZetaPair(2)}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto rnd = [&]() {
        if (dom.kind == DomainKind::Integer)
          return DomainElem::from_rat(dom, Rat(long(rng() % 19) - 9));
        if (dom.kind == DomainKind::Rational) return DomainElem::from_rat(dom, rnd_rat());
        size_t len = dom.kind == DomainKind::UnivariatePoly
                         ? 3
                         : (dom.kind == DomainKind::Cyclotomic ? size_t(dom.e)
                                                               : size_t(dom.e * dom.e));
        std::vector<Rat> cs;
        for (size_t i = 0; i < len; ++i)
          cs.push_back(dom.kind == DomainKind::UnivariatePoly ? rnd_rat()
                                                              : Rat(long(rng() % 7) - 3));
        return DomainElem::from_coeffs(dom, cs);
      };
      DomainElem a = rnd(), b = rnd(), c = rnd();
      CHECK((a + b) * c == a * c + b * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
    }
  }
}

TEST_CASE("canonicalization is idempotent via round trips") {
  auto Qt = DomainDescriptor::Qt();
  DomainElem x = DomainElem::from_coeffs(Qt, {Rat(1), Rat(0), Rat(0)});
  CHECK(x.coeffs().size() == 1);  // trailing zeros trimmed
  DomainElem z = DomainElem::from_coeffs(Qt, {Rat(0)});
  CHECK(z.is_zero());
}

TEST_CASE("exact division") {
  auto Z = DomainDescriptor::Z();
  CHECK(DomainElem::from_int(Z, 12).div_exact(DomainElem::from_int(Z, -4)) ==
        DomainElem::from_int(Z, -3));
  CHECK(!DomainElem::from_int(Z, 7).try_div_exact(DomainElem::from_int(Z, 2)));
  auto Qt = DomainDescriptor::Qt();
  DomainElem t = DomainElem::generator(Qt);
  DomainElem p = t * t - DomainElem::one(Qt);
  DomainElem q = t - DomainElem::one(Qt);
  CHECK(p.div_exact(q) == t + DomainElem::one(Qt));
}
