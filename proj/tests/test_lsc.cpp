#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polywild/lsc.hpp"
#include "polywild/parse.hpp"

using namespace polywild;

namespace {
RingCtx q3{3, DomainDescriptor::Q()};
Poly P(const std::string& s) { return parse_poly(s, q3); }

LscParams params(long t0, long t1, int depth, std::vector<Rat> a0 = {},
                 std::vector<Rat> a1 = {}) {
  LscParams p;
  p.t0 = t0;
  p.t1 = t1;
  p.depth = depth;
  p.alpha0 = a0.empty() ? std::vector<Rat>(size_t(t0 - 1), Rat(0)) : a0;
  p.alpha1 = a1.empty() ? std::vector<Rat>(size_t(t1 - 1), Rat(0)) : a1;
  return p;
}
}  // namespace

TEST_CASE("sequences") {
  // (3,1): a1 = a3 = a4 = 1, a2 = 2, a5 = 0; I = {1,2,3,4}
  auto s31 = seq_ab(3, 1, 6);
  CHECK(s31.a[1] == 1);
  CHECK(s31.a[2] == 2);
  CHECK(s31.a[3] == 1);
  CHECK(s31.a[4] == 1);
  CHECK(s31.a[5] == 0);
  REQUIRE(s31.max_I);
  CHECK(*s31.max_I == 4);
  // (2,2): a_i = 1 for every i; I = N
  auto s22 = seq_ab(2, 2, 12);
  for (int i = 1; i <= 12; ++i) CHECK(s22.a[size_t(i)] == 1);
  CHECK(!s22.max_I);
  // (3,2): a = (., 1, 2, 3, 7, 11, ...)
  auto s32 = seq_ab(3, 2, 6);
  CHECK(s32.a[1] == 1);
  CHECK(s32.a[2] == 2);
  CHECK(s32.a[3] == 3);
  CHECK(s32.a[4] == 7);
  CHECK(s32.a[5] == 11);
  CHECK(!s32.max_I);
  // a_i = t_i b_i + xi_i and a_{i+1} = t_{i+1} a_i - a_{i-1}
  for (long t0 : {2L, 3L, 4L})
    for (long t1 : {1L, 2L, 3L}) {
      auto s = seq_ab(t0, t1, 10);
      for (int i = 0; i <= 10; ++i) {
        long ti = (i % 2 == 0) ? t0 : t1;
        CHECK(s.a[size_t(i)] == ti * s.b[size_t(i)] + s.xi[size_t(i)]);
      }
      for (int i = 1; i + 1 <= 10; ++i) {
        long tnext = ((i + 1) % 2 == 0) ? t0 : t1;
        CHECK(s.a[size_t(i + 1)] == tnext * s.a[size_t(i)] - s.a[size_t(i - 1)]);
      }
      if (t0 >= 3 && !(t0 == 3 && t1 == 1)) {
        for (int i = 2; i <= 10; ++i) CHECK(s.a[size_t(i)] >= 2);
        for (int i = 3; i <= 10; ++i)
          CHECK(s.a[size_t(i)] > ((i % 2 == 0) ? t0 : t1));
      }
    }
}

TEST_CASE("eta shapes") {
  RingCtx yz{2, DomainDescriptor::Q()};
  // alpha = 0: eta_i(y, z) = y^{t_i} + z^{a_i}
  auto p = params(3, 3, 4);
  for (long i = 1; i <= 4; ++i) {
    Poly e = eta(i, p, yz);
    auto s = seq_ab(3, 3, int(i) + 1);
    Poly expect = Poly::variable(yz, 0, uint16_t(3)) +
                  Poly::variable(yz, 1, uint16_t(s.a[size_t(i)]));
    CHECK(e == expect);
  }
  // deg_z eta_i = a_i for (3,2)
  auto p32 = params(3, 2, 5, {Rat(1), Rat(2)}, {Rat(3)});
  for (long i = 1; i <= 5; ++i) {
    auto s = seq_ab(3, 2, int(i) + 1);
    CHECK(eta(i, p32, yz).degree_in(1) == s.a[size_t(i)]);
  }
}

TEST_CASE("eta_1 substitution reproduces q_1") {
  // q1 = eta_1(x1, r) = x1 x2 x3 - sum alpha_i^0 x2^i
  auto p = params(3, 1, 4, {Rat(1), Rat(-2)});
  LscFamily fam = build_family(p);
  Poly q1 = fam.q[1];
  Poly expect = P("x1*x2*x3") - (P("x2").scaled_rat(1) + P("x2^2").scaled_rat(-2) +
                                 P("x2^3"));
  CHECK(q1 == expect);
}

TEST_CASE("(3,1) closed forms") {
  // f3 = x1 - (2 x2 + a2) f2 + x3 f2^2, f4 = x3 f2 - x2 - a2, f5 = x3 f4 - 1
  for (auto alpha : {std::vector<Rat>{Rat(0), Rat(0)}, std::vector<Rat>{Rat(0), Rat(1)},
                     std::vector<Rat>{Rat(1, 2), Rat(-3)}}) {
    LscFamily fam = build_family(params(3, 1, 4, alpha));
    Poly f2 = fam.f[2];
    Poly a2 = Poly::constant(q3, DomainElem::from_rat(q3.coeff, alpha[1]));
    CHECK(fam.f[3] == P("x1") - (P("2*x2") + a2) * f2 + P("x3") * f2 * f2);
    CHECK(fam.f[4] == P("x3") * f2 - P("x2") - a2);
    CHECK(fam.f[5] == P("x3") * fam.f[4] - P("1"));
  }
}

TEST_CASE("f2 = x1 x3 - theta(x2) in general") {
  LscFamily fam = build_family(params(4, 2, 3, {Rat(1), Rat(2), Rat(3)}, {Rat(5)}));
  Poly theta = P("1 + 2*x2 + 3*x2^2 + x2^3");
  CHECK(fam.f[2] == P("x1*x3") - theta);
  CHECK(fam.theta == theta);
}

TEST_CASE("depth guard") {
  CHECK_THROWS_AS(build_family(params(3, 1, 5)), Error);
  CHECK_THROWS_AS(build_family(params(1, 1, 2)), Error);
  // t0 = 1: I = {1}, depth 1 builds f_2 and stops
  LscFamily f11 = build_family(params(1, 1, 1));
  CHECK(f11.f.size() == 3);
}

TEST_CASE("homogeneity for alpha = 0") {
  for (auto [t0, t1, depth] : std::vector<std::tuple<long, long, int>>{
           {3, 3, 4}, {4, 3, 4}, {3, 2, 5}, {2, 3, 5}}) {
    LscFamily fam = build_family(params(t0, t1, depth));
    CHECK(homogeneity_check(fam));
  }
  LscFamily skew = build_family(params(3, 2, 4, {Rat(1), Rat(0)}, {Rat(0)}));
  CHECK_THROWS_AS(homogeneity_check(skew), Error);
}

TEST_CASE("delta recurrence") {
  // base: delta_0 = (0,1,0), delta_1 = (1,0,0), delta_2 = (1,0,1), r: (1,1,1)
  LscFamily f31 = build_family(params(3, 1, 4));
  auto rep = delta_recurrence_check(f31);
  CHECK(rep.ok);
  REQUIRE(rep.deltas.size() >= 6);
  CHECK(rep.deltas[3] == std::vector<long long>({2, 0, 3}));
  CHECK(rep.deltas[4] == std::vector<long long>({1, 0, 2}));
  CHECK(rep.deltas[5] == std::vector<long long>({1, 0, 3}));
  LscFamily f32 = build_family(params(3, 2, 4, {Rat(1), Rat(2)}, {Rat(3)}));
  CHECK(delta_recurrence_check(f32).ok);
  LscFamily f23 = build_family(params(2, 3, 4));
  CHECK_THROWS_AS(delta_recurrence_check(f23), Error);  // t0 < 3
}

TEST_CASE("fibonacci identities for (3,3,0)") {
  LscFamily fam = build_family(params(3, 3, 4));
  CHECK(fibonacci_identity_check(fam, 3));
  // the identity instance at i = 1: f0 f2 = f1^3 + r
  Poly lhs = fam.f[0] * fam.f[2];
  Poly rhs = fam.f[1].pow(3) + fam.r;
  CHECK(lhs == rhs);
  CHECK_THROWS_AS(fibonacci_identity_check(build_family(params(3, 2, 3)), 2), Error);
}

TEST_CASE("tilde step reproduces the shifted family") {
  // (3,3,0), lambda = y^l, mu = -z^m: tilde_f3 = f2^{2l} x3 + 2 f2^l x1^{m-1} x2 + x1^{2m-1}
  LscFamily fam = build_family(params(3, 3, 3));
  RingCtx yz{2, DomainDescriptor::Q()};
  for (long l : {1L, 2L}) {
    for (long m : {1L, 2L, 3L}) {
      Poly lambda = Poly::variable(yz, 0, uint16_t(l));
      Poly mu = -Poly::variable(yz, 1, uint16_t(m));
      auto out = build_tilde(fam, lambda, mu, 2);
      Poly f2 = fam.f[2];
      Poly expect = f2.pow(unsigned(2 * l)) * P("x3") +
                    (f2.pow(unsigned(l)) * Poly::variable(q3, 0, uint16_t(m - 1)) *
                     P("x2")).scaled_rat(2) +
                    Poly::variable(q3, 0, uint16_t(2 * m - 1));
      CHECK(out.tilde_f == expect);
    }
  }
  // coprimality guard and mu = 0 rejection
  Poly lam = Poly::variable(yz, 0);
  CHECK_THROWS_AS(build_tilde(fam, lam, Poly::variable(yz, 0) * Poly::variable(yz, 1), 2),
                  Error);
  CHECK_THROWS_AS(build_tilde(fam, lam, Poly::zero(yz), 2), Error);
  // (3,2), lambda = y, mu = -z, i = 3
  LscFamily f32 = build_family(params(3, 2, 4));
  auto out3 = build_tilde(f32, Poly::variable(yz, 0), -Poly::variable(yz, 1), 3);
  CHECK(!out3.tilde_f.is_zero());
}

TEST_CASE("sigma3") {
  CHECK(sigma3_check(build_family(params(3, 1, 4))));
  CHECK(sigma3_check(build_family(params(3, 1, 4, {Rat(0), Rat(1)}))));
  CHECK(sigma3_check(build_family(params(3, 1, 4, {Rat(2), Rat(-1)}))));
  CHECK_THROWS_AS(sigma3_check(build_family(params(3, 2, 4))), Error);
}

TEST_CASE("q_i = f_{i-1} f_{i+1} for all built indices") {
  LscFamily fam = build_family(params(3, 2, 5, {Rat(1), Rat(2)}, {Rat(3)}));
  for (size_t i = 1; i < fam.q.size(); ++i)
    CHECK(fam.q[i] == fam.f[i - 1] * fam.f[i + 1]);
}
