#include "polywild/verdicts.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polywild {

TriangularData2 TriangularData2::from_derivation(const Derivation& d) {
  if (d.ring().arity != 2) fail(ErrorCode::ArityMismatch, "needs arity 2");
  if (!d.image(0).is_constant())
    fail(ErrorCode::NotTriangular, "D(x1) must lie in R");
  if (d.image(1).depends_on(1))
    fail(ErrorCode::NotTriangular, "D(x2) must lie in R[x1]");
  TriangularData2 data;
  data.a = d.image(0).constant_coeff();
  if (data.a.is_zero()) fail(ErrorCode::PreconditionFailed, "D(x1) = 0");
  if (d.image(1).is_zero()) fail(ErrorCode::PreconditionFailed, "D(x2) = 0");
  long l = d.image(1).degree_in(0);
  data.b.assign(size_t(l + 1), DomainElem::zero(d.ring().coeff));
  for (const auto& [m, c] : d.image(1).terms()) data.b[m.e[0]] = c;
  for (size_t i = 0; i < data.b.size(); ++i) {
    if (data.b[i].is_zero()) continue;
    if (!data.b[i].try_div_exact(data.a)) data.I.push_back(int(i));
  }
  return data;
}

Derivation TriangularData2::as_derivation(const RingCtx& ring) const {
  Poly dx1 = Poly::constant(ring, a);
  Poly dx2(ring);
  for (size_t i = 0; i < b.size(); ++i)
    dx2 = dx2 + Poly::variable(ring, 0, uint16_t(i)).scaled(b[i]);
  return Derivation({dx1, dx2});
}

Verdict exp_triangular2_verdict(const TriangularData2& data, const Poly& f) {
  const RingCtx& ring = f.ring();
  if (ring.arity != 2) fail(ErrorCode::ArityMismatch, "needs arity 2");
  Derivation d = data.as_derivation(ring);
  if (!d.apply(f).is_zero()) fail(ErrorCode::NotInKernel, "D(f) != 0");
  if (f.is_constant())
    return {true, "constant-f", "fD is triangular for constant f"};
  if (data.I_empty())
    return {true, "I-empty", "every b_i lies in aR"};
  if (data.I_only_zero()) {
    Frac q(data.b[0], data.a);
    bool vr = v_of_r_member(q);
    if (vr || f.degree_in(1) == 1)
      return {true, "I-zero",
              vr ? "b_0/a lies in V(R)" : "deg_x2 f = 1 gives an affine conjugate"};
    return {false, "I-zero-outside-VR", "b_0/a outside V(R) and deg_x2 f >= 2"};
  }
  return {false, "I-meets-positive",
          "some b_i with i >= 1 lies outside aR; the conjugated kernel "
          "generator is tamely reduced with dominant x1-degree"};
}

Verdict exp_triangular3_verdict(const Derivation& d, const Poly& f) {
  const RingCtx& ring = d.ring();
  if (ring.arity != 3) fail(ErrorCode::ArityMismatch, "needs arity 3");
  if (ring.coeff.kind != DomainKind::Rational)
    fail(ErrorCode::UnsupportedDomain, "the three-variable criterion works over Q");
  if (!d.is_triangular()) fail(ErrorCode::NotTriangular, "D must be triangular");
  if (!d.apply(f).is_zero()) fail(ErrorCode::NotInKernel, "D(f) != 0");
  bool z1 = d.image(0).is_zero(), z2 = d.image(1).is_zero(), z3 = d.image(2).is_zero();
  if ((z1 && z2) || (z1 && z3) || (z2 && z3))
    return {true, "fixes-two-variables", "exp(fD) is elementary"};
  if (!z1)
    return {true, "nonzero-first-image",
            "D(x1) is a nonzero constant; a slice conjugates fD into a "
            "two-variable-fixing form"};
  if (!f.depends_on(1) && !f.depends_on(2))
    return {true, "f-in-k[x1]", "fD is triangular"};
  // main case: D(x1) = 0, D(x2), D(x3) != 0, f outside k[x1]
  auto cs = d.image(2).coeffs_in(1);
  for (size_t i = 1; i < cs.size(); ++i) {
    if (cs[i].is_zero()) continue;
    if (!cs[i].try_div_exact(d.image(1)))
      return {false, "x2-coefficient-indivisible",
              "the x2^" + std::to_string(i) +
                  " coefficient of D(x3) lies outside D(x2) k[x1]"};
  }
  return {true, "divisibility-holds",
          "every positive-index x2-coefficient of D(x3) is divisible by D(x2)"};
}

TghDecomposition decompose_T_gh(const Derivation& d, const Poly& f) {
  Verdict v = exp_triangular3_verdict(d, f);
  if (v.tame) fail(ErrorCode::PreconditionFailed, "decomposition needs a wild pair");
  const RingCtx& ring = d.ring();
  // h1 in x2 k[x1,x2] with dh1/dx2 = -D(x3)
  Poly h1(ring);
  for (const auto& [m, c] : d.image(2).terms()) {
    Monomial m2 = m;
    m2.e[1] = uint16_t(m.e[1] + 1);
    h1.add_term(m2, -c.scaled(Rat(1, m.e[1] + 1)));
  }
  // f1 = gcd over k[x1] of D(x2) and the x2-coefficients of h1, normalized
  // so that g = D(x2)/f1 is monic in x1
  Poly G = d.image(1);
  for (const Poly& c : h1.coeffs_in(1)) {
    if (c.is_zero()) continue;
    G = mgcd(G, c);
    if (G.is_constant()) break;
  }
  // normalize: f1 = G * lc(D(x2)) / lc(G)
  auto lc_x1 = [&](const Poly& p) {
    auto cs = p.coeffs_in(0);
    return cs.back().constant_coeff();
  };
  DomainElem scale = lc_x1(d.image(1)).div_exact(lc_x1(G));
  Poly f1 = G.scaled(scale);
  TghDecomposition out;
  out.g = d.image(1).div_exact(f1);
  out.h = h1.div_exact(f1);
  out.f0 = f * f1;
  // re-verify the Lambda conditions and the product form
  if (!mgcd(out.g, out.h).is_constant())
    fail(ErrorCode::ConsistencyFailure, "g and h share a factor");
  if (!lc_x1(out.g).is_one())
    fail(ErrorCode::ConsistencyFailure, "g is not monic");
  for (const auto& [m, c] : out.h.terms())
    if (m.e[1] == 0) fail(ErrorCode::ConsistencyFailure, "h has an x2-free term");
  Poly d2h = out.h.diff(1).diff(1);
  if (d2h.try_div_exact(out.g))
    fail(ErrorCode::ConsistencyFailure, "d^2 h / dx2^2 lies in g k[x1,x2]");
  // fD = f0 T_{g,h}
  Derivation T({Poly(ring), out.g, -out.h.diff(1)});
  Derivation lhs = d.scaled(f);
  Derivation rhs = T.scaled(out.f0);
  if (!(lhs == rhs)) fail(ErrorCode::ConsistencyFailure, "fD != f0 T_{g,h}");
  return out;
}

AffineVerdict affine_lnd_verdict(const Derivation& d, const Poly& f,
                                 const std::function<bool(const Frac&)>& v_oracle) {
  const RingCtx& ring = d.ring();
  if (ring.arity != 2) fail(ErrorCode::ArityMismatch, "needs arity 2");
  if (!d.is_affine()) fail(ErrorCode::NotAffine, "D must be affine");
  if (!d.apply(f).is_zero()) fail(ErrorCode::NotInKernel, "D(f) != 0");
  const DomainDescriptor& dom = ring.coeff;
  auto lin = [&](int i, int j) {
    return d.image(i).coeff_of(Monomial::var(2, j, 1));
  };
  DomainElem A00 = lin(0, 0), A01 = lin(0, 1), A10 = lin(1, 0), A11 = lin(1, 1);
  // nilpotency: trace 0 and det 0
  if (!(A00 + A11).is_zero() || !(A00 * A11 - A01 * A10).is_zero())
    fail(ErrorCode::NotNilpotentLinearPart, "linear part is not nilpotent");
  bool zero = A00.is_zero() && A01.is_zero() && A10.is_zero() && A11.is_zero();
  if (zero) return AffineVerdict::NotApplicable;  // already triangular
  if (A01.is_zero() || A10.is_zero())
    return AffineVerdict::NotApplicable;  // triangular after a swap
  // nilpotent with nonzero off-diagonal entries forces A00 != 0
  if (A00.is_zero()) return AffineVerdict::NotApplicable;
  // A = t [[a1 a2, -a1^2], [a2^2, -a1 a2]]; slope a1/a2 = A00 / A10
  Frac ratio(A00, A10);
  (void)dom;
  if (v_oracle(ratio)) return AffineVerdict::NotApplicable;
  return f.is_constant() ? AffineVerdict::Tame : AffineVerdict::Wild;
}

CoordWildness coordinate_wildness(const TriangularData2& data, const Poly& f, int i) {
  const DomainDescriptor& dom = f.ring().coeff;
  if (dom.kind != DomainKind::Rational && dom.kind != DomainKind::UnivariatePoly)
    fail(ErrorCode::PreconditionFailed, "needs a Q-PID coefficient ring");
  Verdict v = exp_triangular2_verdict(data, f);
  if (f.is_constant())
    fail(ErrorCode::PreconditionFailed, "f must be nonconstant");
  bool wild = !v.tame;
  if (i == 1) {
    if (!wild) return CoordWildness::NotWild;
    return f.degree_in(1) >= 2 ? CoordWildness::TotallyWild : CoordWildness::WildNotQTW;
  }
  if (i == 2) {
    return wild ? CoordWildness::TotallyWild : CoordWildness::NotWild;
  }
  fail(ErrorCode::PreconditionFailed, "i must be 1 or 2");
}

ThetaFamily theta_family(const std::vector<Rat>& theta_coeffs) {
  std::vector<Rat> tc = theta_coeffs;
  while (!tc.empty() && tc.back() == 0) tc.pop_back();
  if (tc.size() < 2)
    fail(ErrorCode::ConstantInput, "theta must have degree >= 1");
  ThetaFamily fam;
  fam.d = long(tc.size()) - 1;
  RingCtx ring{3, DomainDescriptor::Q()};
  auto C = [&](const Rat& v) { return DomainElem::from_rat(ring.coeff, v); };
  fam.theta = Poly(ring);
  for (size_t i = 0; i < tc.size(); ++i)
    fam.theta = fam.theta + Poly::variable(ring, 1, uint16_t(i)).scaled(C(tc[i]));
  Poly x1 = Poly::variable(ring, 0), x2 = Poly::variable(ring, 1),
       x3 = Poly::variable(ring, 2);
  fam.D = Derivation({-fam.theta.diff(1), x3, Poly(ring)});
  fam.f = x1 * x3 + fam.theta;
  if (!fam.D.apply(fam.f).is_zero())
    fail(ErrorCode::ConsistencyFailure, "f is not in ker D");
  Derivation fD = fam.D.scaled(fam.f);
  fam.sigma = exp_derivation_checked(fD);
  fam.y = fam.sigma.images();
  if (fam.sigma.apply(fam.f) != fam.f)
    fail(ErrorCode::ConsistencyFailure, "sigma does not fix f");
  if (fam.y[2] != x3 || fam.y[1] != x2 + fam.f * x3)
    fail(ErrorCode::ConsistencyFailure, "y2, y3 do not have the expected shapes");
  // closed form for y1
  {
    Poly acc = x1;
    Poly deriv = fam.theta;
    Rat fact = 1;
    Poly fpow = Poly::constant(ring, 1);
    for (long i = 1; i <= fam.d; ++i) {
      deriv = deriv.diff(1);
      fact *= i;
      fpow = fpow * fam.f;
      Poly x3pow = (i == 1) ? Poly::constant(ring, 1)
                            : Poly::variable(ring, 2, uint16_t(i - 1));
      acc = acc - deriv.scaled_rat(Rat(1) / fact) * fpow * x3pow;
    }
    if (acc != fam.y[0])
      fail(ErrorCode::ConsistencyFailure, "closed form for y1 failed");
  }
  // y1 x3 + theta(y2) = x1 x3 + theta(x2)
  {
    Poly lhs = fam.y[0] * x3 + fam.theta.substitute({x1, fam.y[1], x3});
    if (lhs != fam.f)
      fail(ErrorCode::ConsistencyFailure, "kernel identity for y1 failed");
  }
  // recentre: kappa = -c'/(c d)
  Rat c = tc.back();
  Rat cp = tc[size_t(fam.d - 1)];
  fam.kappa = -cp / (c * fam.d);
  // u_i = theta^(i)(kappa) / i!
  fam.u.assign(size_t(fam.d + 1), Rat(0));
  {
    std::vector<Rat> cur = tc;
    Rat fact = 1;
    for (long i = 0; i <= fam.d; ++i) {
      if (i > 0) {
        std::vector<Rat> nxt;
        for (size_t k = 1; k < cur.size(); ++k) nxt.push_back(cur[k] * long(k));
        cur = std::move(nxt);
        fact *= i;
      }
      Rat val = 0;
      for (size_t k = cur.size(); k-- > 0;) val = val * fam.kappa + cur[k];
      fam.u[size_t(i)] = val / fact;
    }
  }
  if (fam.u[size_t(fam.d - 1)] != 0)
    fail(ErrorCode::ConsistencyFailure, "u_{d-1} did not vanish after recentring");
  long g = 0;
  for (long i = 1; i <= fam.d; ++i)
    if (fam.u[size_t(i)] != 0) g = std::gcd(g, 2 * i - 1);
  fam.e = g == 0 ? 1 : g;
  fam.t_trivial_over_Q = (fam.e % 2 == 1);  // every element of U is odd
  fam.group_determined = (fam.d >= 9 && fam.d != 10 && fam.d != 12);
  return fam;
}

namespace {

// phi_z over a cyclotomic-like domain for a given unit z with z^e = 1.
std::optional<Endo> build_phi(const ThetaFamily& fam, const RingCtx& ring,
                              const DomainElem& z) {
  const DomainDescriptor& dom = ring.coeff;
  Poly x1 = Poly::variable(ring, 0), x2 = Poly::variable(ring, 1),
       x3 = Poly::variable(ring, 2);
  Poly theta = fam.theta.embed(dom);
  DomainElem kap = DomainElem::from_rat(dom, fam.kappa);
  Rat theta_kappa_q = 0;
  {
    // theta(kappa) over Q
    std::vector<Rat> tc;
    for (long i = 0; i <= fam.d; ++i) tc.push_back(Rat(0));
    for (const auto& [m, cc] : fam.theta.terms()) tc[m.e[1]] = cc.rat_value();
    for (size_t k = tc.size(); k-- > 0;) theta_kappa_q = theta_kappa_q * fam.kappa + tc[k];
  }
  DomainElem tk = DomainElem::from_rat(dom, theta_kappa_q);
  DomainElem one = DomainElem::one(dom);
  Poly kapc = Poly::constant(ring, kap);
  // phi(x2) = z^2 (x2 - kappa) + z(z-1) theta(kappa) x3 + kappa
  Poly px2 = (x2 - kapc).scaled(z * z) + x3.scaled(z * (z - one) * tk) + kapc;
  Poly px3 = x3.scaled(z);
  // numerator of g_z
  Poly theta_at_px2 = theta.substitute({x1, px2, x3});
  Poly num = theta.scaled(z) - theta_at_px2 + Poly::constant(ring, (one - z) * tk);
  auto zinv = z.try_inverse();
  if (!zinv) return std::nullopt;
  auto quotient = num.scaled(*zinv).try_div_exact(x3);
  if (!quotient) return std::nullopt;
  Poly px1 = x1 + *quotient;
  return Endo({px1, px2, px3});
}

}  // namespace

bool phi_zeta_verify(const ThetaFamily& fam, long e) {
  if (e < 1) fail(ErrorCode::PreconditionFailed, "e >= 1");
  DomainDescriptor dom = DomainDescriptor::Zeta(int(e));
  RingCtx ring{3, dom};
  DomainElem z = DomainElem::generator(dom);
  auto phi = build_phi(fam, ring, z);
  if (!phi)
    fail(ErrorCode::NotDivisible,
         "g_zeta numerator is not divisible by zeta x3 (e does not divide "
         "every element of U?)");
  // the commuting identities on y1, y2 - kappa, y3
  Poly y1 = fam.y[0].embed(dom), y2 = fam.y[1].embed(dom), y3 = fam.y[2].embed(dom);
  DomainElem kap = DomainElem::from_rat(dom, fam.kappa);
  Poly kapc = Poly::constant(ring, kap);
  if (phi->apply(y1) != y1) return false;
  if (phi->apply(y2 - kapc) != (y2 - kapc).scaled(z * z)) return false;
  if (phi->apply(y3) != y3.scaled(z)) return false;
  // zeta -> 1 specializes to the identity
  {
    auto spec1 = [&](const Poly& p) {
      Poly out(fam.y[0].ring());
      for (const auto& [m, c] : p.terms()) {
        Rat sum = 0;
        for (const Rat& r : c.coeffs()) sum += r;
        out.add_term(m, DomainElem::from_rat(DomainDescriptor::Q(), sum));
      }
      return out;
    };
    for (int i = 0; i < 3; ++i)
      if (spec1(phi->images()[size_t(i)]) != Poly::variable(fam.y[0].ring(), i))
        return false;
  }
  // phi_a . phi_b = phi_ab in the tensor quotient
  {
    DomainDescriptor tdom = DomainDescriptor::ZetaPair(int(e));
    RingCtx tring{3, tdom};
    DomainElem za = DomainElem::generator(tdom, 0);
    DomainElem zb = DomainElem::generator(tdom, 1);
    auto pa = build_phi(fam, tring, za);
    auto pb = build_phi(fam, tring, zb);
    auto pab = build_phi(fam, tring, za * zb);
    if (!pa || !pb || !pab) return false;
    Endo comp = compose(*pa, *pb);
    if (!(comp.images() == pab->images())) return false;
  }
  // theta(kappa) = 0: phi fixes x1 and commutes with sigma
  {
    Rat tk = 0;
    std::vector<Rat> tc(size_t(fam.d + 1), Rat(0));
    for (const auto& [m, cc] : fam.theta.terms()) tc[m.e[1]] = cc.rat_value();
    for (size_t k = tc.size(); k-- > 0;) tk = tk * fam.kappa + tc[k];
    if (tk == 0) {
      if (phi->images()[0] != Poly::variable(ring, 0)) return false;
      std::vector<Poly> sim;
      for (const Poly& p : fam.sigma.images()) sim.push_back(p.embed(dom));
      Endo sigma_c(sim);
      Endo lhs = compose(sigma_c, *phi);
      Endo rhs = compose(*phi, sigma_c);
      if (!(lhs.images() == rhs.images())) return false;
    }
  }
  return true;
}

}  // namespace polywild
