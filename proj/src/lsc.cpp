#include "polywild/lsc.hpp"

#include <sstream>

namespace polywild {

bool LscParams::alpha_zero() const {
  auto a0 = std::all_of(alpha0.begin(), alpha0.end(), [](const Rat& r) { return r == 0; });
  auto a1 = std::all_of(alpha1.begin(), alpha1.end(), [](const Rat& r) { return r == 0; });
  return a0 && a1;
}

LscSequences seq_ab(long t0, long t1, int horizon) {
  if (t0 < 1 || t1 < 1) fail(ErrorCode::PreconditionFailed, "t0, t1 >= 1");
  LscSequences s;
  auto t_at = [&](long i) { return i % 2 == 0 ? t0 : t1; };
  auto xi_at = [&](long i) { return (i % 4 == 0 || i % 4 == 1) ? 1 : -1; };
  s.b = {0, 0};
  for (long i = 1; i + 1 <= horizon; ++i)
    s.b.push_back(t_at(i) * s.b[size_t(i)] - s.b[size_t(i - 1)] + xi_at(i));
  for (long i = 0; i <= horizon; ++i) {
    s.xi.push_back(xi_at(i));
    s.a.push_back(t_at(i) * s.b[size_t(i)] + xi_at(i));
  }
  bool alive = true;
  for (long i = 1; i <= horizon; ++i) {
    if (s.a[size_t(i)] <= 0) {
      if (alive && !s.max_I) s.max_I = i - 1;
      alive = false;
    }
    if (alive) s.I_prefix.push_back(i);
  }
  return s;
}

Poly eta(long i, const LscParams& params, const RingCtx& yz_ring) {
  if (yz_ring.arity != 2) fail(ErrorCode::ArityMismatch, "eta lives in k[y,z]");
  LscSequences s = seq_ab(params.t0, params.t1, int(i) + 1);
  long ti = params.t_at(i);
  long bi = s.b[size_t(i)];
  const std::vector<Rat>& alpha = (i % 2 == 0) ? params.alpha0 : params.alpha1;
  Poly out(yz_ring);
  auto add = [&](long ydeg, long zdeg, const Rat& c) {
    if (c == 0) return;
    if (zdeg < 0 || ydeg < 0)
      fail(ErrorCode::PreconditionFailed, "negative exponent in eta shape");
    Monomial m = Monomial::unit(2);
    m.e[0] = uint16_t(ydeg);
    m.e[1] = uint16_t(zdeg);
    out.add_term(m, DomainElem::from_rat(yz_ring.coeff, c));
  };
  if (i % 4 == 0 || i % 4 == 1) {
    add(0, ti * bi + 1, 1);
    for (long j = 1; j <= ti - 1; ++j) add(j, (ti - j) * bi, alpha[size_t(j - 1)]);
    add(ti, 0, 1);
  } else {
    add(ti, 0, 1);
    for (long j = 1; j <= ti - 1; ++j) add(ti - j, j * bi - 1, alpha[size_t(j - 1)]);
    add(0, ti * bi - 1, 1);
  }
  return out;
}

LscFamily build_family(const LscParams& params) {
  if (long(params.alpha0.size()) != params.t0 - 1 ||
      long(params.alpha1.size()) != params.t1 - 1)
    fail(ErrorCode::PreconditionFailed, "alpha vector lengths must be t_i - 1");
  LscFamily fam;
  fam.params = params;
  fam.ring = RingCtx{3, DomainDescriptor::Q()};
  int depth = params.depth;
  fam.seq = seq_ab(params.t0, params.t1, depth + 2);
  if (fam.seq.max_I && depth > *fam.seq.max_I)
    fail(ErrorCode::DepthBeyondI,
         "depth " + std::to_string(depth) + " exceeds max I = " +
             std::to_string(*fam.seq.max_I));
  const RingCtx& R = fam.ring;
  auto C = [&](const Rat& v) { return DomainElem::from_rat(R.coeff, v); };
  Poly x1 = Poly::variable(R, 0), x2 = Poly::variable(R, 1), x3 = Poly::variable(R, 2);
  // r = x1 x2 x3 - sum alpha^0_i x2^i - sum alpha^1_j x1^j (top coeffs 1)
  fam.r = x1 * x2 * x3;
  for (long i = 1; i <= params.t0; ++i) {
    Rat c = (i == params.t0) ? Rat(1) : params.alpha0[size_t(i - 1)];
    fam.r = fam.r - Poly::variable(R, 1, uint16_t(i)).scaled(C(c));
  }
  for (long j = 1; j <= params.t1; ++j) {
    Rat c = (j == params.t1) ? Rat(1) : params.alpha1[size_t(j - 1)];
    fam.r = fam.r - Poly::variable(R, 0, uint16_t(j)).scaled(C(c));
  }
  // theta(z) = sum_{i=1..t0} alpha^0_i z^{i-1} in z = x2
  fam.theta = Poly(R);
  for (long i = 1; i <= params.t0; ++i) {
    Rat c = (i == params.t0) ? Rat(1) : params.alpha0[size_t(i - 1)];
    fam.theta = fam.theta + Poly::variable(R, 1, uint16_t(i - 1)).scaled(C(c));
  }
  fam.f = {x2, x1};
  fam.q.resize(1, Poly(R));
  RingCtx yz{2, DomainDescriptor::Q()};
  std::ostringstream log;
  for (long i = 1; i <= depth; ++i) {
    Poly eta_i = eta(i, params, yz);
    Poly qi = eta_i.substitute({fam.f[size_t(i)], fam.r});
    fam.q.push_back(qi);
    auto fi1 = qi.try_div_exact(fam.f[size_t(i - 1)]);
    if (!fi1)
      fail(ErrorCode::ConsistencyFailure,
           "exact division failed at step " + std::to_string(i));
    fam.f.push_back(*fi1);
    fam.transcript.push_back("f_" + std::to_string(i + 1) + " = eta_" +
                             std::to_string(i) + "(f_" + std::to_string(i) +
                             ", r) / f_" + std::to_string(i - 1) + ": exact");
  }
  for (long i = 0; i <= depth; ++i) {
    Derivation Di = jacobian_derivation(fam.f[size_t(i + 1)], fam.f[size_t(i)]);
    fam.D.push_back(Di);
    // D_i(r) = f_i f_{i+1}
    Poly lhs = Di.apply(fam.r);
    Poly rhs = fam.f[size_t(i)] * fam.f[size_t(i + 1)];
    if (lhs != rhs)
      fail(ErrorCode::ConsistencyFailure,
           "D_" + std::to_string(i) + "(r) != f_i f_{i+1}");
    fam.transcript.push_back("D_" + std::to_string(i) + "(r) = f_" +
                             std::to_string(i) + " f_" + std::to_string(i + 1) +
                             ": verified");
    // kernel containment spot checks
    if (!Di.apply(fam.f[size_t(i)]).is_zero() ||
        !Di.apply(fam.f[size_t(i + 1)]).is_zero())
      fail(ErrorCode::ConsistencyFailure, "D_i does not kill its defining pair");
    if (!Di.apply(lhs).is_zero())
      fail(ErrorCode::ConsistencyFailure, "D_i^2(r) != 0");
    if (i >= 1) {
      bool irr = irreducible_check(Di);
      bool expect_irr = !(fam.seq.max_I && i == *fam.seq.max_I);
      if (irr != expect_irr)
        fail(ErrorCode::ConsistencyFailure,
             "irreducibility of D_" + std::to_string(i) +
                 " contradicts the boundary rule");
      fam.transcript.push_back("D_" + std::to_string(i) +
                               (irr ? " irreducible" : " not irreducible (boundary)"));
    }
  }
  return fam;
}

bool homogeneity_check(const LscFamily& fam) {
  if (!fam.params.alpha_zero())
    fail(ErrorCode::PreconditionFailed, "homogeneity needs alpha = 0");
  long t0 = fam.params.t0, t1 = fam.params.t1;
  Weight bt = Weight::of_ints({t0, t1, t0 * t1 - t0 - t1});
  if (!is_w_homogeneous(fam.r, bt)) return false;
  for (size_t i = 0; i < fam.f.size(); ++i) {
    if (!is_w_homogeneous(fam.f[i], bt)) return false;
    long ti = fam.params.t_at(long(i));
    long ai = fam.seq.a[i];
    long di = wdeg(fam.f[i], bt).v.c[0];
    if (ti * di != t0 * t1 * ai) return false;
  }
  return true;
}

DeltaReport delta_recurrence_check(const LscFamily& fam) {
  if (fam.params.t0 < 3) fail(ErrorCode::HypothesisNotMet, "needs t0 >= 3");
  // Z^3 lex with e1 < e2 < e3: encode e1 = (0,0,1), e2 = (0,1,0), e3 = (1,0,0)
  Weight w(std::vector<GammaElem>{GammaElem({0, 0, 1}), GammaElem({0, 1, 0}),
                                  GammaElem({1, 0, 0})});
  DeltaReport rep;
  auto to_paper = [](const GammaElem& g) {
    return std::vector<long long>{g.c[2], g.c[1], g.c[0]};
  };
  std::vector<GammaElem> deltas;
  for (const Poly& fi : fam.f) deltas.push_back(wdeg(fi, w).v);
  for (const GammaElem& d : deltas) rep.deltas.push_back(to_paper(d));
  // base values
  if (!(to_paper(deltas[0]) == std::vector<long long>{0, 1, 0})) return rep;
  if (!(to_paper(deltas[1]) == std::vector<long long>{1, 0, 0})) return rep;
  if (fam.f.size() > 2 && !(to_paper(deltas[2]) == std::vector<long long>{1, 0, 1}))
    return rep;
  if (!(to_paper(wdeg(fam.r, w).v) == std::vector<long long>{1, 1, 1})) return rep;
  for (size_t i = 2; i + 1 < deltas.size(); ++i) {
    long ti = fam.params.t_at(long(i));
    if (!(deltas[i + 1] == deltas[i].scaled(ti) - deltas[i - 1])) return rep;
  }
  rep.ok = true;
  return rep;
}

bool fibonacci_identity_check(const LscFamily& fam, int i_max) {
  if (fam.params.t0 != 3 || fam.params.t1 != 3 || !fam.params.alpha_zero())
    fail(ErrorCode::PreconditionFailed, "needs the (3,3) family with alpha = 0");
  for (int i = 1; i <= i_max; ++i) {
    if (size_t(i + 1) >= fam.f.size()) return false;
    Poly lhs = fam.f[size_t(i - 1)] * fam.f[size_t(i + 1)];
    Poly rhs = fam.f[size_t(i)].pow(3) + fam.r.pow(unsigned(fam.seq.a[size_t(i)]));
    if (lhs != rhs) return false;
  }
  return true;
}

TildeResult build_tilde(const LscFamily& fam, const Poly& lambda_y, const Poly& mu_yz,
                        long i) {
  long t0 = fam.params.t0, t1 = fam.params.t1;
  bool ok = (i == 2 && t0 >= 3) || (i >= 3 && t0 >= 3 && !(t0 == 3 && t1 == 1));
  if (!ok) fail(ErrorCode::HypothesisNotMet, "tilde step needs t0 >= 3 (and not (3,1) for i >= 3)");
  if (size_t(i) >= fam.f.size() || size_t(i + 1) > fam.f.size() - 1)
    fail(ErrorCode::DepthBeyondI, "family not built deep enough");
  const RingCtx yz = lambda_y.ring();
  if (yz.arity != 2 || mu_yz.ring() != yz)
    fail(ErrorCode::ArityMismatch, "lambda, mu live in k[y,z]");
  if (lambda_y.is_zero() || lambda_y.depends_on(1))
    fail(ErrorCode::PreconditionFailed, "lambda must be a nonzero element of k[y]");
  if (mu_yz.is_zero())
    fail(ErrorCode::DegenerateInput, "mu = 0 reproduces the untwisted derivation");
  // mu in z k[y,z]
  for (const auto& [m, c] : mu_yz.terms())
    if (m.e[1] == 0) fail(ErrorCode::PreconditionFailed, "mu must lie in z k[y,z]");
  Poly g = mgcd(lambda_y, mu_yz);
  if (!g.is_constant()) fail(ErrorCode::CommonFactor, "lambda and mu share a factor");

  const Poly& fi = fam.f[size_t(i)];
  const Poly& fim1 = fam.f[size_t(i - 1)];
  Poly rtilde = (i == 2) ? Poly::variable(fam.ring, 1) : fam.r;
  Poly lam_fi = lambda_y.substitute({fi, Poly::zero(fam.ring)});
  Poly r_i = lam_fi * rtilde - mu_yz.substitute({fi, fim1});

  long ai = fam.seq.a[size_t(i)];
  // clear lambda denominators: h(y,z) = etatilde_i(y, z lambda(y)^-1) lambda(y)^a_i
  Poly h(yz);
  if (i == 2) {
    // etatilde_2(y,z) = y + theta(z), deg theta = a_2
    h = Poly::variable(yz, 0) * lambda_y.pow(unsigned(ai));
    // theta coefficients: theta(z) = sum_{j>=0} th_j z^j
    for (long j = 0; j <= ai; ++j) {
      Rat th = (j == t0 - 1) ? Rat(1)
                             : (j < long(fam.params.alpha0.size())
                                    ? fam.params.alpha0[size_t(j)]
                                    : Rat(0));
      if (th == 0) continue;
      h = h + Poly::variable(yz, 1, uint16_t(j))
                  .scaled_rat(th) * lambda_y.pow(unsigned(ai - j));
    }
  } else {
    Poly eta_i = eta(i, fam.params, yz);
    for (const auto& [m, c] : eta_i.terms()) {
      long zdeg = m.e[1];
      Poly term = Poly::term(yz, m, c) * lambda_y.pow(unsigned(ai - zdeg));
      h = h + term;
    }
  }
  Poly tilde_q = h.substitute({fi, r_i});
  auto tf = tilde_q.try_div_exact(fim1);
  if (!tf)
    fail(ErrorCode::ConsistencyFailure, "tilde quotient is not polynomial");
  TildeResult out;
  out.r_i = r_i;
  out.tilde_f = *tf;
  out.tilde_D = jacobian_derivation(*tf, fi);
  Poly expected =
      (i == 2) ? lam_fi * out.tilde_f : lam_fi * fi * out.tilde_f;
  if (out.tilde_D.apply(r_i) != expected)
    fail(ErrorCode::ConsistencyFailure, "tilde derivation image of r_i is wrong");
  if (!irreducible_check(out.tilde_D))
    fail(ErrorCode::ConsistencyFailure, "tilde derivation is not irreducible");
  std::ostringstream os;
  os << "tilde_f_" << (i + 1) << " polynomial; tilde_D_" << i
     << "(r_i) = " << (i == 2 ? "lambda(f_i) tilde_f" : "lambda(f_i) f_i tilde_f")
     << ": verified; irreducible";
  out.transcript = os.str();
  return out;
}

bool sigma3_check(const LscFamily& fam) {
  if (fam.params.t0 != 3 || fam.params.t1 != 1)
    fail(ErrorCode::PreconditionFailed, "needs the (3,1) family");
  if (fam.f.size() < 6)
    fail(ErrorCode::PreconditionFailed, "build the family to depth 4 first");
  const RingCtx& R = fam.ring;
  Rat a2 = fam.params.alpha0.size() >= 2 ? fam.params.alpha0[1] : Rat(0);
  // D(x1) = theta'(x2), D(x2) = x3, D(x3) = 0 kills f_2 = x1 x3 - theta(x2)
  Derivation Dt({fam.theta.diff(1), Poly::variable(R, 2), Poly(R)});
  const Poly& f2 = fam.f[2];
  if (!Dt.apply(f2).is_zero()) return false;
  Derivation mf2D = Dt.scaled(-f2);
  Endo sigma_t = exp_derivation_checked(mf2D);
  Poly y1 = sigma_t.images()[0];
  Poly y2 = sigma_t.images()[1];
  if (sigma_t.images()[2] != Poly::variable(R, 2)) return false;
  // y2 = x2 - f2 x3 and f_4 = -y2 - alpha^0_2
  Poly x2 = Poly::variable(R, 1), x3 = Poly::variable(R, 2);
  if (y2 != x2 - f2 * x3) return false;
  Poly a2c = Poly::constant(R, DomainElem::from_rat(R.coeff, a2));
  if (fam.f[4] != -y2 - a2c) return false;
  if (y1 != fam.f[3]) return false;
  // closed form f_3 = x1 - (2 x2 + alpha^0_2) f2 + x3 f2^2
  Poly x1 = Poly::variable(R, 0);
  if (fam.f[3] != x1 - (x2.scaled_rat(2) + a2c) * f2 + x3 * f2 * f2) return false;
  // sigma3 = sigma_t . nu with nu = (x1, -x2 - alpha, x3)
  Endo nu({x1, -x2 - a2c, x3});
  nu.set_inverse_witness({x1, -x2 - a2c, x3});
  Endo sigma3 = compose(sigma_t, nu);
  if (sigma3.images()[0] != fam.f[3]) return false;
  if (sigma3.images()[1] != fam.f[4]) return false;
  if (sigma3.images()[2] != x3) return false;
  if (sigma3.apply(f2) != f2) return false;
  // f_5 = x3 f_4 - 1
  if (fam.f[5] != x3 * fam.f[4] - Poly::constant(R, 1)) return false;
  // automorphism witness: (sigma_t . nu)^-1 = nu . exp(f2 D)
  Endo sigma_t_inv(*sigma_t.inverse_witness());
  Endo inv = compose(nu, sigma_t_inv);
  Endo sigma3_copy = sigma3;
  return verify_automorphism(sigma3_copy, inv);
}

}  // namespace polywild
