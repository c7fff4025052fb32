#include "polywild/tame2.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polywild {

namespace {

// d_i = t * d_j with t a nonnegative integer, if such t exists.
std::optional<long> degree_ratio(const GammaElem& di, const GammaElem& dj) {
  if (dj.is_zero()) return std::nullopt;
  long t = -1;
  for (size_t k = 0; k < dj.c.size(); ++k) {
    if (dj.c[k] == 0) continue;
    if (di.c[k] % dj.c[k] != 0) return std::nullopt;
    long cand = di.c[k] / dj.c[k];
    if (t == -1)
      t = cand;
    else if (t != cand)
      return std::nullopt;
  }
  if (t < 0) return std::nullopt;
  for (size_t k = 0; k < dj.c.size(); ++k)
    if (di.c[k] != t * dj.c[k]) return std::nullopt;
  return t;
}

// top1 = a * top2 for a scalar a in K, with both w-homogeneous of equal degree.
std::optional<Frac> proportionality(const Poly& top1, const Poly& top2) {
  if (top1.is_zero() || top2.is_zero()) return std::nullopt;
  if (top1.term_count() != top2.term_count()) return std::nullopt;
  auto it1 = top1.terms().begin();
  auto it2 = top2.terms().begin();
  Frac a;
  bool first = true;
  for (; it1 != top1.terms().end(); ++it1, ++it2) {
    if (!(it1->first == it2->first)) return std::nullopt;
    Frac ratio(it1->second, it2->second);
    if (first) {
      a = ratio;
      first = false;
    } else if (!(a == ratio)) {
      return std::nullopt;
    }
  }
  return a;
}

GammaElem endo_wdeg(const Endo& phi, const Weight& w) {
  GammaElem acc = GammaElem::zero(w.gamma_dim());
  for (const Poly& im : phi.images()) {
    WDeg d = wdeg(im, w);
    if (d.minus_inf) fail(ErrorCode::DegenerateInput, "zero image in endomorphism");
    acc = acc + d.v;
  }
  return acc;
}

}  // namespace

Endo ReductionStep::as_endo(const RingCtx& ring) const {
  if (kind == Kind::Elementary) {
    ElementaryStep s;
    s.target = target;
    s.alpha = DomainElem::one(ring.coeff);
    s.f = Poly::variable(ring, 1 - target, uint16_t(exponent)).scaled(-c);
    return Endo::from_elementary(ring, s);
  }
  AffineStep s;
  s.matrix = matrix;
  s.translation.assign(2, DomainElem::zero(ring.coeff));
  return Endo::from_affine(ring, s);
}

std::optional<ReductionStep> elementary_reduction_step(const Endo& phi, const Weight& w) {
  if (phi.ring().arity != 2) fail(ErrorCode::ArityMismatch, "reduction needs arity 2");
  for (int i = 0; i < 2; ++i) {  // i = 1 before i = 2
    int j = 1 - i;
    const Poly& fi = phi.images()[size_t(i)];
    const Poly& fj = phi.images()[size_t(j)];
    if (fi.is_zero() || fj.is_zero())
      fail(ErrorCode::DegenerateInput, "zero image");
    GammaElem di = wdeg(fi, w).v;
    GammaElem dj = wdeg(fj, w).v;
    if (!dj.positive())
      fail(ErrorCode::DegenerateInput, "deg_w of the partner image is not positive");
    auto t = degree_ratio(di, dj);
    if (!t || *t < 1) continue;
    Poly topi = initial_form(fi, w);
    Poly topj_pow = initial_form(fj, w).pow(unsigned(*t));
    auto a = proportionality(topi, topj_pow);
    if (!a) continue;
    if (!a->in_domain()) continue;  // c must lie in R
    ReductionStep step;
    step.kind = ReductionStep::Kind::Elementary;
    step.target = i;
    step.c = a->as_domain_elem();
    step.exponent = *t;
    return step;
  }
  return std::nullopt;
}

std::optional<ReductionStep> affine_reduction_step(const Endo& phi, const Weight& w) {
  if (phi.ring().arity != 2) fail(ErrorCode::ArityMismatch, "reduction needs arity 2");
  const Poly& f1 = phi.images()[0];
  const Poly& f2 = phi.images()[1];
  GammaElem d1 = wdeg(f1, w).v;
  GammaElem d2 = wdeg(f2, w).v;
  if (!d1.positive() || !d2.positive())
    fail(ErrorCode::DegenerateInput, "affine reduction needs positive image degrees");
  if (!(d1 == d2)) return std::nullopt;
  Poly top1 = initial_form(f1, w);
  Poly top2 = initial_form(f2, w);
  auto a = proportionality(top1, top2);
  if (!a) return std::nullopt;
  if (!v_of_r_member(*a)) return std::nullopt;
  // a = g1/g2 reduced; find u g1 + v g2 = 1 and use rows (g2, -g1), (u, v)
  const DomainElem& g1 = a->num();
  const DomainElem& g2 = a->den();
  auto eg = ext_gcd_checked(g1, g2);
  if (!eg.g.is_one())
    fail(ErrorCode::ConsistencyFailure, "reduced fraction with non-unit gcd");
  ReductionStep step;
  step.kind = ReductionStep::Kind::Affine;
  step.matrix = {{g2, -g1}, {eg.u, eg.v}};
  // verify the degree drop before returning
  Endo tau = step.as_endo(phi.ring());
  Endo next = compose(phi, tau);
  if (!(endo_wdeg(next, w) < endo_wdeg(phi, w))) return std::nullopt;
  return step;
}

TameVerdict decide_tame(const Endo& phi_in, const Tame2Options& opts) {
  if (phi_in.ring().arity != 2) fail(ErrorCode::ArityMismatch, "decide_tame needs arity 2");
  if (!phi_in.has_inverse())
    fail(ErrorCode::NotAutomorphism, "decide_tame needs an automorphism witness");
  const Weight& w = opts.w;
  if (!(w.arity() == 2 && w.w[0].positive() && w.w[1].positive()))
    fail(ErrorCode::PreconditionFailed, "the verdict path needs both weight entries > 0");
  GammaElem total = w.total();
  Endo phi = phi_in;
  TameVerdict verdict;
  GammaElem last = endo_wdeg(phi, w);
  while (true) {
    GammaElem cur = endo_wdeg(phi, w);
    if (verdict.certificate.size() > 0 && !(cur < last)) {
      fail(ErrorCode::ConsistencyFailure, "reduction step did not decrease deg_w");
    }
    last = cur;
    if (cur == total) {
      for (const Poly& im : phi.images())
        if (im.total_degree() > 1)
          fail(ErrorCode::ConsistencyFailure, "terminal state not affine");
      verdict.tame = true;
      verdict.terminal_affine = phi;
      return verdict;
    }
    std::optional<ReductionStep> step = elementary_reduction_step(phi, w);
    if (!step) step = affine_reduction_step(phi, w);
    if (!step) {
      WildStuck stuck;
      stuck.images = phi.images();
      stuck.w = w;
      stuck.degw = cur;
      for (const Poly& im : phi.images()) stuck.initial_forms.push_back(initial_form(im, w));
      verdict.tame = false;
      verdict.stuck = std::move(stuck);
      return verdict;
    }
    phi = compose(phi, step->as_endo(phi.ring()));
    verdict.certificate.push_back(*step);
    if (verdict.certificate.size() > 100000)
      fail(ErrorCode::ExceededCap, "reduction loop did not terminate");
  }
}

namespace {

struct TopFormRoots {
  long p1 = 0, p2 = 0, q1 = 0, q2 = 0, m = 0;
  // roots of F(u) = sum c_k u^k, top = sum c_k x1^(q1 k) x2^(q2 (m-k))
  std::vector<Frac> roots;  // roots found in K
  bool complete = false;    // true when every K-root was found
};

// Decomposes the top bidegree form of f per the binomial factorization; only
// the K-roots are relevant for the membership conditions.
std::optional<TopFormRoots> top_form_roots(const Poly& f) {
  auto [p2l, p1l] = bidegree(f);
  TopFormRoots out;
  out.p1 = p1l;
  out.p2 = p2l;
  if (out.p1 <= 0 || out.p2 <= 0) return std::nullopt;
  Weight wf = bidegree_weight(f);
  GammaElem top_deg = wdeg(f, wf).v;
  if (!(top_deg == GammaElem({out.p1 * out.p2}))) return std::nullopt;  // condition (a)
  Poly top = initial_form(f, wf);
  long g = std::gcd(out.p1, out.p2);
  out.q1 = out.p1 / g;
  out.q2 = out.p2 / g;
  out.m = g;
  // condition (b): x1^p1 and x2^p2 appear
  if (top.coeff_of(Monomial::var(2, 0, uint16_t(out.p1))).is_zero()) return std::nullopt;
  if (top.coeff_of(Monomial::var(2, 1, uint16_t(out.p2))).is_zero()) return std::nullopt;
  // collect F(u)
  std::vector<DomainElem> cs(size_t(out.m + 1), DomainElem::zero(f.ring().coeff));
  for (const auto& [mono, c] : top.terms()) {
    long a1 = mono.e[0];
    if (a1 % out.q1 != 0) return std::nullopt;
    long k = a1 / out.q1;
    if (k < 0 || k > out.m) return std::nullopt;
    cs[size_t(k)] = c;
  }
  const DomainDescriptor& dom = f.ring().coeff;
  if (dom.kind == DomainKind::Rational || dom.kind == DomainKind::Integer) {
    std::vector<Rat> rc;
    for (const auto& c : cs) rc.push_back(c.is_zero() ? Rat(0) : c.rat_value());
    for (const Rat& r : rational_roots(rc)) {
      if (r == 0) continue;  // b in K^x only
      out.roots.push_back(Frac(DomainElem::from_rat(dom, r), DomainElem::one(dom)));
    }
    out.complete = true;
    return out;
  }
  if (dom.kind == DomainKind::UnivariatePoly) {
    if (out.m == 1) {
      // F(u) = c1 u + c0: single root -c0/c1
      if (!cs[0].is_zero()) out.roots.push_back(-Frac(cs[0], cs[1]));
      out.complete = true;
      return out;
    }
    fail(ErrorCode::UnsupportedDomain,
         "root extraction over Q(t) beyond pure powers is not supported");
  }
  fail(ErrorCode::UnsupportedDomain, "tamely-reduced test over " + dom.name());
}

}  // namespace

bool tamely_reduced_check(const Poly& f) {
  if (f.ring().arity != 2) fail(ErrorCode::ArityMismatch, "check needs arity 2");
  if (f.is_constant()) fail(ErrorCode::ConstantInput, "constant polynomial");
  auto [p2, p1] = bidegree(f);
  if (p1 + p2 == 1) return true;
  if (p1 == 0 || p2 == 0)
    fail(ErrorCode::HypothesisNotMet, "univariate of degree >= 2: conditions (a)/(b) void");
  auto data = top_form_roots(f);
  if (!data)
    fail(ErrorCode::HypothesisNotMet, "top bidegree form conditions (a)/(b) fail");
  if (data->p1 == data->p2) {
    // no root may lie in V(R); over a PID V(R) = K^x, so any K-root breaks it
    for (const Frac& b : data->roots)
      if (v_of_r_member(b)) return false;
    return true;
  }
  if (data->p1 < data->p2 && data->p2 % data->p1 == 0) {
    for (const Frac& b : data->roots)
      if (b.in_domain()) return false;
    return true;
  }
  if (data->p1 > data->p2 && data->p1 % data->p2 == 0) {
    for (const Frac& b : data->roots) {
      Frac inv = Frac(b.den(), b.num());
      if (inv.in_domain()) return false;
    }
    return true;
  }
  return true;  // neither degree divides the other: conditions hold vacuously
}

PolyReduction tame_reduce_poly(const Poly& f_in) {
  if (f_in.ring().arity != 2) fail(ErrorCode::ArityMismatch, "reduce needs arity 2");
  if (f_in.is_constant()) fail(ErrorCode::ConstantInput, "cannot reduce a constant");
  const RingCtx& ring = f_in.ring();
  Poly f = f_in;
  Endo tau = Endo::identity(ring);
  int guard = 0;
  while (true) {
    if (++guard > 10000) fail(ErrorCode::ExceededCap, "poly reduction loop");
    auto [p2, p1] = bidegree(f);
    if (p1 + p2 <= 1) break;
    if (p1 == 0 || p2 == 0) break;  // univariate: minimal already
    std::optional<TopFormRoots> data;
    try {
      data = top_form_roots(f);
    } catch (const Error&) {
      break;
    }
    if (!data) break;
    std::optional<Endo> move;
    if (data->p1 == data->p2) {
      // GL(2,R) move killing one root (over a PID any K-root qualifies)
      for (const Frac& b : data->roots) {
        const DomainElem& g1 = b.num();
        const DomainElem& g2 = b.den();
        auto eg = ext_gcd_checked(g1, g2);
        if (!eg.g.is_unit()) continue;
        DomainElem gi = *eg.g.try_inverse();
        AffineStep s;
        // rows: tau(x1) = g1 x1 - v x2, tau(x2) = g2 x1 + u x2 gives
        // tau(x1 - b x2) proportional to x2; det = g1 u + g2 v = 1
        s.matrix = {{g1, -(eg.v * gi)}, {g2, eg.u * gi}};
        s.translation = {DomainElem::zero(ring.coeff), DomainElem::zero(ring.coeff)};
        move = Endo::from_affine(ring, s);
        break;
      }
    } else {
      bool swap = data->p1 > data->p2;  // case (iii): roles of x1, x2 exchanged
      long q = swap ? data->q1 : data->q2;
      if ((swap ? data->p1 % data->p2 : data->p2 % data->p1) == 0) {
        for (const Frac& b : data->roots) {
          Frac use = swap ? Frac(b.den(), b.num()) : b;
          if (!use.in_domain()) continue;
          ElementaryStep s;
          s.target = swap ? 1 : 0;
          s.alpha = DomainElem::one(ring.coeff);
          s.f = Poly::variable(ring, 1 - s.target, uint16_t(q)).scaled(use.as_domain_elem());
          move = Endo::from_elementary(ring, s);
          break;
        }
      }
    }
    if (!move) break;
    Poly next = move->apply(f);
    auto [n2, n1] = bidegree(next);
    if (n1 + n2 >= p1 + p2)
      fail(ErrorCode::ConsistencyFailure, "reduction move did not decrease |w(f)|");
    f = next;
    tau = compose(*move, tau);
  }
  return {tau, f};
}

namespace {

bool in_z_half(const Rat& r) {
  // membership in Z[1/2]: denominator a power of two
  Int d = rat_den(r);
  while (d % 2 == 0) d /= 2;
  return d == 1;
}

TypeClassification classify_type2_over_z(const Poly& f, long l, long m) {
  const RingCtx& ring = f.ring();
  TypeClassification none{CoordinateType::NoneOfThem, ""};
  if (m % 2 != 0) {
    none.detail = "x2-degree is odd; no even root-of-unity structure";
    return none;
  }
  // zeta = -1, e = 2 over Z
  Rat zm1 = -2;  // zeta - 1
  auto cs = f.coeffs_in(1);  // coefficients in x2 over Z[x1]
  if (long(cs.size()) != m + 1) return none;
  // leading x2-coefficient must be a constant c_H (zeta-1)^m
  if (!cs[size_t(m)].is_constant()) {
    none.detail = "leading x2-coefficient not constant";
    return none;
  }
  Rat ctop = cs[size_t(m)].constant_coeff().rat_value();
  Rat ch = ctop;
  for (long k = 0; k < m; ++k) ch /= zm1;
  if (!in_z_half(ch)) {
    none.detail = "leading coefficient not in R[(zeta-1)^-1]";
    return none;
  }
  // g from the x2^(m-1) coefficient: c_H * m * (zeta-1)^(m-1) * g
  Rat scale = ch * m;
  for (long k = 0; k + 1 < m; ++k) scale *= zm1;
  RingCtx qring{2, DomainDescriptor::Q()};
  Poly gq = cs[size_t(m - 1)].embed(DomainDescriptor::Q()).scaled_rat(Rat(1) / scale);
  if (gq.depends_on(1)) return none;
  // g must lie in R[x1] with deg >= 2 and odd leading coefficient
  for (const auto& [mono, c] : gq.terms())
    if (!rat_is_integer(c.rat_value())) {
      none.detail = "recovered g is not integral";
      return none;
    }
  long lam = gq.degree_in(0);
  if (lam < 2 || lam != l) {
    none.detail = "recovered g has the wrong degree";
    return none;
  }
  Rat c_lead = gq.coeff_of(Monomial::var(2, 0, uint16_t(lam))).rat_value();
  if (rat_num(c_lead) % 2 == 0) {
    none.detail = "leading coefficient of g lies in (zeta-1)R";
    return none;
  }
  // substitute x2 = (Y - g) / (zeta - 1) and inspect the Y-coefficients
  Poly fq = f.embed(DomainDescriptor::Q());
  std::vector<Poly> images = {Poly::variable(qring, 0),
                              (Poly::variable(qring, 1) - gq).scaled_rat(Rat(1) / zm1)};
  Poly ftilde = fq.substitute(images);
  auto ycs = ftilde.coeffs_in(1);
  // Y^0: a' x1 + constant
  if (ycs[0].degree_in(0) != 1 || ycs[0].term_count() > 2) {
    none.detail = "constant Y-part is not linear in x1";
    return none;
  }
  Rat aprime = ycs[0].coeff_of(Monomial::var(2, 0, 1)).rat_value();
  if (aprime == 0 || !in_z_half(aprime)) {
    none.detail = "a' not in R[(zeta-1)^-1]";
    return none;
  }
  Rat h0 = ycs[0].constant_coeff().rat_value();
  if (!in_z_half(h0)) return none;
  for (size_t k = 1; k < ycs.size(); ++k) {
    if (ycs[k].is_zero()) continue;
    if (k % 2 == 1) {
      none.detail = "odd power of y2 present";
      return none;
    }
    if (!ycs[k].is_constant() || !in_z_half(ycs[k].constant_coeff().rat_value())) {
      none.detail = "y2-power coefficient not in R[(zeta-1)^-1]";
      return none;
    }
  }
  TypeClassification r;
  r.type = CoordinateType::II;
  std::ostringstream os;
  os << "zeta=-1, e=2, g=" << gq.to_string() << ", a'=" << aprime.str();
  r.detail = os.str();
  return r;
}

}  // namespace

TypeClassification classify_coordinate_type(const Poly& f) {
  const DomainDescriptor& dom = f.ring().coeff;
  if (dom.kind != DomainKind::Integer && dom.kind != DomainKind::UnivariatePoly &&
      dom.kind != DomainKind::Rational)
    fail(ErrorCode::UnsupportedDomain, "classifier supports Q, Z and Q[t]");
  auto [p2, p1] = bidegree(f);
  if (!(p1 >= p2 && p2 >= 1))
    fail(ErrorCode::HypothesisNotMet, "need deg_x1 f >= deg_x2 f >= 1");
  auto sd = slope_factor(f);
  if (!sd) return {CoordinateType::NoneOfThem, "top form is not a power of a binomial"};
  long l = sd->l, m = sd->m;
  if (l >= 2 && m == 1) {
    // type I shape: f = a x2 + g(x1)
    Poly dfdx2 = f.diff(1);
    if (!dfdx2.is_constant())
      return {CoordinateType::NoneOfThem, "not of the form a*x2 + g(x1)"};
    DomainElem a = dfdx2.constant_coeff();
    Poly g = f - Poly::variable(f.ring(), 1).scaled(a);
    if (g.depends_on(1))
      return {CoordinateType::NoneOfThem, "not of the form a*x2 + g(x1)"};
    if (g.degree_in(0) < 2)
      return {CoordinateType::NoneOfThem, "deg g < 2"};
    DomainElem c = g.coeff_of(Monomial::var(2, 0, uint16_t(g.degree_in(0))));
    if (c.try_div_exact(a))
      return {CoordinateType::NoneOfThem, "leading coefficient lies in aR"};
    return {CoordinateType::I, "a=" + a.to_string() + ", g=" + g.to_string()};
  }
  if (l >= 2 && m >= 2) {
    if (dom.kind != DomainKind::Integer)
      return {CoordinateType::NoneOfThem,
              "zeta - 1 is a unit in a Q-domain, so no type II structure"};
    return classify_type2_over_z(f, l, m);
  }
  // l == 1: types III (m=1), IV (m=2), V (m>=3) all need V(R) != K^x
  return {CoordinateType::NoneOfThem, "V(R)=K^x over a PID"};
}

bool h_membership(const Endo& phi, const Poly& f) {
  if (!phi.has_inverse()) fail(ErrorCode::NotAutomorphism, "h_membership needs a witness");
  if (phi.apply(f) != f) return false;
  return decide_tame(phi).tame;
}

}  // namespace polywild
