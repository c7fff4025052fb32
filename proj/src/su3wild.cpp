#include "polywild/su3wild.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace polywild {

namespace {

bool z_independent(const GammaElem& a, const GammaElem& b) {
  // rank of the 2 x m integer matrix is 2
  Weight w(std::vector<GammaElem>{a, b});
  return w.rank() == 2;
}

std::optional<long> scalar_ratio(const GammaElem& num, const GammaElem& den) {
  if (den.is_zero()) return std::nullopt;
  long t = 0;
  bool found = false;
  for (size_t k = 0; k < den.c.size(); ++k) {
    if (den.c[k] == 0) continue;
    if (num.c[k] % den.c[k] != 0) return std::nullopt;
    long cand = num.c[k] / den.c[k];
    if (!found) {
      t = cand;
      found = true;
    } else if (t != cand) {
      return std::nullopt;
    }
  }
  for (size_t k = 0; k < den.c.size(); ++k)
    if (num.c[k] != t * den.c[k]) return std::nullopt;
  return t;
}

// coefficient-scalar proportionality of two nonzero polynomials
bool approx_dependent(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return false;
  if (a.term_count() != b.term_count()) return false;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  std::optional<Frac> ratio;
  for (; ia != a.terms().end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return false;
    Frac r(ia->second, ib->second);
    if (!ratio)
      ratio = r;
    else if (!(*ratio == r))
      return false;
  }
  return true;
}

// membership of a monomial exponent vector in the semigroup N e1 + N e2
bool monomial_semigroup_member(const Monomial& target, const Monomial& e1,
                               const Monomial& e2) {
  long max_a = 0, max_b = 0;
  for (int v = 0; v < target.n; ++v) {
    if (e1.e[size_t(v)] > 0)
      max_a = std::max(max_a, long(target.e[size_t(v)]) / e1.e[size_t(v)] + 1);
    if (e2.e[size_t(v)] > 0)
      max_b = std::max(max_b, long(target.e[size_t(v)]) / e2.e[size_t(v)] + 1);
  }
  if (e1.total_degree() == 0 || e2.total_degree() == 0) return false;
  max_a = std::max(max_a, long(target.total_degree() / std::max<long>(e1.total_degree(), 1)) + 1);
  max_b = std::max(max_b, long(target.total_degree() / std::max<long>(e2.total_degree(), 1)) + 1);
  for (long a = 0; a <= max_a; ++a) {
    for (long b = 0; b <= max_b; ++b) {
      bool ok = true;
      for (int v = 0; v < target.n && ok; ++v)
        if (long(target.e[size_t(v)]) != a * e1.e[size_t(v)] + b * e2.e[size_t(v)]) ok = false;
      if (ok) return true;
    }
  }
  return false;
}

// bounded-degree membership of p in k[g1, g2], exact when it answers Holds
Clause subalgebra_membership(const Poly& p, const Poly& g1, const Poly& g2) {
  if (p.is_zero()) return Clause::Holds;
  if (g1.is_zero() || g2.is_zero()) return Clause::Inconclusive;
  long v1 = std::max<long>(g1.terms().begin()->first.total_degree(), 1);
  long v2 = std::max<long>(g2.terms().begin()->first.total_degree(), 1);
  long bound = p.total_degree();
  // candidate products g1^a g2^b whose *lowest* monomial degree stays <= bound
  std::vector<std::pair<long, long>> idx;
  std::vector<Poly> basis;
  for (long a = 0; a * v1 <= bound; ++a)
    for (long b = 0; a * v1 + b * v2 <= bound; ++b) {
      idx.emplace_back(a, b);
      basis.push_back(g1.pow(unsigned(a)) * g2.pow(unsigned(b)));
    }
  // solve sum c_ab basis = p by linear algebra over Q
  std::map<Monomial, size_t, GrlexLess> rows;
  auto note = [&](const Poly& q) {
    for (const auto& [m, c] : q.terms())
      if (!rows.count(m)) rows.emplace(m, rows.size());
  };
  for (const Poly& bq : basis) note(bq);
  note(p);
  size_t R = rows.size(), C = basis.size();
  std::vector<std::vector<Rat>> M(R, std::vector<Rat>(C + 1, Rat(0)));
  for (size_t j = 0; j < C; ++j)
    for (const auto& [m, c] : basis[j].terms()) M[rows[m]][j] = c.rat_value();
  for (const auto& [m, c] : p.terms()) M[rows[m]][C] = c.rat_value();
  size_t row = 0;
  for (size_t col = 0; col < C && row < R; ++col) {
    size_t piv = row;
    while (piv < R && M[piv][col] == 0) ++piv;
    if (piv == R) continue;
    std::swap(M[piv], M[row]);
    Rat inv = Rat(1) / M[row][col];
    for (size_t j = col; j <= C; ++j) M[row][j] *= inv;
    for (size_t i = 0; i < R; ++i) {
      if (i == row || M[i][col] == 0) continue;
      Rat fct = M[i][col];
      for (size_t j = col; j <= C; ++j) M[i][j] -= fct * M[row][j];
    }
    ++row;
  }
  for (size_t i = row; i < R; ++i)
    if (M[i][C] != 0) return Clause::Inconclusive;  // not solvable within the bound
  return Clause::Holds;
}

Rat require_rat(const DomainElem& e) { return e.rat_value(); }

}  // namespace

SUReport su_condition_check(const std::vector<Poly>& F, const std::vector<Poly>& G,
                            const Weight& w) {
  if (F.size() != 3 || G.size() != 3)
    fail(ErrorCode::ArityMismatch, "condition check needs triples");
  const RingCtx& ring = F[0].ring();
  if (ring.arity != 3) fail(ErrorCode::ArityMismatch, "needs arity 3");
  if (!w.all_positive())
    fail(ErrorCode::PreconditionFailed, "weight entries must be positive");
  SUReport rep;
  const Poly &f1 = F[0], &f2 = F[1], &f3 = F[2];
  const Poly &g1 = G[0], &g2 = G[1], &g3 = G[2];

  // (SU1) g1 = f1 + a f3^2 + c f3, g2 = f2 + b f3, g3 - f3 in k[g1,g2]
  {
    bool shape_ok = true;
    Poly d2 = g2 - f2;
    if (d2.is_zero()) {
      rep.b = Rat(0);
    } else if (!f3.is_zero() && d2.divisible_by(f3)) {
      Poly q = d2.div_exact(f3);
      if (q.is_constant()) {
        rep.b = require_rat(q.constant_coeff());
      } else {
        shape_ok = false;
      }
    } else {
      shape_ok = false;
    }
    Poly d1 = g1 - f1;
    if (shape_ok) {
      if (d1.is_zero()) {
        rep.a = Rat(0);
        rep.c = Rat(0);
      } else if (!f3.is_zero() && d1.divisible_by(f3)) {
        Poly q = d1.div_exact(f3);  // = a f3 + c
        // split q into a*f3 + c with a, c scalars
        Poly qc = q;
        Rat aval = 0;
        if (!f3.is_constant()) {
          // match the leading term of f3
          auto [lm, lc] = f3.leading_term();
          DomainElem qcoef = q.coeff_of(lm);
          aval = require_rat(qcoef) / require_rat(lc);
          qc = q - f3.scaled_rat(aval);
        }
        if (qc.is_constant()) {
          rep.a = aval;
          rep.c = qc.is_zero() ? Rat(0) : require_rat(qc.constant_coeff());
        } else {
          shape_ok = false;
        }
      } else {
        shape_ok = false;
      }
    }
    if (!shape_ok) {
      rep.su1 = Clause::Fails;
    } else {
      Clause member = subalgebra_membership(g3 - f3, g1, g2);
      rep.su1 = member;
    }
  }

  WDeg df1 = wdeg(f1, w), df2 = wdeg(f2, w), df3 = wdeg(f3, w);
  WDeg dg1 = wdeg(g1, w), dg2 = wdeg(g2, w), dg3 = wdeg(g3, w);

  // (SU2) deg f1 <= deg g1 and deg f2 = deg g2
  rep.su2 = (df1 <= dg1 && df2 == dg2) ? Clause::Holds : Clause::Fails;

  // (SU3) (g1^w)^2 ~ (g2^w)^s for an odd s >= 3
  {
    rep.su3 = Clause::Fails;
    if (!g1.is_zero() && !g2.is_zero()) {
      GammaElem two_d1 = dg1.v.scaled(2);
      auto s = scalar_ratio(two_d1, dg2.v);
      if (s && *s >= 3 && *s % 2 == 1) {
        Poly lhs = initial_form(g1, w).pow(2);
        Poly rhs = initial_form(g2, w).pow(unsigned(*s));
        if (approx_dependent(lhs, rhs)) {
          rep.su3 = Clause::Holds;
          rep.odd_s = *s;
        }
      }
    }
  }

  // (SU4) deg f3 <= deg g1 and f3^w not in k[g1^w, g2^w]
  {
    rep.su4 = Clause::Fails;
    if (df3 <= dg1) {
      Poly t3 = initial_form(f3, w);
      Poly t1 = initial_form(g1, w);
      Poly t2 = initial_form(g2, w);
      if (w.rank() == 3 && t3.term_count() == 1 && t1.term_count() == 1 &&
          t2.term_count() == 1) {
        bool member = monomial_semigroup_member(t3.terms().begin()->first,
                                                t1.terms().begin()->first,
                                                t2.terms().begin()->first);
        rep.su4 = member ? Clause::Fails : Clause::Holds;
      } else {
        Clause member = subalgebra_membership(t3, t1, t2);
        rep.su4 = member == Clause::Holds ? Clause::Fails : Clause::Inconclusive;
      }
    }
  }

  // (SU5) deg g3 < deg f3
  rep.su5 = (dg3 < df3) ? Clause::Holds : Clause::Fails;

  // (SU6) deg g3 < deg g1 - deg g2 + deg dg1 ^ dg2
  {
    rep.su6 = Clause::Fails;
    auto wedge = wedge2(g1, g2);
    WDeg dw = wdeg_form(wedge, w);
    if (!dw.minus_inf && !dg1.minus_inf && !dg2.minus_inf) {
      GammaElem bound = dg1.v - dg2.v + dw.v;
      if (!dg3.minus_inf ? (dg3.v < bound) : true) rep.su6 = Clause::Holds;
    }
  }

  // weak clauses
  {
    // (SU1') g1-f1 in k[f2,f3], g2-f2 in k[f3], g3-f3 in k[g1,g2]
    Clause m1 = subalgebra_membership(g1 - f1, f2, f3);
    Clause m2;
    {
      Poly d2 = g2 - f2;
      // membership in k[f3]: solve with g2 := f3, g1 := f3 (degenerate pair)
      m2 = subalgebra_membership(d2, f3, f3);
    }
    Clause m3 = subalgebra_membership(g3 - f3, g1, g2);
    auto combine = [](Clause x, Clause y, Clause z) {
      if (x == Clause::Fails || y == Clause::Fails || z == Clause::Fails)
        return Clause::Fails;
      if (x == Clause::Inconclusive || y == Clause::Inconclusive ||
          z == Clause::Inconclusive)
        return Clause::Inconclusive;
      return Clause::Holds;
    };
    rep.su1p = combine(m1, m2, m3);
    // (SU2') total degrees
    rep.su2p = (f1.total_degree() <= g1.total_degree() &&
                f2.total_degree() <= g2.total_degree())
                   ? Clause::Holds
                   : Clause::Fails;
    // (SU3') deg g2 < deg g1 and g1^w not in k[g2^w]
    bool deg_lt = dg2 < dg1;
    Clause not_in = Clause::Fails;
    if (deg_lt) {
      Poly t1 = initial_form(g1, w);
      Poly t2 = initial_form(g2, w);
      Clause member = subalgebra_membership(t1, t2, t2);
      not_in = member == Clause::Holds ? Clause::Fails : Clause::Holds;
      // for the bounded test a failure to solve is a genuine non-membership
      // only for w-homogeneous data of matching degrees; keep it strict
      if (member == Clause::Inconclusive) {
        auto s = scalar_ratio(dg1.v, dg2.v);
        if (s && *s >= 0) {
          not_in = approx_dependent(t1, initial_form(g2, w).pow(unsigned(*s)))
                       ? Clause::Fails
                       : Clause::Holds;
        } else {
          not_in = Clause::Holds;  // degrees incompatible: cannot be a member
        }
      }
    }
    rep.su3p = (deg_lt && not_in == Clause::Holds) ? Clause::Holds : Clause::Fails;
  }
  return rep;
}

bool su_reduction_excluded(const std::vector<Poly>& F, const Weight& w) {
  if (F.size() != 3) fail(ErrorCode::ArityMismatch, "needs a triple");
  if (w.rank() != 3) fail(ErrorCode::RankDeficient, "weight rank must be 3");
  if (!w.all_positive()) fail(ErrorCode::PreconditionFailed, "weight must be positive");
  GammaElem d1 = wdeg(F[0], w).v;
  GammaElem d2 = wdeg(F[1], w).v;
  GammaElem d3 = wdeg(F[2], w).v;
  bool pairwise = z_independent(d1, d2) && z_independent(d1, d3) && z_independent(d2, d3);
  if (pairwise) return true;
  // strict ordering exclusions
  std::vector<GammaElem> ds = {d1, d2, d3};
  std::sort(ds.begin(), ds.end(), [](const GammaElem& a, const GammaElem& b) { return b < a; });
  if (ds[1] < ds[0] && ds[2] < ds[1]) {
    bool relation = false;
    if (ds[1].scaled(3) == ds[2].scaled(4)) relation = true;
    for (int i = 1; i <= 2 && !relation; ++i) {
      auto s = scalar_ratio(ds[0].scaled(2), ds[size_t(i)]);
      if (s && *s >= 3 && *s % 2 == 1) relation = true;
    }
    if (!relation) return true;
  }
  return false;
}

std::optional<WildCertificate> wild_certificate_check(const Endo& phi, const Weight& w) {
  if (phi.ring().arity != 3) fail(ErrorCode::ArityMismatch, "needs arity 3");
  if (!phi.has_inverse()) fail(ErrorCode::NotAutomorphism, "needs an automorphism witness");
  if (w.rank() != 3) fail(ErrorCode::RankDeficient, "weight rank must be 3");
  if (!w.all_positive()) fail(ErrorCode::PreconditionFailed, "weight must be positive");
  std::vector<Poly> tops;
  std::vector<GammaElem> degs;
  for (const Poly& im : phi.images()) {
    tops.push_back(initial_form(im, w));
    degs.push_back(wdeg(im, w).v);
  }
  for (const Poly& t : tops)
    if (t.term_count() != 1)
      fail(ErrorCode::ConsistencyFailure, "rank-3 weight must give monomial initial forms");
  // (1) the triple is dependent, pairwise independent
  Weight span(std::vector<GammaElem>{degs[0], degs[1], degs[2]});
  if (span.rank() == 3) return std::nullopt;  // independent: deg_w phi = |w|
  if (!z_independent(degs[0], degs[1]) || !z_independent(degs[0], degs[2]) ||
      !z_independent(degs[1], degs[2]))
    return std::nullopt;
  // (2) no initial monomial in the semigroup of the other two
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, l = (i + 2) % 3;
    if (monomial_semigroup_member(tops[size_t(i)].terms().begin()->first,
                                  tops[size_t(j)].terms().begin()->first,
                                  tops[size_t(l)].terms().begin()->first))
      return std::nullopt;
  }
  WildCertificate cert;
  cert.kind = WildCertificate::Kind::DirectSU;
  cert.w = w;
  cert.image_degrees = degs;
  std::ostringstream os;
  os << "initial monomials dependent as a triple, pairwise independent, and "
        "none lies in the semigroup of the other two; degrees";
  for (const auto& d : degs) os << " " << d.to_string();
  cert.transcript = os.str();
  return cert;
}

namespace {

// rational roots shared by every polynomial in `eqs` (coefficient lists in c)
std::vector<Rat> common_nonzero_roots(const std::vector<std::vector<Rat>>& eqs) {
  std::vector<Rat> cands;
  bool first = true;
  for (const auto& e : eqs) {
    bool all0 = std::all_of(e.begin(), e.end(), [](const Rat& r) { return r == 0; });
    if (all0) continue;
    std::vector<Rat> roots = rational_roots(e);
    roots.erase(std::remove(roots.begin(), roots.end(), Rat(0)), roots.end());
    if (first) {
      cands = roots;
      first = false;
    } else {
      std::vector<Rat> keep;
      for (const Rat& r : cands)
        if (std::find(roots.begin(), roots.end(), r) != roots.end()) keep.push_back(r);
      cands = keep;
    }
    if (cands.empty()) return {};
  }
  if (first) return {};  // all equations vanish identically: underdetermined
  return cands;
}

}  // namespace

FactorSearchOutcome linear_factor_search(const Poly& f, int var) {
  const RingCtx& ring = f.ring();
  if (ring.arity != 3) fail(ErrorCode::ArityMismatch, "needs arity 3");
  if (ring.coeff.kind != DomainKind::Rational)
    fail(ErrorCode::UnsupportedDomain, "factor search over Q only");
  if (f.degree_in(var) < 1) return {Clause::Fails, std::nullopt};
  // strip monomial content: factors x_i - g with nonconstant g never divide it
  Poly f0 = f;
  {
    Monomial gcd_m = f.terms().begin()->first;
    for (const auto& [m, c] : f.terms())
      for (int v = 0; v < 3; ++v)
        gcd_m.e[size_t(v)] = std::min(gcd_m.e[size_t(v)], m.e[size_t(v)]);
    if (gcd_m.total_degree() > 0)
      f0 = f.div_exact(Poly::term(ring, gcd_m, DomainElem::one(ring.coeff)));
  }
  size_t support = f0.term_count();
  long d = f0.degree_in(var);
  if (d < 1) return {Clause::Fails, std::nullopt};
  auto cs = f0.coeffs_in(var);  // over the other variables
  const Poly& a0 = cs[0];
  if (a0.is_zero())
    fail(ErrorCode::InternalError, "content extraction left a zero constant term");
  if (support == 1) return {Clause::Fails, std::nullopt};
  if (d == 1) {
    // x_var - g | f0 iff a1 | a0 exactly, with g = -a0/a1
    auto q = a0.try_div_exact(cs[1]);
    if (!q) return {Clause::Fails, std::nullopt};
    Poly g = -*q;
    if (g.is_constant()) return {Clause::Fails, std::nullopt};  // need g outside k
    if (g.depends_on(var)) return {Clause::Fails, std::nullopt};
    return {Clause::Holds, g};
  }
  // d >= 2: a root g must be a polynomial with g^... contributing; any root
  // divides a0. If a0 is a monomial, g must be a monomial.
  if (support > 3) return {Clause::Inconclusive, std::nullopt};
  if (a0.term_count() == 1) {
    // try g = gamma x^delta for all monomial divisors delta of a0's monomial
    Monomial am = a0.terms().begin()->first;
    std::vector<Monomial> divs;
    Monomial cur = Monomial::unit(3);
    // enumerate componentwise divisors (skip var itself; g is free of it)
    std::vector<int> others;
    for (int v = 0; v < 3; ++v)
      if (v != var) others.push_back(v);
    for (uint16_t e1 = 0; e1 <= am.e[size_t(others[0])]; ++e1) {
      for (uint16_t e2 = 0; e2 <= am.e[size_t(others[1])]; ++e2) {
        Monomial mg = Monomial::unit(3);
        mg.e[size_t(others[0])] = e1;
        mg.e[size_t(others[1])] = e2;
        if (mg.total_degree() == 0) continue;  // g must be nonconstant
        divs.push_back(mg);
      }
    }
    for (const Monomial& mg : divs) {
      // f0(x_var := gamma x^mg) = 0: group by resulting monomial, solve for gamma
      std::map<Monomial, std::vector<Rat>, GrlexLess> groups;  // coeff list in gamma
      for (const auto& [m, c] : f0.terms()) {
        unsigned k = m.e[size_t(var)];
        Monomial m2 = m;
        m2.e[size_t(var)] = 0;
        for (unsigned t = 0; t < k; ++t) m2 = m2 * mg;
        auto& vec = groups[m2];
        if (vec.size() <= k) vec.resize(k + 1, Rat(0));
        vec[k] += c.rat_value();
      }
      std::vector<std::vector<Rat>> eqs;
      for (auto& [m2, vec] : groups) eqs.push_back(vec);
      for (const Rat& gamma : common_nonzero_roots(eqs)) {
        Poly g = Poly::term(ring, mg, DomainElem::from_rat(ring.coeff, gamma));
        Poly lin = Poly::variable(ring, var) - g;
        if (f0.divisible_by(lin)) return {Clause::Holds, g};
      }
    }
    return {Clause::Fails, std::nullopt};
  }
  // a0 has >= 2 terms. With support <= 3 and d >= 2 the only layout is
  // f0 = a_d x_var^d M + (binomial a0); then g^d would need exactly two terms,
  // impossible in characteristic zero for d >= 2.
  {
    bool single_top = true;
    for (long k = 1; k < d; ++k)
      if (!cs[size_t(k)].is_zero()) single_top = false;
    if (single_top && cs[size_t(d)].term_count() == 1)
      return {Clause::Fails, std::nullopt};
  }
  return {Clause::Inconclusive, std::nullopt};
}

BinomialSearchOutcome binomial_proportionality_factor(const Poly& f) {
  const RingCtx& ring = f.ring();
  if (ring.arity != 3) fail(ErrorCode::ArityMismatch, "needs arity 3");
  if (ring.coeff.kind != DomainKind::Rational)
    fail(ErrorCode::UnsupportedDomain, "factor search over Q only");
  if (f.is_zero() || f.is_constant()) return {Clause::Fails, std::nullopt};
  Poly f0 = f;
  {
    Monomial gcd_m = f.terms().begin()->first;
    for (const auto& [m, c] : f.terms())
      for (int v = 0; v < 3; ++v)
        gcd_m.e[size_t(v)] = std::min(gcd_m.e[size_t(v)], m.e[size_t(v)]);
    if (gcd_m.total_degree() > 0)
      f0 = f.div_exact(Poly::term(ring, gcd_m, DomainElem::one(ring.coeff)));
  }
  if (f0.term_count() > 3) return {Clause::Inconclusive, std::nullopt};
  long degs[3];
  for (int v = 0; v < 3; ++v) degs[v] = std::max<long>(f0.degree_in(v), 0);
  if (degs[0] + degs[1] + degs[2] > 400) return {Clause::Inconclusive, std::nullopt};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (long si = 1; si <= degs[i]; ++si) {
        for (long sj = 1; sj <= degs[j]; ++sj) {
          // reduce f0 modulo x_i^si = c x_j^sj symbolically: each term
          // c_m x^e maps to c^(e_i / si floor) * monomial; group and solve
          std::map<Monomial, std::vector<Rat>, GrlexLess> groups;
          for (const auto& [m, c] : f0.terms()) {
            long k = m.e[size_t(i)] / si;
            Monomial m2 = m;
            m2.e[size_t(i)] = uint16_t(m.e[size_t(i)] - k * si);
            m2.e[size_t(j)] = uint16_t(m.e[size_t(j)] + k * sj);
            auto& vec = groups[m2];
            if (vec.size() <= size_t(k)) vec.resize(size_t(k) + 1, Rat(0));
            vec[size_t(k)] += c.rat_value();
          }
          std::vector<std::vector<Rat>> eqs;
          for (auto& [m2, vec] : groups) eqs.push_back(vec);
          for (const Rat& c : common_nonzero_roots(eqs)) {
            Poly binom = Poly::variable(ring, i, uint16_t(si)) -
                         Poly::variable(ring, j, uint16_t(sj))
                             .scaled_rat(c);
            if (f0.divisible_by(binom)) {
              BinomialFactor bf;
              bf.i = i + 1;
              bf.j = j + 1;
              bf.si = si;
              bf.sj = sj;
              bf.c = c;
              return {Clause::Holds, bf};
            }
          }
        }
      }
    }
  }
  return {Clause::Fails, std::nullopt};
}

std::optional<WTestCertification> wtest_certify(const Poly& p) {
  if (p.ring().arity != 3) fail(ErrorCode::ArityMismatch, "needs arity 3");
  for (int v = 0; v < 3; ++v)
    if (p.degree_in(v) < 1)
      fail(ErrorCode::PreconditionFailed,
           "test polynomial must involve every variable");
  auto supports = enumerate_initial_supports(p);
  WTestCertification cert;
  cert.p = p;
  std::ostringstream os;
  os << supports.size() << " achievable initial supports;";
  for (const auto& s : supports) {
    Poly face(p.ring());
    for (const Monomial& m : s.monomials) face.add_term(m, p.coeff_of(m));
    for (int v = 0; v < 3; ++v) {
      auto lin = linear_factor_search(face, v);
      if (lin.verdict != Clause::Fails) return std::nullopt;
    }
    auto bin = binomial_proportionality_factor(face);
    if (bin.verdict != Clause::Fails) return std::nullopt;
    cert.faces.push_back(face);
    os << " [" << face.to_string() << "] clear;";
  }
  cert.transcript = os.str();
  return cert;
}

std::optional<WildCertificate> wtest_apply(const Endo& phi, const WTestCertification& cert,
                                           const Weight& w) {
  if (!phi.has_inverse()) fail(ErrorCode::NotAutomorphism, "needs a witness");
  if (cert.faces.empty()) fail(ErrorCode::UncertifiedP, "missing certification transcript");
  if (w.rank() != 3) fail(ErrorCode::RankDeficient, "weight rank must be 3");
  if (!w.all_positive()) fail(ErrorCode::PreconditionFailed, "weight must be positive");
  Poly imgP = phi.apply(cert.p);
  WDeg dP = wdeg(imgP, w);
  std::vector<GammaElem> degs;
  for (const Poly& im : phi.images()) degs.push_back(wdeg(im, w).v);
  bool clause_a = false;
  int i1 = -1;
  for (int i = 0; i < 3; ++i) {
    if (dP < WDeg::of(degs[size_t(i)])) {
      clause_a = true;
      i1 = i;
      break;
    }
  }
  if (!clause_a) return std::nullopt;
  bool clause_b = false;
  for (int i = 0; i < 3 && !clause_b; ++i)
    for (int j = i + 1; j < 3 && !clause_b; ++j)
      if (z_independent(degs[size_t(i)], degs[size_t(j)])) clause_b = true;
  if (!clause_b) return std::nullopt;
  WildCertificate out;
  out.kind = WildCertificate::Kind::WTest;
  out.w = w;
  out.image_degrees = degs;
  std::ostringstream os;
  os << "deg_w phi(P) = " << dP.to_string() << " < deg_w phi(x" << (i1 + 1)
     << ") = " << degs[size_t(i1)].to_string()
     << "; two image degrees Z-independent";
  out.transcript = os.str();
  return out;
}

}  // namespace polywild
