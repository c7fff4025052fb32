#include "polywild/weights.hpp"

#include <algorithm>
#include <sstream>

namespace polywild {

GammaElem GammaElem::operator+(const GammaElem& o) const {
  GammaElem r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

GammaElem GammaElem::operator-(const GammaElem& o) const {
  GammaElem r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

GammaElem GammaElem::scaled(long long k) const {
  GammaElem r = *this;
  for (auto& x : r.c) x *= k;
  return r;
}

bool GammaElem::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; });
}

std::string GammaElem::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")";
  return os.str();
}

Weight Weight::uniform(int n, long long v) {
  std::vector<GammaElem> es;
  for (int i = 0; i < n; ++i) es.push_back(GammaElem({v}));
  return Weight(std::move(es));
}

Weight Weight::of_ints(const std::vector<long long>& entries) {
  std::vector<GammaElem> es;
  for (long long v : entries) es.push_back(GammaElem({v}));
  return Weight(std::move(es));
}

GammaElem Weight::total() const {
  GammaElem t = GammaElem::zero(gamma_dim());
  for (const auto& g : w) t = t + g;
  return t;
}

bool Weight::all_positive() const {
  return std::all_of(w.begin(), w.end(), [](const GammaElem& g) { return g.positive(); });
}

bool Weight::some_positive() const {
  return std::any_of(w.begin(), w.end(), [](const GammaElem& g) { return g.positive(); });
}

int Weight::rank() const {
  // fraction-free Gaussian elimination on the n x m integer matrix
  std::vector<std::vector<Rat>> M;
  for (const auto& g : w) {
    std::vector<Rat> row;
    for (long long v : g.c) row.emplace_back(v);
    M.push_back(std::move(row));
  }
  int rank = 0;
  size_t cols = M.empty() ? 0 : M[0].size();
  for (size_t col = 0; col < cols && rank < int(M.size()); ++col) {
    size_t p = size_t(rank);
    while (p < M.size() && M[p][col] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[p], M[size_t(rank)]);
    for (size_t i = 0; i < M.size(); ++i) {
      if (int(i) == rank || M[i][col] == 0) continue;
      Rat f = M[i][col] / M[size_t(rank)][col];
      for (size_t j = col; j < cols; ++j) M[i][j] -= f * M[size_t(rank)][j];
    }
    ++rank;
  }
  return rank;
}

std::string WDeg::to_string() const {
  return minus_inf ? std::string("-inf") : v.to_string();
}

GammaElem mono_wdeg(const Monomial& m, const Weight& w) {
  GammaElem acc = GammaElem::zero(w.gamma_dim());
  for (int i = 0; i < m.n; ++i) {
    if (m.e[size_t(i)] != 0) acc = acc + w.w[size_t(i)].scaled(m.e[size_t(i)]);
  }
  return acc;
}

WDeg wdeg(const Poly& f, const Weight& w) {
  if (w.arity() != f.ring().arity) fail(ErrorCode::ArityMismatch, "wdeg weight arity");
  WDeg best = WDeg::neg_infinity();
  for (const auto& [m, c] : f.terms()) {
    WDeg d = WDeg::of(mono_wdeg(m, w));
    if (best < d) best = d;
  }
  return best;
}

WDeg wdeg_frac(const Poly& num, const Poly& den, const Weight& w) {
  if (num.is_zero()) return WDeg::neg_infinity();
  if (den.is_zero()) fail(ErrorCode::DivisionByZero, "wdeg of g/0");
  return WDeg::of(wdeg(num, w).v - wdeg(den, w).v);
}

Poly initial_form(const Poly& f, const Weight& w) {
  Poly out(f.ring());
  if (f.is_zero()) return out;
  GammaElem top = wdeg(f, w).v;
  for (const auto& [m, c] : f.terms())
    if (mono_wdeg(m, w) == top) out.add_term(m, c);
  return out;
}

bool is_w_homogeneous(const Poly& f, const Weight& w) {
  if (f.is_zero()) return true;
  return initial_form(f, w) == f;
}

std::pair<long, long> bidegree(const Poly& f) {
  if (f.ring().arity != 2) fail(ErrorCode::ArityMismatch, "bidegree needs arity 2");
  return {f.degree_in(1), f.degree_in(0)};
}

Weight bidegree_weight(const Poly& f) {
  auto [d2, d1] = bidegree(f);
  return Weight::of_ints({std::max<long>(d2, 0), std::max<long>(d1, 0)});
}

WDeg wdeg_form(const std::vector<Poly>& coeffs, const Weight& w) {
  int n = w.arity();
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) idx.emplace_back(i, j);
  if (coeffs.size() != idx.size())
    fail(ErrorCode::ArityMismatch, "wedge coefficient count");
  WDeg best = WDeg::neg_infinity();
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    GammaElem shift = w.w[size_t(idx[k].first)] + w.w[size_t(idx[k].second)];
    WDeg d = WDeg::of(wdeg(coeffs[k], w).v + shift);
    if (best < d) best = d;
  }
  return best;
}

std::optional<SlopeData> slope_factor(const Poly& f) {
  if (f.ring().arity != 2) fail(ErrorCode::ArityMismatch, "slope_factor needs arity 2");
  auto [p2, p1] = bidegree(f);
  if (p1 + p2 <= 1) fail(ErrorCode::DegenerateInput, "slope_factor needs |w(f)| > 1");
  if (p1 <= 0 || p2 <= 0) return std::nullopt;
  Poly top = initial_form(f, bidegree_weight(f));
  const DomainDescriptor& dom = f.ring().coeff;
  long degs[2] = {p1, p2};
  // deterministic order: i = 1 first
  for (int ii = 0; ii < 2; ++ii) {
    int i = ii;          // 0-based candidate for x_i
    int j = 1 - ii;
    long m = degs[i];
    if (m <= 0) continue;
    if (degs[j] % m != 0) continue;
    long l = degs[j] / m;
    if (l < 1) continue;
    // a = coefficient of x_i^m; b from the x_i^{m-1} x_j^l coefficient
    Monomial mi = Monomial::var(2, i, uint16_t(m));
    DomainElem a = top.coeff_of(mi);
    if (a.is_zero()) continue;
    Monomial mm = Monomial::unit(2);
    mm.e[size_t(i)] = uint16_t(m - 1);
    mm.e[size_t(j)] = uint16_t(l);
    DomainElem c1 = top.coeff_of(mm);
    if (c1.is_zero()) continue;
    Frac fa = Frac::of(a);
    Frac fb = -(Frac(c1, a) / Frac::of(DomainElem::from_rat(dom, Rat(m))));
    // verify top == a (x_i - b x_j^l)^m exactly, over K: compare a^{m-1} top
    // with (a x_i - a b x_j^l)^m to stay in R
    Poly xi = Poly::variable(f.ring(), i);
    Poly xjl = Poly::variable(f.ring(), j, uint16_t(l));
    // binom = num(b)*? work over fractions: scale by den(b): let b = bn/bd.
    // a * (x_i - b x_j^l)^m * bd^m == a * (bd x_i - bn x_j^l)^m
    const DomainElem& bn = fb.num();
    const DomainElem& bd = fb.den();
    Poly binom = xi.scaled(bd) - xjl.scaled(bn);
    DomainElem bdm = DomainElem::one(dom);
    for (long t = 0; t < m; ++t) bdm = bdm * bd;
    Poly lhs = top.scaled(bdm);
    Poly rhs = binom.pow(unsigned(m)).scaled(a);
    if (lhs == rhs) {
      SlopeData sd;
      sd.i = i + 1;
      sd.j = j + 1;
      sd.l = l;
      sd.m = m;
      sd.a = fa;
      sd.b = fb;
      return sd;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Rat>> fm_feasible(int nvars,
                                            std::vector<LinearConstraint> cons) {
  // eliminate variables from the last to the first
  std::vector<std::vector<LinearConstraint>> stages;
  for (int v = nvars - 1; v >= 1; --v) {
    stages.push_back(cons);
    std::vector<LinearConstraint> next;
    std::vector<LinearConstraint> lower, upper, free;
    for (auto& c : cons) {
      Rat a = c.a[size_t(v)];
      if (a > 0)
        lower.push_back(c);  // x_v >= (b - rest)/a
      else if (a < 0)
        upper.push_back(c);  // x_v <= (b - rest)/a (note sign)
      else
        free.push_back(c);
    }
    for (const auto& lo : lower) {
      for (const auto& up : upper) {
        // combine: from lo: a1 x_v + r1 >= b1 (a1>0); up: a2 x_v + r2 >= b2 (a2<0)
        // => x_v >= (b1 - r1)/a1 and x_v <= (b2 - r2)/a2
        // feasible iff (b1 - r1)/a1 <= (b2 - r2)/a2 appropriately
        LinearConstraint c;
        c.a.assign(size_t(nvars), Rat(0));
        Rat a1 = lo.a[size_t(v)], a2 = up.a[size_t(v)];
        // (b1 - r1) * (-a2) <= (b2 - r2) * a1  with a1>0, -a2>0
        // => a1*r2 - a2*r1 >= a1*b2 - a2*b1
        for (int k = 0; k < nvars; ++k)
          c.a[size_t(k)] = a1 * up.a[size_t(k)] - a2 * lo.a[size_t(k)];
        c.a[size_t(v)] = 0;
        c.b = a1 * up.b - a2 * lo.b;
        c.strict = lo.strict || up.strict;
        next.push_back(std::move(c));
      }
    }
    for (auto& c : free) next.push_back(std::move(c));
    cons = std::move(next);
  }
  // Solve for one variable given the others fixed: constraints a.x >= b
  // restricted to variable v with x[k] known for k != v.
  auto solve_var = [&](const std::vector<LinearConstraint>& cs, int v,
                       std::vector<Rat>& x) -> bool {
    std::optional<Rat> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& c : cs) {
      Rat a = c.a[size_t(v)];
      Rat rest = Rat(0);
      for (int k = 0; k < nvars; ++k) {
        if (k == v) continue;
        rest += c.a[size_t(k)] * x[size_t(k)];
      }
      // a*x_v >= b - rest (or strict)
      if (a == 0) {
        bool sat = c.strict ? (rest > c.b) : (rest >= c.b);
        if (!sat) return false;
        continue;
      }
      Rat bound = (c.b - rest) / a;
      if (a > 0) {
        if (!lo || bound > *lo) {
          lo = bound;
          lo_strict = c.strict;
        } else if (bound == *lo) {
          lo_strict = lo_strict || c.strict;
        }
      } else {
        if (!hi || bound < *hi) {
          hi = bound;
          hi_strict = c.strict;
        } else if (bound == *hi) {
          hi_strict = hi_strict || c.strict;
        }
      }
    }
    if (lo && hi) {
      if (*lo > *hi) return false;
      if (*lo == *hi && (lo_strict || hi_strict)) return false;
      x[size_t(v)] = (*lo + *hi) / 2;
    } else if (lo) {
      x[size_t(v)] = lo_strict ? *lo + 1 : *lo;
    } else if (hi) {
      x[size_t(v)] = hi_strict ? *hi - 1 : *hi;
    } else {
      x[size_t(v)] = 0;
    }
    return true;
  };
  std::vector<Rat> x(size_t(nvars), Rat(0));
  if (!solve_var(cons, 0, x)) return std::nullopt;
  for (int v = 1; v < nvars; ++v) {
    if (!solve_var(stages[size_t(nvars - 1 - v)], v, x)) return std::nullopt;
  }
  return x;
}

std::vector<InitialSupport> enumerate_initial_supports(const Poly& p) {
  if (p.ring().arity != 3)
    fail(ErrorCode::ArityMismatch, "initial-support enumeration needs arity 3");
  if (p.is_zero()) fail(ErrorCode::ZeroInput, "initial supports of zero");
  std::vector<Monomial> mons;
  for (const auto& [m, c] : p.terms()) mons.push_back(m);
  if (mons.size() > 12)
    fail(ErrorCode::ExceededCap, "initial-support enumeration limited to 12 monomials");
  size_t k = mons.size();
  std::vector<InitialSupport> out;
  for (size_t mask = 1; mask < (size_t(1) << k); ++mask) {
    // feasibility: u componentwise >= 1 (scaled strict positivity), u.m equal
    // for all m in S, and u.m0 >= u.m' + 1 for m' outside S
    std::vector<LinearConstraint> cons;
    int nv = 3;
    size_t first = 0;
    while (!(mask & (size_t(1) << first))) ++first;
    const Monomial& m0 = mons[first];
    for (int v = 0; v < 3; ++v) {
      LinearConstraint c;
      c.a.assign(3, Rat(0));
      c.a[size_t(v)] = 1;
      c.b = 1;
      cons.push_back(std::move(c));
    }
    for (size_t i = 0; i < k; ++i) {
      if (i == first) continue;
      LinearConstraint c;
      c.a.assign(3, Rat(0));
      for (int v = 0; v < 3; ++v)
        c.a[size_t(v)] = Rat(long(m0.e[size_t(v)])) - Rat(long(mons[i].e[size_t(v)]));
      if (mask & (size_t(1) << i)) {
        // equality: both >= 0 and <= 0
        LinearConstraint c2 = c;
        c.b = 0;
        for (auto& a : c2.a) a = -a;
        c2.b = 0;
        cons.push_back(std::move(c));
        cons.push_back(std::move(c2));
      } else {
        c.b = 1;
        cons.push_back(std::move(c));
      }
    }
    auto u = fm_feasible(nv, std::move(cons));
    if (!u) continue;
    InitialSupport s;
    for (size_t i = 0; i < k; ++i)
      if (mask & (size_t(1) << i)) s.monomials.push_back(mons[i]);
    std::sort(s.monomials.begin(), s.monomials.end(),
              [](const Monomial& a, const Monomial& b) { return GrlexLess()(a, b); });
    s.witness.push_back(*u);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polywild
