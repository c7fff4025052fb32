#include "polywild/poly.hpp"

#include <algorithm>
#include <sstream>

namespace polywild {

std::string RingCtx::name() const {
  return coeff.name() + "[x1..x" + std::to_string(arity) + "]";
}

Poly Poly::constant(const RingCtx& ring, const DomainElem& c) {
  Poly p(ring);
  if (!c.is_zero()) p.t_.emplace(Monomial::unit(ring.arity), c);
  return p;
}

Poly Poly::variable(const RingCtx& ring, int i, uint16_t k) {
  if (i < 0 || i >= ring.arity) fail(ErrorCode::ArityMismatch, "variable index");
  Poly p(ring);
  if (k == 0) return constant(ring, 1);
  p.t_.emplace(Monomial::var(ring.arity, i, k), DomainElem::one(ring.coeff));
  return p;
}

Poly Poly::term(const RingCtx& ring, const Monomial& m, const DomainElem& c) {
  Poly p(ring);
  if (!c.is_zero()) p.t_.emplace(m, c);
  return p;
}

long Poly::total_degree() const {
  if (t_.empty()) return -1;
  return t_.rbegin()->first.total_degree();
}

long Poly::degree_in(int var) const {
  if (t_.empty()) return -1;
  long d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, long(m.e[size_t(var)]));
  return d;
}

DomainElem Poly::coeff_of(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? DomainElem::zero(ring_.coeff) : it->second;
}

std::pair<Monomial, DomainElem> Poly::leading_term() const {
  if (t_.empty()) fail(ErrorCode::ZeroInput, "leading term of zero");
  auto it = t_.rbegin();
  return {it->first, it->second};
}

void Poly::add_term(const Monomial& m, const DomainElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  if (ring_ != o.ring_) fail(ErrorCode::RingMismatch, "poly + ring mismatch");
  Poly r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  if (ring_ != o.ring_) fail(ErrorCode::RingMismatch, "poly - ring mismatch");
  Poly r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (ring_ != o.ring_) fail(ErrorCode::RingMismatch, "poly * ring mismatch");
  Poly r(ring_);
  if (t_.empty() || o.t_.empty()) return r;
  const Poly& small = t_.size() <= o.t_.size() ? *this : o;
  const Poly& big = t_.size() <= o.t_.size() ? o : *this;
  for (const auto& [m1, c1] : small.t_)
    for (const auto& [m2, c2] : big.t_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Poly Poly::scaled(const DomainElem& c) const {
  Poly r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [m, cc] : t_) r.add_term(m, cc * c);
  return r;
}

Poly Poly::scaled_rat(const Rat& s) const {
  Poly r(ring_);
  if (s == 0) return r;
  for (const auto& [m, cc] : t_) r.add_term(m, cc.scaled(s));
  return r;
}

Poly Poly::mul_term(const Monomial& m, const DomainElem& c) const {
  Poly r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [mm, cc] : t_) r.add_term(mm * m, cc * c);
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(ring_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1) r = r * base;
    base = k > 1 ? base * base : base;
    k >>= 1;
  }
  return r;
}

std::optional<Poly> Poly::try_div_exact(const Poly& o) const {
  if (ring_ != o.ring_) fail(ErrorCode::RingMismatch, "poly / ring mismatch");
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "poly division by zero");
  Poly q(ring_);
  Poly rem = *this;
  auto [lm, lc] = o.leading_term();
  while (!rem.is_zero()) {
    auto [rm, rc] = rem.leading_term();
    if (!lm.divides(rm)) return std::nullopt;
    auto qc = rc.try_div_exact(lc);
    if (!qc) return std::nullopt;
    Monomial qm = rm / lm;
    q.add_term(qm, *qc);
    rem = rem - o.mul_term(qm, *qc);
  }
  return q;
}

Poly Poly::div_exact(const Poly& o) const {
  auto q = try_div_exact(o);
  if (!q) fail(ErrorCode::NotDivisible, "polynomial quotient does not exist");
  return *q;
}

Poly Poly::reduce_mod(const Poly& o) const {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "reduction modulo zero");
  Poly rem(ring_);
  Poly work = *this;
  auto [lm, lc] = o.leading_term();
  while (!work.is_zero()) {
    auto [rm, rc] = work.leading_term();
    std::optional<DomainElem> qc;
    if (lm.divides(rm)) qc = rc.try_div_exact(lc);
    if (qc) {
      work = work - o.mul_term(rm / lm, *qc);
    } else {
      rem.add_term(rm, rc);
      work.t_.erase(std::prev(work.t_.end()));
    }
  }
  return rem;
}

bool Poly::divisible_by(const Poly& o) const { return try_div_exact(o).has_value(); }

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (int(images.size()) != ring_.arity)
    fail(ErrorCode::ArityMismatch, "substitute image count");
  RingCtx target = images.empty() ? ring_ : images[0].ring();
  for (const Poly& p : images)
    if (p.ring() != target) fail(ErrorCode::RingMismatch, "substitute image rings differ");
  // cache powers of each image
  std::vector<std::vector<Poly>> powers(images.size());
  for (size_t i = 0; i < images.size(); ++i)
    powers[i].push_back(Poly::constant(target, 1));
  auto power = [&](size_t i, unsigned k) -> const Poly& {
    while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * images[i]);
    return powers[i][k];
  };
  Poly out(target);
  for (const auto& [m, c] : t_) {
    Poly termv = Poly::constant(target, c.embed(target.coeff));
    for (int i = 0; i < ring_.arity; ++i) {
      if (m.e[size_t(i)] > 0) termv = termv * power(size_t(i), m.e[size_t(i)]);
    }
    out = out + termv;
  }
  return out;
}

Poly Poly::diff(int var) const {
  if (var < 0 || var >= ring_.arity) fail(ErrorCode::ArityMismatch, "diff variable");
  Poly r(ring_);
  for (const auto& [m, c] : t_) {
    uint16_t k = m.e[size_t(var)];
    if (k == 0) continue;
    Monomial m2 = m;
    m2.e[size_t(var)] = uint16_t(k - 1);
    r.add_term(m2, c.scaled(Rat(k)));
  }
  return r;
}

std::vector<Poly> Poly::coeffs_in(int var) const {
  long d = degree_in(var);
  std::vector<Poly> out(size_t(std::max<long>(d + 1, 1)), Poly(ring_));
  for (const auto& [m, c] : t_) {
    Monomial m2 = m;
    uint16_t k = m.e[size_t(var)];
    m2.e[size_t(var)] = 0;
    out[k].add_term(m2, c);
  }
  return out;
}

Poly Poly::embed(const DomainDescriptor& target, int slot) const {
  RingCtx r2{ring_.arity, target};
  Poly r(r2);
  for (const auto& [m, c] : t_) r.add_term(m, c.embed(target, slot));
  return r;
}

DomainElem Poly::content() const {
  DomainElem g = DomainElem::zero(ring_.coeff);
  for (const auto& [m, c] : t_) {
    g = g.is_zero() ? c : DomainElem::gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly Poly::primitive_part() const {
  if (is_zero()) return *this;
  DomainElem g = content();
  if (g.is_zero() || g.is_one()) return *this;
  Poly r(ring_);
  for (const auto& [m, c] : t_) r.add_term(m, c.div_exact(g));
  return r;
}

std::optional<Poly> Poly::nth_root(unsigned k) const {
  if (k == 0) return std::nullopt;
  if (k == 1) return *this;
  if (is_zero()) return *this;
  // candidate leading term: k-th root of the grlex leading term
  auto [lm, lc] = leading_term();
  Monomial rm = Monomial::unit(ring_.arity);
  for (int i = 0; i < ring_.arity; ++i) {
    if (lm.e[size_t(i)] % k != 0) return std::nullopt;
    rm.e[size_t(i)] = uint16_t(lm.e[size_t(i)] / k);
  }
  DomainElem rc = DomainElem::zero(ring_.coeff);
  if (ring_.coeff.kind == DomainKind::Rational || ring_.coeff.kind == DomainKind::Integer) {
    Rat v = lc.rat_value();
    auto np = nth_root_exact(rat_num(v), k);
    auto dp = nth_root_exact(rat_den(v), k);
    if (!np || !dp) return std::nullopt;
    rc = DomainElem::from_rat(ring_.coeff, Rat(*np) / Rat(*dp));
  } else {
    return std::nullopt;  // only scalar coefficient roots supported
  }
  // iteratively match terms from the top: root = sum of terms found so far
  Poly root = Poly::term(ring_, rm, rc);
  // derivative trick: (root + delta)^k, peel the next leading term of the gap
  // divided by k*root^(k-1)'s leading term
  Poly rk = root.pow(k);
  Poly lead_den = root.pow(k - 1).scaled_rat(Rat(long(k)));
  auto [dm, dc] = lead_den.leading_term();
  int guard = 0;
  while (rk != *this) {
    Poly gap = *this - rk;
    auto [gm, gc] = gap.leading_term();
    if (!dm.divides(gm)) return std::nullopt;
    auto qc = gc.try_div_exact(dc);
    if (!qc) return std::nullopt;
    root.add_term(gm / dm, *qc);
    rk = root.pow(k);
    if (++guard > 4096) return std::nullopt;
  }
  return root;
}

std::string Poly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const Monomial& m = it->first;
    std::string cs = it->second.to_string();
    bool neg = false;
    if (cs.size() > 1 && cs[0] == '-' && cs.find_first_of("+- ", 1) == std::string::npos) {
      neg = true;
      cs = cs.substr(1);
    }
    bool composite = cs.find_first_of("+-") != std::string::npos ||
                     (cs.find ('*') != std::string::npos) ||
                     (cs.find (' ') != std::string::npos);
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    std::string mono;
    for (int i = 0; i < m.n; ++i) {
      if (m.e[size_t(i)] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (m.e[size_t(i)] > 1) mono += "^" + std::to_string(m.e[size_t(i)]);
    }
    if (mono.empty()) {
      os << (composite ? "(" + cs + ")" : cs);
    } else if (cs == "1") {
      os << mono;
    } else {
      os << (composite ? "(" + cs + ")" : cs) << "*" << mono;
    }
  }
  return os.str();
}

size_t Poly::hash() const {
  size_t h = 1469598103934665603ULL;
  for (const auto& [m, c] : t_) {
    for (int i = 0; i < m.n; ++i) h = (h ^ m.e[size_t(i)]) * 1099511628211ULL;
    h ^= c.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Poly det(const PolyMatrix& mat) {
  size_t n = mat.rows();
  if (n == 0 || mat.cols() != n) fail(ErrorCode::ArityMismatch, "det needs square matrix");
  const RingCtx& ring = mat.entries[0][0].ring();
  if (n == 1) return mat.entries[0][0];
  // cofactor expansion along the first row (n is small here)
  Poly acc(ring);
  for (size_t j = 0; j < n; ++j) {
    if (mat.entries[0][j].is_zero()) continue;
    PolyMatrix minor;
    minor.entries.resize(n - 1);
    for (size_t r = 1; r < n; ++r)
      for (size_t c = 0; c < n; ++c)
        if (c != j) minor.entries[r - 1].push_back(mat.entries[r][c]);
    Poly cof = mat.entries[0][j] * det(minor);
    acc = (j % 2 == 0) ? acc + cof : acc - cof;
  }
  return acc;
}

std::pair<PolyMatrix, Poly> jacobian(const std::vector<Poly>& images) {
  if (images.empty()) fail(ErrorCode::ArityMismatch, "jacobian of empty map");
  const RingCtx& ring = images[0].ring();
  if (int(images.size()) != ring.arity)
    fail(ErrorCode::ArityMismatch, "jacobian needs n images in arity n");
  PolyMatrix J;
  J.entries.resize(images.size());
  for (size_t i = 0; i < images.size(); ++i)
    for (int j = 0; j < ring.arity; ++j) J.entries[i].push_back(images[i].diff(j));
  Poly d = det(J);
  return {J, d};
}

std::vector<Poly> wedge2(const Poly& f, const Poly& g) {
  if (f.ring() != g.ring()) fail(ErrorCode::RingMismatch, "wedge2 ring mismatch");
  int n = f.ring().arity;
  if (n != 2 && n != 3) fail(ErrorCode::ArityMismatch, "wedge2 needs arity 2 or 3");
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.push_back(f.diff(i) * g.diff(j) - f.diff(j) * g.diff(i));
  return out;
}

namespace {

long degree_in_var(const Poly& p, int v) { return std::max<long>(p.degree_in(v), 0); }

Poly lc_in_var(const Poly& p, int v) {
  auto cs = p.coeffs_in(v);
  return cs.back();
}

// Pseudo-remainder of f by g with respect to variable v.
Poly pseudo_rem(const Poly& f, const Poly& g, int v) {
  long dg = degree_in_var(g, v);
  Poly lg = lc_in_var(g, v);
  Poly r = f;
  while (!r.is_zero() && degree_in_var(r, v) >= dg) {
    long dr = degree_in_var(r, v);
    Poly lr = lc_in_var(r, v);
    Poly shift = Poly::variable(r.ring(), v, uint16_t(dr - dg));
    r = r * lg - g * lr * shift;
  }
  return r;
}

// gcd of the coefficient polynomials of p with respect to v.
Poly poly_content_in(const Poly& p, int v) {
  auto cs = p.coeffs_in(v);
  Poly g(p.ring());
  for (const Poly& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : mgcd(g, c);
    if (!g.is_zero() && g.is_constant()) break;
  }
  return g;
}

Poly normalize_gcd(const Poly& g) {
  if (g.is_zero()) return g;
  const DomainDescriptor& dom = g.ring().coeff;
  Poly r = g;
  if (dom.kind == DomainKind::Rational) {
    auto [lm, lc] = r.leading_term();
    r = r.scaled(*lc.try_inverse());
  } else if (dom.kind == DomainKind::Integer || dom.kind == DomainKind::UnivariatePoly) {
    // unit normalization only; the content is part of the gcd
    auto [lm, lc] = r.leading_term();
    DomainElem u = lc.canonical_unit_part();
    if (!u.is_one() && u.is_unit()) r = r.scaled(*u.try_inverse());
  }
  return r;
}

}  // namespace

Poly mgcd(const Poly& f, const Poly& g) {
  if (f.ring() != g.ring()) fail(ErrorCode::RingMismatch, "mgcd ring mismatch");
  const DomainDescriptor& dom = f.ring().coeff;
  if (dom.is_cyclotomic_like())
    fail(ErrorCode::UnsupportedDomain, "mgcd over " + dom.name());
  if (f.is_zero()) return normalize_gcd(g);
  if (g.is_zero()) return normalize_gcd(f);
  if (f.is_constant() || g.is_constant()) {
    if (dom.kind == DomainKind::Rational) return Poly::constant(f.ring(), 1);
    DomainElem c = DomainElem::gcd(f.content(), g.content());
    return normalize_gcd(Poly::constant(f.ring(), c));
  }
  // main variable: one occurring in both, minimizing the larger degree
  int best = -1;
  long best_score = -1;
  for (int v = 0; v < f.ring().arity; ++v) {
    long df = f.degree_in(v), dg = g.degree_in(v);
    if (df <= 0 || dg <= 0) continue;
    long score = std::max(df, dg);
    if (best == -1 || score < best_score) {
      best = v;
      best_score = score;
    }
  }
  if (best == -1) {
    // no shared variable: only the coefficient contents can divide both
    if (dom.kind == DomainKind::Rational) return Poly::constant(f.ring(), 1);
    return normalize_gcd(Poly::constant(f.ring(),
        DomainElem::gcd(f.content(), g.content())));
  }
  int v = best;
  Poly contf = poly_content_in(f, v);
  Poly contg = poly_content_in(g, v);
  Poly cont = mgcd(contf, contg);
  Poly a = f.div_exact(contf);
  Poly b = g.div_exact(contg);
  if (degree_in_var(a, v) < degree_in_var(b, v)) std::swap(a, b);
  while (!b.is_zero()) {
    Poly r = pseudo_rem(a, b, v);
    if (!r.is_zero()) {
      Poly rc = poly_content_in(r, v);
      r = r.div_exact(rc);
    }
    a = b;
    b = r;
  }
  Poly prim = a.div_exact(poly_content_in(a, v));
  Poly result = cont * prim;
  // verify: gcd divides both inputs
  if (!f.divisible_by(result) || !g.divisible_by(result)) {
    // primitive PRS returned a spurious unit-content factor mix; fall back
    fail(ErrorCode::ConsistencyFailure, "mgcd result does not divide inputs");
  }
  return normalize_gcd(result);
}

std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs) {
  std::vector<Rat> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::vector<Rat> roots;
  if (c.empty()) fail(ErrorCode::ZeroInput, "roots of the zero polynomial");
  // strip roots at 0
  size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  if (low > 0) {
    roots.push_back(Rat(0));
    c.erase(c.begin(), c.begin() + long(low));
  }
  if (c.size() <= 1) return roots;
  // clear denominators
  Int den = 1;
  for (const Rat& r : c) den = boost::multiprecision::lcm(den, rat_den(r));
  std::vector<Int> ic;
  for (const Rat& r : c) ic.push_back(rat_num(r) * (den / rat_den(r)));
  auto eval_zero = [&](const Rat& x) {
    Rat acc = 0;
    for (size_t i = ic.size(); i-- > 0;) acc = acc * x + Rat(ic[i]);
    return acc == 0;
  };
  if (ic.size() == 2) {  // linear
    Rat r = -Rat(ic[0]) / Rat(ic[1]);
    roots.push_back(r);
    return roots;
  }
  if (ic.size() == 3) {  // quadratic: exact discriminant square root
    Int A = ic[2], B = ic[1], C = ic[0];
    Int disc = B * B - 4 * A * C;
    if (disc >= 0) {
      auto s = nth_root_exact(disc, 2);
      if (s) {
        Rat r1 = Rat(-B + *s) / Rat(2 * A);
        Rat r2 = Rat(-B - *s) / Rat(2 * A);
        if (eval_zero(r1)) roots.push_back(r1);
        if (r2 != r1 && eval_zero(r2)) roots.push_back(r2);
      }
    }
    return roots;
  }
  // general: rational root theorem with divisor enumeration
  auto divisors = [](Int n) {
    n = boost::multiprecision::abs(n);
    std::vector<Int> ds;
    for (Int d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        ds.push_back(d);
        if (d != n / d) ds.push_back(n / d);
      }
    }
    return ds;
  };
  Int a0 = ic.front(), an = ic.back();
  if (boost::multiprecision::abs(a0) > Int("1000000000000000") ||
      boost::multiprecision::abs(an) > Int("1000000000000000"))
    fail(ErrorCode::ExceededCap, "rational root search: coefficients too large");
  for (const Int& p : divisors(a0)) {
    for (const Int& q : divisors(an)) {
      if (boost::multiprecision::gcd(p, q) != 1) continue;
      Rat cand = Rat(p) / Rat(q);
      if (eval_zero(cand)) roots.push_back(cand);
      if (eval_zero(-cand)) roots.push_back(-cand);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace polywild
