#include "polywild/coeff.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace polywild {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotTriangular: return "NotTriangular";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::NotAffine: return "NotAffine";
    case ErrorCode::NotNilpotentLinearPart: return "NotNilpotentLinearPart";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::NotUnipotent: return "NotUnipotent";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::InvalidEvidence: return "InvalidEvidence";
    case ErrorCode::MissingInverse: return "MissingInverse";
    case ErrorCode::MissingProvenance: return "MissingProvenance";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::UncertifiedP: return "UncertifiedP";
    case ErrorCode::CommonFactor: return "CommonFactor";
    case ErrorCode::DepthBeyondI: return "DepthBeyondI";
    case ErrorCode::ExceededCap: return "ExceededCap";
    case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Error";
}

std::optional<Int> nth_root_exact(const Int& v, unsigned n) {
  if (n == 0) fail(ErrorCode::InternalError, "0th root");
  if (v == 0) return Int(0);
  bool neg = v < 0;
  if (neg && n % 2 == 0) return std::nullopt;
  Int a = neg ? Int(-v) : v;
  if (a == 1) return neg ? Int(-1) : Int(1);
  // binary search on r with r^n = a
  Int lo = 1, hi = 1;
  while (boost::multiprecision::pow(hi, n) < a) hi <<= 1;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, n) < a)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (boost::multiprecision::pow(lo, n) != a) return std::nullopt;
  return neg ? Int(-lo) : lo;
}

std::string DomainDescriptor::name() const {
  switch (kind) {
    case DomainKind::Rational: return "Q";
    case DomainKind::Integer: return "Z";
    case DomainKind::UnivariatePoly: return "Q[t]";
    case DomainKind::Cyclotomic:
      return "Q[zeta]/(zeta^" + std::to_string(e) + "-1)";
    case DomainKind::TensorCyclotomic:
      return "Q[a,b]/(a^" + std::to_string(e) + "-1,b^" + std::to_string(e) + "-1)";
  }
  return "?";
}

DomainElem::DomainElem(DomainDescriptor dom) : dom_(dom) {
  if (dom_.is_cyclotomic_like() && dom_.e < 1)
    fail(ErrorCode::UnsupportedDomain, "cyclotomic order must be >= 1");
}

void DomainElem::normalize() {
  switch (dom_.kind) {
    case DomainKind::Rational:
    case DomainKind::Integer:
      if (!c_.empty() && c_[0] == 0) c_.clear();
      if (dom_.kind == DomainKind::Integer && !c_.empty() && !rat_is_integer(c_[0]))
        fail(ErrorCode::InternalError, "non-integer payload in Z");
      break;
    case DomainKind::UnivariatePoly:
      while (!c_.empty() && c_.back() == 0) c_.pop_back();
      break;
    case DomainKind::Cyclotomic:
    case DomainKind::TensorCyclotomic: {
      size_t want = dom_.kind == DomainKind::Cyclotomic
                        ? size_t(dom_.e)
                        : size_t(dom_.e) * size_t(dom_.e);
      if (!c_.empty()) {
        c_.resize(want, Rat(0));
        bool all0 = std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
        if (all0) c_.clear();
      }
      break;
    }
  }
}

DomainElem DomainElem::from_rat(const DomainDescriptor& dom, const Rat& value) {
  DomainElem r(dom);
  if (value == 0) return r;
  if (dom.kind == DomainKind::Integer && !rat_is_integer(value))
    fail(ErrorCode::NotDivisible, "not an integer: " + value.str());
  switch (dom.kind) {
    case DomainKind::Rational:
    case DomainKind::Integer:
      r.c_ = {value};
      break;
    case DomainKind::UnivariatePoly:
      r.c_ = {value};
      break;
    case DomainKind::Cyclotomic:
      r.c_.assign(size_t(dom.e), Rat(0));
      r.c_[0] = value;
      break;
    case DomainKind::TensorCyclotomic:
      r.c_.assign(size_t(dom.e) * size_t(dom.e), Rat(0));
      r.c_[0] = value;
      break;
  }
  r.normalize();
  return r;
}

DomainElem DomainElem::from_coeffs(const DomainDescriptor& dom, std::vector<Rat> coeffs) {
  DomainElem r(dom);
  switch (dom.kind) {
    case DomainKind::Rational:
    case DomainKind::Integer:
      if (coeffs.size() > 1) fail(ErrorCode::UnsupportedDomain, "scalar domain");
      if (!coeffs.empty()) return from_rat(dom, coeffs[0]);
      return r;
    case DomainKind::UnivariatePoly:
      r.c_ = std::move(coeffs);
      break;
    case DomainKind::Cyclotomic: {
      // reduce modulo zeta^e - 1
      std::vector<Rat> red(size_t(dom.e), Rat(0));
      for (size_t i = 0; i < coeffs.size(); ++i) red[i % size_t(dom.e)] += coeffs[i];
      r.c_ = std::move(red);
      break;
    }
    case DomainKind::TensorCyclotomic:
      if (coeffs.size() != size_t(dom.e) * size_t(dom.e))
        fail(ErrorCode::InternalError, "tensor payload size");
      r.c_ = std::move(coeffs);
      break;
  }
  r.normalize();
  return r;
}

DomainElem DomainElem::generator(const DomainDescriptor& dom, int slot) {
  switch (dom.kind) {
    case DomainKind::UnivariatePoly:
      return from_coeffs(dom, {Rat(0), Rat(1)});
    case DomainKind::Cyclotomic: {
      if (dom.e == 1) return one(dom);
      std::vector<Rat> c(size_t(dom.e), Rat(0));
      c[1] = 1;
      return from_coeffs(dom, std::move(c));
    }
    case DomainKind::TensorCyclotomic: {
      std::vector<Rat> c(size_t(dom.e) * size_t(dom.e), Rat(0));
      size_t e = size_t(dom.e);
      if (dom.e == 1)
        c[0] = 1;
      else if (slot == 0)
        c[1 * e + 0] = 1;
      else
        c[0 * e + 1] = 1;
      return from_coeffs(dom, std::move(c));
    }
    default:
      fail(ErrorCode::UnsupportedDomain, "no generator in " + dom.name());
  }
}

bool DomainElem::is_one() const {
  if (c_.empty()) return false;
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat DomainElem::rat_value() const {
  if (dom_.kind != DomainKind::Rational && dom_.kind != DomainKind::Integer)
    fail(ErrorCode::UnsupportedDomain, "not a scalar domain");
  return c_.empty() ? Rat(0) : c_[0];
}

DomainElem DomainElem::operator+(const DomainElem& o) const {
  if (dom_ != o.dom_) fail(ErrorCode::RingMismatch, "domain mismatch in +");
  DomainElem r(dom_);
  r.c_.assign(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.normalize();
  return r;
}

DomainElem DomainElem::operator-(const DomainElem& o) const { return *this + (-o); }

DomainElem DomainElem::operator-() const {
  DomainElem r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

DomainElem DomainElem::scaled(const Rat& s) const {
  if (s == 0) return zero(dom_);
  if (dom_.kind == DomainKind::Integer && !rat_is_integer(s))
    fail(ErrorCode::NotDivisible, "non-integer scalar over Z");
  DomainElem r(*this);
  for (auto& x : r.c_) x *= s;
  r.normalize();
  return r;
}

DomainElem DomainElem::operator*(const DomainElem& o) const {
  if (dom_ != o.dom_) fail(ErrorCode::RingMismatch, "domain mismatch in *");
  if (is_zero() || o.is_zero()) return zero(dom_);
  DomainElem r(dom_);
  switch (dom_.kind) {
    case DomainKind::Rational:
    case DomainKind::Integer:
      r.c_ = {c_[0] * o.c_[0]};
      break;
    case DomainKind::UnivariatePoly: {
      r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
      for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
      break;
    }
    case DomainKind::Cyclotomic: {
      size_t e = size_t(dom_.e);
      r.c_.assign(e, Rat(0));
      for (size_t i = 0; i < e; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < e; ++j) {
          if (o.c_[j] == 0) continue;
          r.c_[(i + j) % e] += c_[i] * o.c_[j];
        }
      }
      break;
    }
    case DomainKind::TensorCyclotomic: {
      size_t e = size_t(dom_.e);
      r.c_.assign(e * e, Rat(0));
      for (size_t i = 0; i < e * e; ++i) {
        if (c_[i] == 0) continue;
        size_t ia = i / e, ib = i % e;
        for (size_t j = 0; j < e * e; ++j) {
          if (o.c_[j] == 0) continue;
          size_t ja = j / e, jb = j % e;
          r.c_[((ia + ja) % e) * e + (ib + jb) % e] += c_[i] * o.c_[j];
        }
      }
      break;
    }
  }
  r.normalize();
  return r;
}

namespace {

// Solve x * b == a in a cyclotomic-like ring by linear algebra over Q.
// Returns any solution; caller re-verifies.
std::optional<DomainElem> cyclo_solve(const DomainElem& a, const DomainElem& b) {
  const DomainDescriptor& dom = b.domain();
  size_t n = dom.kind == DomainKind::Cyclotomic ? size_t(dom.e)
                                                : size_t(dom.e) * size_t(dom.e);
  // columns: multiplication of basis element k by b
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n + 1, Rat(0)));
  for (size_t k = 0; k < n; ++k) {
    std::vector<Rat> basis(n, Rat(0));
    basis[k] = 1;
    DomainElem ek = DomainElem::from_coeffs(dom, basis);
    DomainElem col = ek * b;
    const auto& cc = col.coeffs();
    for (size_t rI = 0; rI < cc.size(); ++rI) M[rI][k] = cc[rI];
  }
  const auto& ac = a.coeffs();
  for (size_t rI = 0; rI < ac.size(); ++rI) M[rI][n] = ac[rI];
  // gaussian elimination
  size_t row = 0;
  std::vector<int> pivot_col(n, -1);
  for (size_t col = 0; col < n && row < n; ++col) {
    size_t p = row;
    while (p < n && M[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(M[p], M[row]);
    Rat inv = Rat(1) / M[row][col];
    for (size_t j = col; j <= n; ++j) M[row][j] *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == row || M[i][col] == 0) continue;
      Rat f = M[i][col];
      for (size_t j = col; j <= n; ++j) M[i][j] -= f * M[row][j];
    }
    pivot_col[row] = int(col);
    ++row;
  }
  for (size_t i = row; i < n; ++i)
    if (M[i][n] != 0) return std::nullopt;
  std::vector<Rat> x(n, Rat(0));
  for (size_t i = 0; i < row; ++i) x[size_t(pivot_col[i])] = M[i][n];
  return DomainElem::from_coeffs(dom, std::move(x));
}

// Univariate exact division over Q (coefficient lists, no trailing zeros).
std::optional<std::vector<Rat>> upoly_div_exact(const std::vector<Rat>& a,
                                                const std::vector<Rat>& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return std::vector<Rat>{};
  if (a.size() < b.size()) return std::nullopt;
  std::vector<Rat> rem = a;
  std::vector<Rat> q(a.size() - b.size() + 1, Rat(0));
  while (rem.size() >= b.size() && !rem.empty()) {
    Rat f = rem.back() / b.back();
    size_t shift = rem.size() - b.size();
    q[shift] = f;
    for (size_t j = 0; j < b.size(); ++j) rem[shift + j] -= f * b[j];
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  if (!rem.empty()) return std::nullopt;
  while (!q.empty() && q.back() == 0) q.pop_back();
  return q;
}

std::vector<Rat> upoly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

bool DomainElem::is_unit() const {
  if (is_zero()) return false;
  switch (dom_.kind) {
    case DomainKind::Rational: return true;
    case DomainKind::Integer: return c_[0] == 1 || c_[0] == -1;
    case DomainKind::UnivariatePoly: return c_.size() == 1;
    case DomainKind::Cyclotomic:
    case DomainKind::TensorCyclotomic: {
      auto inv = cyclo_solve(one(dom_), *this);
      return inv.has_value() && (*inv * *this).is_one();
    }
  }
  return false;
}

std::optional<DomainElem> DomainElem::try_inverse() const {
  if (is_zero()) return std::nullopt;
  switch (dom_.kind) {
    case DomainKind::Rational:
      return from_rat(dom_, Rat(1) / c_[0]);
    case DomainKind::Integer:
      if (c_[0] == 1 || c_[0] == -1) return *this;
      return std::nullopt;
    case DomainKind::UnivariatePoly:
      if (c_.size() == 1) return from_rat(dom_, Rat(1) / c_[0]);
      return std::nullopt;
    case DomainKind::Cyclotomic:
    case DomainKind::TensorCyclotomic: {
      auto inv = cyclo_solve(one(dom_), *this);
      if (inv && (*inv * *this).is_one()) return inv;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<DomainElem> DomainElem::try_div_exact(const DomainElem& o) const {
  if (dom_ != o.dom_) fail(ErrorCode::RingMismatch, "domain mismatch in /");
  if (o.is_zero()) return std::nullopt;
  if (is_zero()) return zero(dom_);
  switch (dom_.kind) {
    case DomainKind::Rational:
      return from_rat(dom_, c_[0] / o.c_[0]);
    case DomainKind::Integer: {
      Rat q = c_[0] / o.c_[0];
      if (!rat_is_integer(q)) return std::nullopt;
      return from_rat(dom_, q);
    }
    case DomainKind::UnivariatePoly: {
      auto q = upoly_div_exact(c_, o.c_);
      if (!q) return std::nullopt;
      return from_coeffs(dom_, std::move(*q));
    }
    case DomainKind::Cyclotomic:
    case DomainKind::TensorCyclotomic: {
      auto q = cyclo_solve(*this, o);
      if (q && (*q * o) == *this) return q;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

DomainElem DomainElem::div_exact(const DomainElem& o) const {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  auto q = try_div_exact(o);
  if (!q) fail(ErrorCode::NotDivisible, to_string() + " / " + o.to_string());
  return *q;
}

DomainElem DomainElem::gcd(const DomainElem& a, const DomainElem& b) {
  if (a.dom_ != b.dom_) fail(ErrorCode::RingMismatch, "domain mismatch in gcd");
  const DomainDescriptor& dom = a.dom_;
  switch (dom.kind) {
    case DomainKind::Rational:
      return (a.is_zero() && b.is_zero()) ? zero(dom) : one(dom);
    case DomainKind::Integer: {
      Int g = boost::multiprecision::gcd(rat_num(a.rat_value()), rat_num(b.rat_value()));
      return from_rat(dom, Rat(g));
    }
    case DomainKind::UnivariatePoly: {
      std::vector<Rat> x = a.c_, y = b.c_;
      while (!y.empty()) {
        std::vector<Rat> r = upoly_rem(x, y);
        x = std::move(y);
        y = std::move(r);
      }
      if (!x.empty()) {
        Rat lead = x.back();
        for (auto& v : x) v /= lead;  // monic
      }
      return from_coeffs(dom, std::move(x));
    }
    default:
      fail(ErrorCode::UnsupportedDomain, "gcd in " + dom.name());
  }
}

ExtGcdResult DomainElem::ext_gcd(const DomainElem& a, const DomainElem& b) {
  if (a.dom_ != b.dom_) fail(ErrorCode::RingMismatch, "domain mismatch in ext_gcd");
  const DomainDescriptor& dom = a.dom_;
  if (!dom.is_pid() || dom.is_cyclotomic_like())
    fail(ErrorCode::UnsupportedDomain, "ext_gcd needs a PID, got " + dom.name());
  if (dom.kind == DomainKind::Rational) {
    if (a.is_zero() && b.is_zero()) return {zero(dom), zero(dom), zero(dom)};
    if (!a.is_zero())
      return {one(dom), from_rat(dom, Rat(1) / a.rat_value()), zero(dom)};
    return {one(dom), zero(dom), from_rat(dom, Rat(1) / b.rat_value())};
  }
  // generic euclid with Bezout bookkeeping (Z and Q[t])
  DomainElem r0 = a, r1 = b;
  DomainElem s0 = one(dom), s1 = zero(dom);
  DomainElem t0 = zero(dom), t1 = one(dom);
  while (!r1.is_zero()) {
    // quotient: for Z, truncated division; for Q[t], polynomial quotient
    DomainElem q(dom);
    if (dom.kind == DomainKind::Integer) {
      Int n = rat_num(r0.rat_value()), d = rat_num(r1.rat_value());
      q = from_rat(dom, Rat(n / d));
    } else {
      // poly quotient (may be zero when deg r0 < deg r1)
      if (r0.c_.size() >= r1.c_.size()) {
        std::vector<Rat> rem = r0.c_;
        std::vector<Rat> qq(r0.c_.size() - r1.c_.size() + 1, Rat(0));
        while (rem.size() >= r1.c_.size() && !rem.empty()) {
          Rat f = rem.back() / r1.c_.back();
          size_t shift = rem.size() - r1.c_.size();
          qq[shift] = f;
          for (size_t j = 0; j < r1.c_.size(); ++j) rem[shift + j] -= f * r1.c_[j];
          while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        q = from_coeffs(dom, std::move(qq));
      }
    }
    DomainElem r2 = r0 - q * r1;
    DomainElem s2 = s0 - q * s1;
    DomainElem t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  // canonicalize: nonnegative over Z, monic over Q[t]
  DomainElem unit = r0.canonical_unit_part();
  if (!unit.is_zero() && !unit.is_one()) {
    DomainElem ui = *unit.try_inverse();
    r0 = r0 * ui;
    s0 = s0 * ui;
    t0 = t0 * ui;
  }
  return {r0, s0, t0};
}

ExtGcdResult ext_gcd_checked(const DomainElem& a, const DomainElem& b) {
  auto r = DomainElem::ext_gcd(a, b);
  if (r.u * a + r.v * b != r.g)
    fail(ErrorCode::ConsistencyFailure, "ext_gcd bezout identity failed");
  return r;
}

bool v_of_r_member(const Frac& q) {
  if (q.is_zero()) fail(ErrorCode::ZeroInput, "V(R) membership of zero");
  const DomainDescriptor& dom = q.domain();
  if (dom.is_cyclotomic_like())
    fail(ErrorCode::UnsupportedDomain, "V(R) not defined over " + dom.name());
  return true;  // V(R) = K^x for a PID
}

int DomainElem::cmp(const DomainElem& a, const DomainElem& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size() ? -1 : 1;
  for (size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
  }
  return 0;
}

DomainElem DomainElem::canonical_unit_part() const {
  if (is_zero()) return zero(dom_);
  switch (dom_.kind) {
    case DomainKind::Rational: return *this;
    case DomainKind::Integer:
      return from_rat(dom_, c_[0] < 0 ? Rat(-1) : Rat(1));
    case DomainKind::UnivariatePoly:
      return from_rat(dom_, c_.back());
    default:
      return one(dom_);
  }
}

std::string DomainElem::to_string() const {
  if (is_zero()) return "0";
  auto rat_str = [](const Rat& r) { return r.str(); };
  switch (dom_.kind) {
    case DomainKind::Rational:
    case DomainKind::Integer:
      return rat_str(c_[0]);
    case DomainKind::UnivariatePoly:
    case DomainKind::Cyclotomic:
    case DomainKind::TensorCyclotomic: {
      std::string var = dom_.kind == DomainKind::UnivariatePoly ? "t" : "zeta";
      std::ostringstream os;
      bool first = true;
      for (size_t i = c_.size(); i-- > 0;) {
        if (i >= c_.size() || c_[i] == 0) continue;
        Rat cc = c_[i];
        if (first) {
          if (cc < 0) { os << "-"; cc = -cc; }
          first = false;
        } else {
          os << (cc < 0 ? " - " : " + ");
          if (cc < 0) cc = -cc;
        }
        std::string term;
        if (dom_.kind == DomainKind::TensorCyclotomic) {
          size_t e = size_t(dom_.e);
          size_t ia = i / e, ib = i % e;
          if (ia > 0) term += "a" + (ia > 1 ? "^" + std::to_string(ia) : "");
          if (ib > 0) {
            if (!term.empty()) term += "*";
            term += "b" + (ib > 1 ? "^" + std::to_string(ib) : "");
          }
        } else if (i > 0) {
          term = var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        if (term.empty()) {
          os << rat_str(cc);
        } else if (cc == 1) {
          os << term;
        } else {
          os << rat_str(cc) << "*" << term;
        }
      }
      return os.str();
    }
  }
  return "?";
}

DomainElem DomainElem::embed(const DomainDescriptor& target, int slot) const {
  if (dom_ == target) return *this;
  if (is_zero()) return zero(target);
  switch (dom_.kind) {
    case DomainKind::Integer:
    case DomainKind::Rational:
      return from_rat(target, c_[0]);
    case DomainKind::UnivariatePoly:
      if (target.kind == DomainKind::UnivariatePoly) return *this;
      fail(ErrorCode::RingMismatch, "cannot embed Q[t] into " + target.name());
    case DomainKind::Cyclotomic: {
      if (target.kind == DomainKind::TensorCyclotomic && target.e == dom_.e) {
        size_t e = size_t(dom_.e);
        std::vector<Rat> out(e * e, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) {
          if (c_[i] == 0) continue;
          if (slot == 0)
            out[i * e + 0] = c_[i];
          else
            out[0 * e + i] = c_[i];
        }
        return from_coeffs(target, std::move(out));
      }
      fail(ErrorCode::RingMismatch, "cannot embed " + dom_.name() + " into " + target.name());
    }
    default:
      fail(ErrorCode::RingMismatch, "cannot embed " + dom_.name() + " into " + target.name());
  }
}

size_t DomainElem::hash() const {
  size_t h = std::hash<int>()(int(dom_.kind) * 1315423911 + dom_.e);
  for (const auto& r : c_) {
    h ^= std::hash<std::string>()(r.str()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Frac::Frac(DomainElem num, DomainElem den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.domain() != den_.domain()) fail(ErrorCode::RingMismatch, "Frac domains differ");
  if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
  const DomainDescriptor& dom = num_.domain();
  if (dom.is_cyclotomic_like()) {
    // only unit denominators are meaningful here
    auto inv = den_.try_inverse();
    if (!inv) fail(ErrorCode::UnsupportedDomain, "non-unit denominator in " + dom.name());
    num_ = num_ * *inv;
    den_ = DomainElem::one(dom);
    return;
  }
  if (num_.is_zero()) {
    den_ = DomainElem::one(dom);
    return;
  }
  DomainElem g = DomainElem::gcd(num_, den_);
  if (!g.is_zero() && !g.is_one()) {
    num_ = num_.div_exact(g);
    den_ = den_.div_exact(g);
  }
  DomainElem u = den_.canonical_unit_part();
  if (!u.is_one()) {
    DomainElem ui = *u.try_inverse();
    num_ = num_ * ui;
    den_ = den_ * ui;
  }
}

DomainElem Frac::as_domain_elem() const {
  if (!in_domain()) fail(ErrorCode::NotDivisible, "fraction not in the base ring");
  return num_.div_exact(den_);
}

Frac Frac::operator+(const Frac& o) const {
  return Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
Frac Frac::operator-(const Frac& o) const {
  return Frac(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
Frac Frac::operator*(const Frac& o) const { return Frac(num_ * o.num_, den_ * o.den_); }
Frac Frac::operator/(const Frac& o) const {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "fraction division by zero");
  return Frac(num_ * o.den_, den_ * o.num_);
}
Frac Frac::operator-() const { return Frac(-num_, den_); }

std::string Frac::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace polywild
