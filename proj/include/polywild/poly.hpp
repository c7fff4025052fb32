#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polywild/coeff.hpp"

namespace polywild {

constexpr int kMaxArity = 8;

// Exponent vector; length equals the ring arity.
struct Monomial {
  std::array<uint16_t, kMaxArity> e{};
  uint8_t n = 0;

  static Monomial unit(int arity) {
    Monomial m;
    m.n = uint8_t(arity);
    return m;
  }
  static Monomial var(int arity, int i, uint16_t k = 1) {
    Monomial m = unit(arity);
    m.e[size_t(i)] = k;
    return m;
  }
  long total_degree() const {
    long d = 0;
    for (int i = 0; i < n; ++i) d += e[size_t(i)];
    return d;
  }
  bool is_unit() const { return total_degree() == 0; }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < n; ++i)
      if (e[size_t(i)] > o.e[size_t(i)]) return false;
    return true;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (int i = 0; i < n; ++i) r.e[size_t(i)] = uint16_t(e[size_t(i)] + o.e[size_t(i)]);
    return r;
  }
  Monomial operator/(const Monomial& o) const {
    Monomial r = *this;
    for (int i = 0; i < n; ++i) r.e[size_t(i)] = uint16_t(e[size_t(i)] - o.e[size_t(i)]);
    return r;
  }
  bool operator==(const Monomial& o) const {
    if (n != o.n) return false;
    for (int i = 0; i < n; ++i)
      if (e[size_t(i)] != o.e[size_t(i)]) return false;
    return true;
  }
};

// Graded lexicographic order: higher total degree first, ties broken
// lexicographically with x1 > x2 > ... .
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    long da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    for (int i = 0; i < a.n; ++i) {
      if (a.e[size_t(i)] != b.e[size_t(i)]) return a.e[size_t(i)] < b.e[size_t(i)];
    }
    return false;
  }
};

struct RingCtx {
  int arity = 0;
  DomainDescriptor coeff;
  bool operator==(const RingCtx&) const = default;
  std::string name() const;
};

// Sparse exact multivariate polynomial. No zero coefficients are stored; term
// order is graded-lex, so printing, hashing and leading terms are canonical.
class Poly {
 public:
  using TermMap = std::map<Monomial, DomainElem, GrlexLess>;

  Poly() = default;
  explicit Poly(RingCtx ring) : ring_(std::move(ring)) {}

  static Poly zero(const RingCtx& ring) { return Poly(ring); }
  static Poly constant(const RingCtx& ring, const DomainElem& c);
  static Poly constant(const RingCtx& ring, long v) {
    return constant(ring, DomainElem::from_rat(ring.coeff, Rat(v)));
  }
  static Poly variable(const RingCtx& ring, int i, uint16_t k = 1);
  static Poly term(const RingCtx& ring, const Monomial& m, const DomainElem& c);

  const RingCtx& ring() const { return ring_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_unit()); }
  size_t term_count() const { return t_.size(); }

  long total_degree() const;             // -1 for the zero polynomial
  long degree_in(int var) const;         // -1 for the zero polynomial
  DomainElem coeff_of(const Monomial& m) const;
  DomainElem constant_coeff() const { return coeff_of(Monomial::unit(ring_.arity)); }
  std::pair<Monomial, DomainElem> leading_term() const;  // grlex

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return ring_ == o.ring_ && t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(const DomainElem& c) const;
  Poly scaled_rat(const Rat& r) const;
  Poly mul_term(const Monomial& m, const DomainElem& c) const;
  Poly pow(unsigned k) const;

  void add_term(const Monomial& m, const DomainElem& c);  // accumulate

  // Exact quotient; throws NotDivisible if this is not in the ideal (o).
  Poly div_exact(const Poly& o) const;
  std::optional<Poly> try_div_exact(const Poly& o) const;
  // Remainder of reduction by a single divisor under grlex; zero iff divisible.
  Poly reduce_mod(const Poly& o) const;
  bool divisible_by(const Poly& o) const;

  Poly substitute(const std::vector<Poly>& images) const;
  Poly diff(int var) const;

  // Per-variable content-free data
  bool depends_on(int var) const { return degree_in(var) > 0; }
  // Coefficients of this viewed as a univariate polynomial in `var`; entry d
  // is the coefficient of var^d (a Poly not involving `var`).
  std::vector<Poly> coeffs_in(int var) const;

  // Coefficient-domain operations
  Poly embed(const DomainDescriptor& target, int slot = 0) const;
  // gcd of all coefficients (PID domains); used for primitive parts.
  DomainElem content() const;
  Poly primitive_part() const;

  // k-th root with exact verification (char 0); nullopt when no root exists.
  std::optional<Poly> nth_root(unsigned k) const;

  std::string to_string() const;
  size_t hash() const;

 private:
  RingCtx ring_;
  TermMap t_;
};

struct PolyMatrix {
  std::vector<std::vector<Poly>> entries;  // rectangular
  size_t rows() const { return entries.size(); }
  size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
};

// Jacobian matrix and determinant of a polynomial map (n images, arity n).
std::pair<PolyMatrix, Poly> jacobian(const std::vector<Poly>& images);
Poly det(const PolyMatrix& m);

// Coefficients of df ^ dg: for arity 3 the coefficients of dx_i ^ dx_j for
// (i,j) in {(1,2),(1,3),(2,3)}; for arity 2 the single dx1 ^ dx2 coefficient.
std::vector<Poly> wedge2(const Poly& f, const Poly& g);

// Multivariate gcd by primitive PRS over a chosen main variable. Unit
// normalization: positive leading coefficient under grlex (monic over Q).
Poly mgcd(const Poly& f, const Poly& g);

// All rational roots of sum_i coeffs[i] * x^i.
std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs);

}  // namespace polywild
