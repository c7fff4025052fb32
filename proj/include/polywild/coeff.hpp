#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polywild/error.hpp"

namespace polywild {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool rat_is_integer(const Rat& r) { return rat_den(r) == 1; }

// Largest m with b^m == v (exact); nullopt if v is not a perfect power.
std::optional<Int> nth_root_exact(const Int& v, unsigned n);

// Base coefficient rings. All have characteristic zero.
//   Rational     : Q
//   Integer      : Z
//   UnivariatePoly : Q[t]
//   Cyclotomic(e): Q[zeta]/(zeta^e - 1), a ring with zero divisors for e > 1
//   TensorCyclotomic(e): Q[a,b]/(a^e-1, b^e-1), used to verify identities that
//     must hold for two independent e-th roots of unity at once
enum class DomainKind : uint8_t {
  Rational,
  Integer,
  UnivariatePoly,
  Cyclotomic,
  TensorCyclotomic,
};

struct DomainDescriptor {
  DomainKind kind = DomainKind::Rational;
  int e = 0;  // cyclotomic order, >= 1 where applicable

  bool operator==(const DomainDescriptor&) const = default;

  bool is_field() const { return kind == DomainKind::Rational; }
  bool is_pid() const {
    return kind == DomainKind::Rational || kind == DomainKind::Integer ||
           kind == DomainKind::UnivariatePoly;
  }
  bool is_q_domain() const { return kind != DomainKind::Integer; }
  bool is_cyclotomic_like() const {
    return kind == DomainKind::Cyclotomic || kind == DomainKind::TensorCyclotomic;
  }
  std::string name() const;

  static DomainDescriptor Q() { return {DomainKind::Rational, 0}; }
  static DomainDescriptor Z() { return {DomainKind::Integer, 0}; }
  static DomainDescriptor Qt() { return {DomainKind::UnivariatePoly, 0}; }
  static DomainDescriptor Zeta(int e) { return {DomainKind::Cyclotomic, e}; }
  static DomainDescriptor ZetaPair(int e) { return {DomainKind::TensorCyclotomic, e}; }
};

struct ExtGcdResult;

// An exact element of one of the supported rings, kept in canonical form:
// rationals normalized with positive denominator, polynomial payloads with no
// trailing zero coefficients, cyclotomic payloads of fixed length e (resp. e^2).
class DomainElem {
 public:
  DomainElem() : dom_(DomainDescriptor::Q()) {}
  explicit DomainElem(DomainDescriptor dom);

  static DomainElem from_rat(const DomainDescriptor& dom, const Rat& value);
  static DomainElem from_int(const DomainDescriptor& dom, long v) {
    return from_rat(dom, Rat(v));
  }
  // Q[t]: coefficient list c0 + c1 t + ...; Cyclotomic: c0 + c1 zeta + ...
  static DomainElem from_coeffs(const DomainDescriptor& dom, std::vector<Rat> coeffs);
  static DomainElem zero(const DomainDescriptor& dom) { return DomainElem(dom); }
  static DomainElem one(const DomainDescriptor& dom) { return from_rat(dom, Rat(1)); }
  // The generator: t for Q[t], zeta for Cyclotomic; first/second root for the
  // tensor ring (slot 0 / slot 1).
  static DomainElem generator(const DomainDescriptor& dom, int slot = 0);

  const DomainDescriptor& domain() const { return dom_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_unit() const;
  bool operator==(const DomainElem& o) const { return dom_ == o.dom_ && c_ == o.c_; }
  bool operator!=(const DomainElem& o) const { return !(*this == o); }

  // Only for Rational / Integer payloads.
  Rat rat_value() const;

  DomainElem operator+(const DomainElem& o) const;
  DomainElem operator-(const DomainElem& o) const;
  DomainElem operator*(const DomainElem& o) const;
  DomainElem operator-() const;
  DomainElem scaled(const Rat& r) const;  // multiply by a rational scalar

  // Exact quotient in the ring; NotDivisible / DivisionByZero on failure.
  DomainElem div_exact(const DomainElem& o) const;
  std::optional<DomainElem> try_div_exact(const DomainElem& o) const;
  std::optional<DomainElem> try_inverse() const;

  // gcd in a PID, canonical (nonnegative over Z, monic over Q[t], 1 over Q).
  static DomainElem gcd(const DomainElem& a, const DomainElem& b);
  // g = gcd(a,b) together with u,v such that u*a + v*b = g.
  static ExtGcdResult ext_gcd(const DomainElem& a, const DomainElem& b);

  // Strict total order for canonical term ordering (within one domain).
  static int cmp(const DomainElem& a, const DomainElem& b);

  // Positive leading unit: over Z the sign, over Q the value, over Q[t] the
  // leading rational coefficient. Identity for cyclotomic rings.
  DomainElem canonical_unit_part() const;

  std::string to_string() const;

  // Re-interpret this element in a larger domain (Z -> Q/Q[t]/..., Q -> Q[t],
  // Q -> Cyclotomic; Cyclotomic(e) -> TensorCyclotomic(e) into `slot`).
  DomainElem embed(const DomainDescriptor& target, int slot = 0) const;

  size_t hash() const;

 private:
  void normalize();
  DomainDescriptor dom_;
  // Rational/Integer: {value} (empty = 0). UnivariatePoly: dense coefficients,
  // no trailing zeros. Cyclotomic(e): length e exactly (all-zero trimmed to
  // empty). TensorCyclotomic(e): length e*e, index i*e+j <-> a^i b^j.
  std::vector<Rat> c_;
};

// An element of the fraction field K of R, reduced where R is a PID and with
// canonical denominator (positive over Z, monic over Q[t]).
class Frac {
 public:
  Frac() = default;
  Frac(DomainElem num, DomainElem den);
  static Frac of(const DomainElem& x) {
    return Frac(x, DomainElem::one(x.domain()));
  }

  const DomainElem& num() const { return num_; }
  const DomainElem& den() const { return den_; }
  const DomainDescriptor& domain() const { return num_.domain(); }

  bool is_zero() const { return num_.is_zero(); }
  bool in_domain() const { return den_.is_unit(); }
  DomainElem as_domain_elem() const;  // requires in_domain()

  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  Frac operator/(const Frac& o) const;
  Frac operator-() const;
  bool operator==(const Frac& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

  std::string to_string() const;

 private:
  DomainElem num_{DomainElem::zero(DomainDescriptor::Q())};
  DomainElem den_{DomainElem::one(DomainDescriptor::Q())};
};

struct ExtGcdResult {
  DomainElem g, u, v;
};

// ext_gcd with the postcondition u*a + v*b = g re-checked by multiplication.
ExtGcdResult ext_gcd_checked(const DomainElem& a, const DomainElem& b);

// Membership in V(R) = { alpha/beta : alpha R + beta R principal }. Over the
// supported PIDs every nonzero quotient is a member; the point of the routine
// is the input checking (ZeroInput / UnsupportedDomain).
bool v_of_r_member(const Frac& q);

}  // namespace polywild
