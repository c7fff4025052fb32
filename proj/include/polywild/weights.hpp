#pragma once

#include <optional>
#include <set>
#include <vector>

#include "polywild/poly.hpp"

namespace polywild {

// Element of the totally ordered group Z^m under lexicographic order (the
// first coordinate is the most significant).
struct GammaElem {
  std::vector<long long> c;

  GammaElem() = default;
  explicit GammaElem(std::vector<long long> v) : c(std::move(v)) {}
  static GammaElem zero(int m) { return GammaElem(std::vector<long long>(size_t(m), 0)); }

  int rank_dim() const { return int(c.size()); }
  GammaElem operator+(const GammaElem& o) const;
  GammaElem operator-(const GammaElem& o) const;
  GammaElem scaled(long long k) const;
  bool is_zero() const;
  bool operator==(const GammaElem& o) const { return c == o.c; }
  // lexicographic
  bool operator<(const GammaElem& o) const { return c < o.c; }
  bool operator>(const GammaElem& o) const { return o < *this; }
  bool operator<=(const GammaElem& o) const { return !(o < *this); }
  bool operator>=(const GammaElem& o) const { return !(*this < o); }
  bool positive() const { return GammaElem::zero(rank_dim()) < *this; }
  std::string to_string() const;
};

// w = (w_1, ..., w_n) with w_i in Z^m.
struct Weight {
  std::vector<GammaElem> w;

  Weight() = default;
  explicit Weight(std::vector<GammaElem> entries) : w(std::move(entries)) {}
  // one-dimensional weights (Gamma = Z)
  static Weight uniform(int n, long long v = 1);
  static Weight of_ints(const std::vector<long long>& entries);

  int arity() const { return int(w.size()); }
  int gamma_dim() const { return w.empty() ? 0 : w[0].rank_dim(); }
  GammaElem total() const;  // |w| = sum of entries
  bool all_positive() const;
  bool some_positive() const;
  // rank of the Z-span of the entries
  int rank() const;
};

// deg_w value, with -infinity below every group element.
struct WDeg {
  bool minus_inf = true;
  GammaElem v;

  static WDeg neg_infinity() { return WDeg{}; }
  static WDeg of(GammaElem g) { return WDeg{false, std::move(g)}; }
  bool operator==(const WDeg& o) const {
    return minus_inf == o.minus_inf && (minus_inf || v == o.v);
  }
  bool operator<(const WDeg& o) const {
    if (minus_inf) return !o.minus_inf;
    if (o.minus_inf) return false;
    return v < o.v;
  }
  bool operator<=(const WDeg& o) const { return *this < o || *this == o; }
  std::string to_string() const;
};

GammaElem mono_wdeg(const Monomial& m, const Weight& w);
WDeg wdeg(const Poly& f, const Weight& w);
WDeg wdeg_frac(const Poly& num, const Poly& den, const Weight& w);
Poly initial_form(const Poly& f, const Weight& w);
bool is_w_homogeneous(const Poly& f, const Weight& w);

// w(f) = (deg_{x2} f, deg_{x1} f) for arity 2.
std::pair<long, long> bidegree(const Poly& f);
// The weight assigning deg_{x2}f to x1 and deg_{x1}f to x2.
Weight bidegree_weight(const Poly& f);

// deg_w of a wedge output (coefficients indexed by increasing (i,j) pairs).
WDeg wdeg_form(const std::vector<Poly>& coeffs, const Weight& w);

// f^{w(f)} = a (x_i - b x_j^l)^m, if f's top bidegree form is such a power.
struct SlopeData {
  int i = 0, j = 0;          // 1-based variable indices
  long l = 0, m = 0;
  Frac a, b;                 // a, b in K^x
};
std::optional<SlopeData> slope_factor(const Poly& f);

// A set of monomials realizable as the support of an initial form of P under
// some strictly positive weight, with a certifying functional.
struct InitialSupport {
  std::vector<Monomial> monomials;           // sorted, nonempty
  std::vector<std::vector<Rat>> witness;     // chain of functionals (length 1)
  bool operator<(const InitialSupport& o) const {
    return std::lexicographical_compare(monomials.begin(), monomials.end(),
                                        o.monomials.begin(), o.monomials.end(),
                                        GrlexLess());
  }
};

// Every support of the form argmax_u(monomials of P) for a strictly positive
// rational functional u. Contains every initial support P^v over any finitely
// generated totally ordered group with positive weights (the iterated-argmax
// chain of a lexicographic weight collapses to a single functional on a
// finite monomial set). Fails loudly beyond 12 monomials.
std::vector<InitialSupport> enumerate_initial_supports(const Poly& p);

// Exact rational feasibility of { A x >= b (with per-row strictness) } via
// Fourier-Motzkin; returns a feasible point if one exists.
struct LinearConstraint {
  std::vector<Rat> a;  // coefficients
  Rat b;               // a . x >= b, or > b when strict
  bool strict = false;
};
std::optional<std::vector<Rat>> fm_feasible(int nvars,
                                            std::vector<LinearConstraint> cons);

}  // namespace polywild
