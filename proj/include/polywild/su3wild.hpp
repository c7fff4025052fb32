#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polywild/endo.hpp"
#include "polywild/weights.hpp"

namespace polywild {

enum class Clause { Holds, Fails, Inconclusive };

// Per-clause evaluation of the reduction conditions for a pair of triples.
struct SUReport {
  Clause su1 = Clause::Fails, su2 = Clause::Fails, su3 = Clause::Fails;
  Clause su4 = Clause::Fails, su5 = Clause::Fails, su6 = Clause::Fails;
  Clause su1p = Clause::Fails, su2p = Clause::Fails, su3p = Clause::Fails;
  // extracted data when applicable
  std::optional<Rat> a, b, c;
  std::optional<long> odd_s;
  bool all_strong() const {
    return su1 == Clause::Holds && su2 == Clause::Holds && su3 == Clause::Holds &&
           su4 == Clause::Holds && su5 == Clause::Holds && su6 == Clause::Holds;
  }
};

SUReport su_condition_check(const std::vector<Poly>& F, const std::vector<Poly>& G,
                            const Weight& w);

// True when the degree arithmetic rules out any reduction of this shape for
// the given rank-3 weight: pairwise Z-independent initial degrees, or the
// strict-ordering exclusions.
bool su_reduction_excluded(const std::vector<Poly>& F, const Weight& w);

struct WildCertificate {
  enum class Kind { DirectSU, WTest } kind = Kind::DirectSU;
  Weight w;
  std::vector<GammaElem> image_degrees;
  std::string transcript;  // human-readable re-checkable summary
};

// Conditions (1) and (2) on the initial monomials of an automorphism triple:
// dependent as a triple, pairwise independent, and no initial form lies in
// the algebra of the other two. Sufficient for wildness.
std::optional<WildCertificate> wild_certificate_check(const Endo& phi, const Weight& w);

// Search for g (free of x_i, nonconstant) with (x_i - g) | f. Complete for
// supports of size <= 3 after monomial content extraction.
struct FactorSearchOutcome {
  Clause verdict = Clause::Fails;  // Holds: factor found; Fails: none exists
  std::optional<Poly> g;
};
FactorSearchOutcome linear_factor_search(const Poly& f, int var);

// Search for a factor x_i^{s_i} - c x_j^{s_j}, c in Q^x.
struct BinomialFactor {
  int i = 0, j = 0;  // 1-based
  long si = 0, sj = 0;
  Rat c;
};
struct BinomialSearchOutcome {
  Clause verdict = Clause::Fails;
  std::optional<BinomialFactor> factor;
};
BinomialSearchOutcome binomial_proportionality_factor(const Poly& f);

// Certification transcript: every achievable initial support was enumerated
// and both divisor searches failed definitively on each face polynomial.
struct WTestCertification {
  Poly p;
  std::vector<Poly> faces;
  std::string transcript;
};
std::optional<WTestCertification> wtest_certify(const Poly& p);

// Definition clauses (a) and (b) for a certified test polynomial against an
// automorphism: deg_w phi(P) < deg_w phi(x_i1) for some i1, and two image
// degrees Z-linearly independent.
std::optional<WildCertificate> wtest_apply(const Endo& phi, const WTestCertification& cert,
                                           const Weight& w);

}  // namespace polywild
