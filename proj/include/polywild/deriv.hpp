#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "polywild/endo.hpp"
#include "polywild/poly.hpp"
#include "polywild/weights.hpp"

namespace polywild {

// R-derivation of R[x], given by the images of the variables; application
// extends by the Leibniz rule.
class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(std::vector<Poly> images);

  const RingCtx& ring() const { return ring_; }
  const std::vector<Poly>& images() const { return images_; }
  const Poly& image(int i) const { return images_[size_t(i)]; }
  bool is_zero() const;

  Poly apply(const Poly& f) const;
  Derivation scaled(const Poly& f) const;  // f * D
  Derivation operator-() const;
  bool operator==(const Derivation& o) const {
    return ring_ == o.ring_ && images_ == o.images_;
  }

  bool is_triangular() const;  // D(x_i) in R[x_1..x_{i-1}]
  std::optional<std::vector<int>> triangular_permutation() const;
  bool is_affine() const;  // deg D(x_i) <= 1

  std::string to_string() const;

 private:
  RingCtx ring_;
  std::vector<Poly> images_;
};

struct TriangularAfterPermutation {
  std::vector<int> perm;  // perm[k] = variable index at triangular position k
};
struct IterationBound {
  std::vector<int> bound;  // per variable: D^bound[i](x_i) = 0
};
struct Inherited {
  std::string reason;
};
using LndEvidence = std::variant<TriangularAfterPermutation, IterationBound, Inherited>;

struct ExceededCapTag {
  int cap;
};
using LndOutcome = std::variant<LndEvidence, ExceededCapTag>;

// Structural triangularity check first, then bounded iteration. An exceeded
// cap is inconclusive, never a refutation.
LndOutcome lnd_verify(const Derivation& d, int cap);
int default_iteration_cap(const Derivation& d);

// exp D with evidence; the result carries exp(-D) as inverse witness and an
// ExpStep provenance. Requires a Q-domain.
Endo exp_derivation(const Derivation& d, const LndEvidence& evidence);
Endo exp_derivation_checked(const Derivation& d, int cap = 0);

// log phi for unipotent phi (phi - id locally nilpotent); exp(log phi) = phi
// is re-verified.
Derivation formal_log(const Endo& phi, int cap = 0);

// Delta_{(g1,g2)}: the arity-3 Jacobian derivation, killing g1 and g2.
Derivation jacobian_derivation(const Poly& g1, const Poly& g2);

// phi^-1 . D . phi
Derivation conjugate(const Derivation& d, const Endo& phi);

// Kernel generator of a triangular derivation in two variables:
// D(x1) = a in R\{0}, D(x2) in R[x1]; h = a x2 - integral of D(x2).
// Over Z the result is returned over Q. If a = 0 the kernel is R[x1].
Poly triangular_kernel(const Derivation& d);

// Kernel generator over a field via exact integration of the dual 1-form;
// failure of exactness refutes local nilpotency.
struct RentschlerKernel {
  Poly generator;       // g with ker D = K[g]
  Poly divided_factor;  // c = gcd(D(x1), D(x2)), D = c * Delta-form of g
};
RentschlerKernel rentschler_kernel(const Derivation& d);

// True iff the images have no common non-unit factor.
bool irreducible_check(const Derivation& d);

// Largest m with p^m | f.
int vp_valuation(const Poly& f, const Poly& p);

struct Rank3Evidence {
  Poly p1, p2;  // algebraically independent irreducible factors with i >= 1
};

struct PlinthWitness {
  Poly s;               // D^2(s) = 0, D(s) != 0
  Poly p;               // irreducible factor of D(s)
  int vp_of_Ds = 0;     // v_p(D(s))
  int j_found = 0;      // max v_p(s + h) found over the searched span
  int i_lower = 0;      // = vp_of_Ds - j_found; a valid bound iff search_complete
  bool search_complete = false;
  std::string completeness_argument;  // recorded reason when complete
};

// Searches h in the span of kernel monomials maximizing v_p(s + h). When the
// data is homogeneous for some strictly positive weight, the search space
// collapses to the matching graded piece and the result is exact.
PlinthWitness plinth_witness(const Derivation& d, const Poly& s, const Poly& p,
                             const std::vector<Poly>& kernel_gens, int degree_bound);

// Two witnesses with i_lower >= 1 for algebraically independent p1, p2 and an
// irreducible D; sufficient for rank 3.
std::optional<Rank3Evidence> rank3_evidence(const Derivation& d,
                                            const PlinthWitness& w1,
                                            const PlinthWitness& w2);

bool algebraically_independent_pair(const Poly& f, const Poly& g);

}  // namespace polywild
