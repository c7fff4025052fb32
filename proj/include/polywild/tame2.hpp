#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "polywild/endo.hpp"
#include "polywild/weights.hpp"

namespace polywild {

// One reduction move, applied on the right (phi -> phi . step). Each applied
// step strictly decreases deg_w phi for the session weight.
struct ReductionStep {
  enum class Kind { Elementary, Affine } kind = Kind::Elementary;
  // Elementary: x_i -> x_i - c x_j^t (c in R)
  int target = 0;  // 0-based i
  DomainElem c;
  long exponent = 0;
  // Affine: x -> A x (+ translation, unused by the search itself)
  std::vector<std::vector<DomainElem>> matrix;

  Endo as_endo(const RingCtx& ring) const;
};

struct WildStuck {
  std::vector<Poly> images;          // the stuck state
  Weight w;
  GammaElem degw;                    // deg_w at the stuck state, > |w|
  std::vector<Poly> initial_forms;   // offending initial forms, for audit
};

struct TameVerdict {
  bool tame = false;
  std::vector<ReductionStep> certificate;  // reduction sequence (tame case)
  Endo terminal_affine;                    // affine normal form reached
  std::optional<WildStuck> stuck;          // wild case
};

struct Tame2Options {
  Weight w = Weight::uniform(2, 1);
  bool record_states = false;
};

// Searches for an elementary reduction at the current state: some
// phi(x_i)^w = c (phi(x_j)^w)^t with c in R; returns the step x_i -> x_i - c x_j^t.
std::optional<ReductionStep> elementary_reduction_step(const Endo& phi, const Weight& w);

// Searches for an affine reduction: phi(x1)^w = a phi(x2)^w with a in V(R);
// builds a GL(2,R) witness via ext_gcd and verifies the degree drop.
std::optional<ReductionStep> affine_reduction_step(const Endo& phi, const Weight& w);

// The n = 2 decision procedure over R in {Q, Z, Q[t]} for w = (1,1):
// tame iff the reduction loop reaches the affine normal form; a stuck state
// with deg_w > |w| and no reduction is a wild certificate.
TameVerdict decide_tame(const Endo& phi, const Tame2Options& opts = {});

// Greedy descent on |w(f)| by the two explicit move families; stops when the
// tamely-reduced test passes. Returns the conversion map and the reduced
// polynomial.
struct PolyReduction {
  Endo tau;
  Poly reduced;
};
PolyReduction tame_reduce_poly(const Poly& f);

// Tamely-reduced test via the slope roots of the top bidegree form.
bool tamely_reduced_check(const Poly& f);

enum class CoordinateType { I, II, III, IV, V, NoneOfThem };

struct TypeClassification {
  CoordinateType type = CoordinateType::NoneOfThem;
  std::string detail;  // extracted data or the reason for NoneOfThem
};

// Structural classifier for tamely reduced coordinates over R in {Z, Q[t]}
// with deg_{x1} f >= deg_{x2} f >= 1. Over these PIDs the root-of-unity
// search is restricted to -1 and the types needing V(R) != K^x are empty.
TypeClassification classify_coordinate_type(const Poly& f);

// phi fixes f and is tame.
bool h_membership(const Endo& phi, const Poly& f);

}  // namespace polywild
