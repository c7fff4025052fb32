#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polywild/deriv.hpp"
#include "polywild/endo.hpp"
#include "polywild/poly.hpp"

namespace polywild {

// Triangular two-variable data: D(x1) = a, D(x2) = sum b_i x1^i, and the
// index set I = { i : b_i not in aR } computed by exact division in R.
struct TriangularData2 {
  DomainElem a;
  std::vector<DomainElem> b;  // b_0 .. b_l
  std::vector<int> I;

  static TriangularData2 from_derivation(const Derivation& d);
  Derivation as_derivation(const RingCtx& ring) const;
  bool I_empty() const { return I.empty(); }
  bool I_only_zero() const { return I.size() == 1 && I[0] == 0; }
  bool I_meets_positive() const {
    return std::any_of(I.begin(), I.end(), [](int i) { return i >= 1; });
  }
};

struct Verdict {
  bool tame = false;
  std::string rule;     // which clause decided
  std::string detail;
};

// exp(fD) tame iff I is empty, or I = {0} with b_0/a in V(R) or deg_{x2} f = 1.
// Constant f is reported tame with its own rule tag.
Verdict exp_triangular2_verdict(const TriangularData2& data, const Poly& f);

// Triangular n = 3 over Q: pre-cases, then the divisibility criterion
// (every x2-coefficient of D(x3) of index >= 1 divisible by D(x2) in k[x1]).
Verdict exp_triangular3_verdict(const Derivation& d, const Poly& f);

// For a wild triangular exp(fD): the unique normalized product decomposition
// fD = f0 * T with T(x1) = 0, T(x2) = g monic, T(x3) = -dh/dx2.
struct TghDecomposition {
  Poly g, h, f0;
};
TghDecomposition decompose_T_gh(const Derivation& d, const Poly& f);

enum class AffineVerdict { Tame, Wild, NotApplicable };
// Affine n = 2 case: extract the nilpotent linear part; when the slope ratio
// lies in V(R) (always over the built-in PIDs) the hypothesis fails.
AffineVerdict affine_lnd_verdict(const Derivation& d, const Poly& f,
                                 const std::function<bool(const Frac&)>& v_oracle);

enum class CoordWildness { NotWild, WildNotQTW, QTW, TotallyWild, Undetermined };
// Classification of exp(fD)(x_i) for i in {1,2} over a Q-PID.
CoordWildness coordinate_wildness(const TriangularData2& data, const Poly& f, int i);

// The one-parameter family attached to a univariate shape theta:
// D(x1) = -theta'(x2), D(x2) = x3, D(x3) = 0; f = x1 x3 + theta(x2);
// sigma = exp(fD) with images y_i; kappa recenters theta, e = gcd of the odd
// index set U, and the invariant subgroup over Q is trivial iff e is odd.
struct ThetaFamily {
  Poly theta;          // in x2 over Q (arity-3 ring)
  long d = 0;
  Rat kappa;
  std::vector<Rat> u;  // recentred coefficients u_0..u_d
  long e = 1;
  bool t_trivial_over_Q = true;   // the zeta-group over Q is {1}
  bool group_determined = false;  // d >= 9 and d != 10, 12
  Derivation D;
  Poly f;
  Endo sigma;
  std::vector<Poly> y;  // y_1, y_2, y_3
};
ThetaFamily theta_family(const std::vector<Rat>& theta_coeffs);

// Verifies, in Q[zeta]/(zeta^e - 1): phi_zeta is well defined (the numerator
// of g_zeta divides exactly by zeta x3), fixes y1, scales y2 - kappa by
// zeta^2 and y3 by zeta; then phi_a . phi_b = phi_ab for two independent
// symbolic roots in the tensor quotient.
bool phi_zeta_verify(const ThetaFamily& fam, long e);

}  // namespace polywild
