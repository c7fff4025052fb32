#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polywild/deriv.hpp"
#include "polywild/poly.hpp"
#include "polywild/weights.hpp"

namespace polywild {

// Construction data: t0, t1 >= 1 and the coefficient lists alpha^0, alpha^1
// (the top coefficients alpha^i_{t_i} are implicitly 1).
struct LscParams {
  long t0 = 3, t1 = 1;
  std::vector<Rat> alpha0;  // length t0 - 1 (alpha^0_1 .. alpha^0_{t0-1})
  std::vector<Rat> alpha1;  // length t1 - 1
  int depth = 4;            // build f_0 .. f_{depth+1}

  bool alpha_zero() const;
  long t_at(long i) const { return i % 2 == 0 ? t0 : t1; }
};

struct LscSequences {
  std::vector<long> a, b, xi;
  std::optional<long> max_I;  // nullopt when I = N
  std::vector<long> I_prefix; // the elements of I up to the computed horizon
};

// b_0 = b_1 = 0, b_{i+1} = t_i b_i - b_{i-1} + xi_i, xi_i = 1 iff i = 0,1 mod 4;
// a_i = t_i b_i + xi_i; I = { i : a_j > 0 for j = 1..i }.
LscSequences seq_ab(long t0, long t1, int horizon);

// The two case shapes of the auxiliary polynomial in (y, z); deg_z = a_i.
Poly eta(long i, const LscParams& params, const RingCtx& yz_ring);

struct LscFamily {
  LscParams params;
  LscSequences seq;
  RingCtx ring;                 // Q[x1,x2,x3]
  Poly r;
  std::vector<Poly> f;          // f_0 .. f_{N+1}
  std::vector<Poly> q;          // q_i = eta_i(f_i, r), index aligned (q[0] unused)
  std::vector<Derivation> D;    // D_i = Delta_{(f_{i+1}, f_i)} for built i
  std::vector<std::string> transcript;  // verified identities
  Poly theta;                   // theta(z) = sum alpha^0_i z^{i-1}, in z = x2
};

// Builds the family with exact division at every step and verifies, for each
// built i in I: D_i(r) = f_i f_{i+1}, local nilpotency evidence, and
// irreducibility exactly when i is not the maximum of I.
LscFamily build_family(const LscParams& params);

// bt = (t0, t1, t0 t1 - t0 - t1): every f_i single-degree, with
// t_i deg_bt(f_i) = t0 t1 a_i. Requires alpha = 0.
bool homogeneity_check(const LscFamily& fam);

// delta_i = deg_w f_i for w = (e1, e2, e3) in Z^3 with e1 < e2 < e3:
// base values and delta_{i+1} = t_i delta_i - delta_{i-1} for i in I \ {1}.
// Vectors reported in (e1, e2, e3) coordinates.
struct DeltaReport {
  bool ok = false;
  std::vector<std::vector<long long>> deltas;
};
DeltaReport delta_recurrence_check(const LscFamily& fam);

// f_{i-1} f_{i+1} = f_i^3 + r^{a_i} for the (3,3) all-zero-alpha family.
bool fibonacci_identity_check(const LscFamily& fam, int i_max);

// The twisted step: r_i = lambda(f_i) rtilde - mu(f_i, f_{i-1}) and
// tilde_f_{i+1} obtained by clearing lambda denominators polynomially.
struct TildeResult {
  Poly r_i;
  Poly tilde_f;
  Derivation tilde_D;
  std::string transcript;
};
// lambda in k[y] \ {0}, mu in z k[y,z] \ {0}, coprime; i = 2 needs t0 >= 3,
// i >= 3 needs t0 >= 3 and (t0,t1) != (3,1).
TildeResult build_tilde(const LscFamily& fam, const Poly& lambda_y, const Poly& mu_yz,
                        long i);

// For (t0,t1) = (3,1): the kernel-preserving automorphism built from the
// exponential of -f_2 * D with D the degree-2 triangular partner; checks
// sigma3(x1) = f_3, sigma3(x2) = f_4, sigma3(f_2) = f_2, f_5 = x3 f_4 - 1.
bool sigma3_check(const LscFamily& fam);

}  // namespace polywild
