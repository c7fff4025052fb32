#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "polywild/poly.hpp"

namespace polywild {

// x_i -> alpha x_i + f with alpha a unit and f free of x_i.
struct ElementaryStep {
  int target = 0;  // 0-based
  DomainElem alpha;
  Poly f;
};

// x -> A x + b with det A a unit of R.
struct AffineStep {
  std::vector<std::vector<DomainElem>> matrix;
  std::vector<DomainElem> translation;
};

struct ExpStep {
  std::vector<Poly> derivation_images;  // D(x_1), ..., D(x_n)
  Poly multiplier;                      // composite derivation is multiplier * D
};

using ProvenanceStep = std::variant<ElementaryStep, AffineStep, ExpStep>;

// A ring endomorphism given by the images of the variables, optionally with
// an inverse witness and/or a factored provenance. Composition convention:
// (sigma . tau)(f) = sigma(tau(f)), i.e. apply(compose(s,t), f) substitutes
// tau's images into f, then sigma's into the result.
class Endo {
 public:
  Endo() = default;
  explicit Endo(std::vector<Poly> images);

  static Endo identity(const RingCtx& ring);
  static Endo from_elementary(const RingCtx& ring, const ElementaryStep& s);
  static Endo from_affine(const RingCtx& ring, const AffineStep& s);

  const RingCtx& ring() const { return ring_; }
  const std::vector<Poly>& images() const { return images_; }
  const std::optional<std::vector<Poly>>& inverse_witness() const { return inv_; }
  const std::vector<ProvenanceStep>& provenance() const { return steps_; }
  bool has_inverse() const { return inv_.has_value(); }

  void set_inverse_witness(std::vector<Poly> inv) { inv_ = std::move(inv); }
  void set_provenance(std::vector<ProvenanceStep> steps) { steps_ = std::move(steps); }

  Poly apply(const Poly& f) const { return f.substitute(images_); }
  Poly apply_inverse(const Poly& f) const;

  bool is_identity() const;

  std::string to_string() const;

 private:
  RingCtx ring_;
  std::vector<Poly> images_;
  std::optional<std::vector<Poly>> inv_;
  std::vector<ProvenanceStep> steps_;
};

// Images of sigma . tau; provenance concatenated, witnesses composed in
// reverse when both present.
Endo compose(const Endo& sigma, const Endo& tau);

Poly det_j(const Endo& phi);

// Inverse from provenance (elementary/affine/exp steps are closed-form);
// verified by composition before returning.
Endo invert_structured(const Endo& phi);

// True iff psi . phi = id and phi . psi = id; on success installs psi as
// phi's inverse witness.
bool verify_automorphism(Endo& phi, const Endo& psi);

// f together with rest... with witness psi_inv is an automorphism.
bool coordinate_verify(const Poly& f, const std::vector<Poly>& rest, const Endo& psi_inv);

// 2x2 / 3x3 matrix inverse over R via adjugate; requires unit determinant.
std::vector<std::vector<DomainElem>> unit_matrix_inverse(
    const std::vector<std::vector<DomainElem>>& a);

}  // namespace polywild
