#include "polywild/endo.hpp"

#include <sstream>

namespace polywild {

Endo::Endo(std::vector<Poly> images) : images_(std::move(images)) {
  if (images_.empty()) fail(ErrorCode::ArityMismatch, "endomorphism with no images");
  ring_ = images_[0].ring();
  if (int(images_.size()) != ring_.arity)
    fail(ErrorCode::ArityMismatch, "endomorphism image count != arity");
  for (const Poly& p : images_)
    if (p.ring() != ring_) fail(ErrorCode::RingMismatch, "endomorphism image rings differ");
}

Endo Endo::identity(const RingCtx& ring) {
  std::vector<Poly> im;
  for (int i = 0; i < ring.arity; ++i) im.push_back(Poly::variable(ring, i));
  Endo e(std::move(im));
  e.inv_ = e.images_;
  return e;
}

Endo Endo::from_elementary(const RingCtx& ring, const ElementaryStep& s) {
  if (!s.alpha.is_unit()) fail(ErrorCode::NonUnit, "elementary step needs unit alpha");
  if (s.f.depends_on(s.target))
    fail(ErrorCode::PreconditionFailed, "elementary step: f must omit the target variable");
  std::vector<Poly> im;
  for (int i = 0; i < ring.arity; ++i) {
    if (i == s.target)
      im.push_back(Poly::variable(ring, i).scaled(s.alpha) + s.f);
    else
      im.push_back(Poly::variable(ring, i));
  }
  Endo e(std::move(im));
  // inverse: x_i -> alpha^-1 (x_i - f)
  DomainElem ai = *s.alpha.try_inverse();
  std::vector<Poly> inv;
  for (int i = 0; i < ring.arity; ++i) {
    if (i == s.target)
      inv.push_back((Poly::variable(ring, i) - s.f).scaled(ai));
    else
      inv.push_back(Poly::variable(ring, i));
  }
  e.inv_ = std::move(inv);
  e.steps_ = {s};
  return e;
}

Endo Endo::from_affine(const RingCtx& ring, const AffineStep& s) {
  size_t n = size_t(ring.arity);
  if (s.matrix.size() != n || s.translation.size() != n)
    fail(ErrorCode::ArityMismatch, "affine step shape");
  std::vector<Poly> im;
  for (size_t i = 0; i < n; ++i) {
    Poly p = Poly::constant(ring, s.translation[i]);
    for (size_t j = 0; j < n; ++j)
      p = p + Poly::variable(ring, int(j)).scaled(s.matrix[i][j]);
    im.push_back(p);
  }
  Endo e(std::move(im));
  auto ainv = unit_matrix_inverse(s.matrix);
  // inverse: x -> A^-1 (x - b)
  std::vector<Poly> inv;
  for (size_t i = 0; i < n; ++i) {
    Poly p(ring);
    for (size_t j = 0; j < n; ++j)
      p = p + (Poly::variable(ring, int(j)) - Poly::constant(ring, s.translation[j]))
                  .scaled(ainv[i][j]);
    inv.push_back(p);
  }
  e.inv_ = std::move(inv);
  e.steps_ = {s};
  return e;
}

Poly Endo::apply_inverse(const Poly& f) const {
  if (!inv_) fail(ErrorCode::MissingInverse, "no inverse witness");
  return f.substitute(*inv_);
}

bool Endo::is_identity() const {
  for (int i = 0; i < ring_.arity; ++i)
    if (images_[size_t(i)] != Poly::variable(ring_, i)) return false;
  return true;
}

std::string Endo::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ", ";
    os << "x" << (i + 1) << " -> " << images_[i].to_string();
  }
  return os.str();
}

Endo compose(const Endo& sigma, const Endo& tau) {
  if (sigma.ring() != tau.ring()) fail(ErrorCode::RingMismatch, "compose ring mismatch");
  std::vector<Poly> im;
  for (const Poly& t : tau.images()) im.push_back(sigma.apply(t));
  Endo r(std::move(im));
  if (sigma.inverse_witness() && tau.inverse_witness()) {
    // (sigma.tau)^-1 = tau^-1 . sigma^-1
    std::vector<Poly> inv;
    for (const Poly& s : *sigma.inverse_witness())
      inv.push_back(s.substitute(*tau.inverse_witness()));
    r.set_inverse_witness(std::move(inv));
  }
  std::vector<ProvenanceStep> steps = sigma.provenance();
  for (const auto& s : tau.provenance()) steps.push_back(s);
  r.set_provenance(std::move(steps));
  return r;
}

Poly det_j(const Endo& phi) { return jacobian(phi.images()).second; }

std::vector<std::vector<DomainElem>> unit_matrix_inverse(
    const std::vector<std::vector<DomainElem>>& a) {
  size_t n = a.size();
  if (n == 0 || a[0].size() != n) fail(ErrorCode::ArityMismatch, "matrix not square");
  if (n > 4) fail(ErrorCode::ArityMismatch, "matrix inverse supported up to 4x4");
  const DomainDescriptor& dom = a[0][0].domain();
  auto minor_det = [&](size_t skip_r, size_t skip_c) {
    std::vector<std::vector<DomainElem>> m;
    for (size_t i = 0; i < n; ++i) {
      if (i == skip_r) continue;
      std::vector<DomainElem> row;
      for (size_t j = 0; j < n; ++j)
        if (j != skip_c) row.push_back(a[i][j]);
      m.push_back(std::move(row));
    }
    if (m.empty()) return DomainElem::one(dom);
    if (m.size() == 1) return m[0][0];
    if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    // n <= 4 in practice
    DomainElem acc = DomainElem::zero(dom);
    for (size_t j = 0; j < m.size(); ++j) {
      std::vector<std::vector<DomainElem>> mm;
      for (size_t i = 1; i < m.size(); ++i) {
        std::vector<DomainElem> row;
        for (size_t k = 0; k < m.size(); ++k)
          if (k != j) row.push_back(m[i][k]);
        mm.push_back(std::move(row));
      }
      DomainElem sub = mm[0][0] * mm[1][1] - mm[0][1] * mm[1][0];
      DomainElem c = m[0][j] * sub;
      acc = (j % 2 == 0) ? acc + c : acc - c;
    }
    return acc;
  };
  DomainElem detv = DomainElem::zero(dom);
  {
    if (n == 1) {
      detv = a[0][0];
    } else if (n == 2) {
      detv = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    } else {
      for (size_t j = 0; j < n; ++j) {
        DomainElem c = a[0][j] * minor_det(0, j);
        detv = (j % 2 == 0) ? detv + c : detv - c;
      }
    }
  }
  auto dinv = detv.try_inverse();
  if (!dinv) fail(ErrorCode::NonUnit, "matrix determinant is not a unit");
  std::vector<std::vector<DomainElem>> inv(n, std::vector<DomainElem>(n, DomainElem::zero(dom)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      DomainElem c = minor_det(j, i);  // adjugate: transposed cofactors
      if ((i + j) % 2 == 1) c = -c;
      inv[i][j] = c * *dinv;
    }
  }
  return inv;
}

Endo invert_structured(const Endo& phi) {
  if (phi.provenance().empty())
    fail(ErrorCode::MissingProvenance, "invert_structured needs provenance");
  const RingCtx& ring = phi.ring();
  Endo acc = Endo::identity(ring);
  // phi = s1 . ... . sk  =>  phi^-1 = sk^-1 . ... . s1^-1, accumulated as
  // inverses of prefixes: (s1...sj)^-1 = sj^-1 . (s1...s_{j-1})^-1, which
  // keeps the intermediate degrees bounded by the prefix inverses
  for (const auto& step : phi.provenance()) {
    Endo inv_step = Endo::identity(ring);
    if (std::holds_alternative<ElementaryStep>(step)) {
      const auto& s = std::get<ElementaryStep>(step);
      Endo e = Endo::from_elementary(ring, s);
      inv_step = Endo(*e.inverse_witness());
      inv_step.set_inverse_witness(e.images());
    } else if (std::holds_alternative<AffineStep>(step)) {
      const auto& s = std::get<AffineStep>(step);
      Endo e = Endo::from_affine(ring, s);
      inv_step = Endo(*e.inverse_witness());
      inv_step.set_inverse_witness(e.images());
    } else {
      const auto& s = std::get<ExpStep>(step);
      // inverse of exp(m D) is exp(-m D): recompute the exponential series
      std::vector<Poly> im;
      for (int i = 0; i < ring.arity; ++i) {
        Poly x = Poly::variable(ring, i);
        Poly acc_im = x;
        Poly cur = x;
        Rat factorial = 1;
        int l = 1;
        while (true) {
          // cur = D^{l-1}(x); next D application with multiplier
          Poly next(ring);
          for (int v = 0; v < ring.arity; ++v)
            next = next + s.derivation_images[size_t(v)] * cur.diff(v);
          next = next * (-s.multiplier);
          if (next.is_zero()) break;
          factorial *= l;
          acc_im = acc_im + next.scaled_rat(Rat(1) / factorial);
          cur = next;
          if (++l > 512) fail(ErrorCode::ExceededCap, "exp inverse series too long");
        }
        im.push_back(acc_im);
      }
      inv_step = Endo(std::move(im));
    }
    acc = compose(inv_step, acc);
  }
  // verified by composition
  Endo result = acc;
  Endo phi_copy = phi;
  Endo check1 = compose(result, phi_copy);
  Endo check2 = compose(phi_copy, result);
  if (!check1.is_identity() || !check2.is_identity())
    fail(ErrorCode::ConsistencyFailure, "structured inverse failed verification");
  result.set_inverse_witness(phi.images());
  return result;
}

bool verify_automorphism(Endo& phi, const Endo& psi) {
  if (phi.ring() != psi.ring()) fail(ErrorCode::RingMismatch, "verify ring mismatch");
  Endo c1 = compose(psi, phi);
  if (!c1.is_identity()) return false;
  Endo c2 = compose(phi, psi);
  if (!c2.is_identity()) return false;
  phi.set_inverse_witness(psi.images());
  return true;
}

bool coordinate_verify(const Poly& f, const std::vector<Poly>& rest, const Endo& psi_inv) {
  std::vector<Poly> im = {f};
  for (const Poly& p : rest) im.push_back(p);
  Endo phi(std::move(im));
  return verify_automorphism(phi, psi_inv);
}

}  // namespace polywild
