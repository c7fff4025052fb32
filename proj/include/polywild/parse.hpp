#pragma once

#include <string>

#include "polywild/poly.hpp"

namespace polywild {

// Grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := rational | 't' | 'zeta' | 'x' nat | '(' expr ')'
// Whitespace is insignificant. Syntax errors carry the byte offset.
Poly parse_poly(const std::string& text, const RingCtx& ring);

// Parse a single coefficient (no variables x_i allowed).
DomainElem parse_coeff(const std::string& text, const DomainDescriptor& dom);

// Comma-separated list of polynomials.
std::vector<Poly> parse_poly_list(const std::string& text, const RingCtx& ring);

// "Q" | "Z" | "Q[t]" | "Q[zeta]/e" (also accepts "zeta^e" suffix form).
DomainDescriptor parse_domain(const std::string& text);

}  // namespace polywild
