#include "polywild/parse.hpp"

#include <cctype>

namespace polywild {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const RingCtx& ring) : s_(text), ring_(ring) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != s_.size()) err("trailing input");
    return p;
  }

 private:
  [[noreturn]] void err(const std::string& what) {
    fail(ErrorCode::SyntaxError,
         what + " at byte " + std::to_string(pos_) +
             (pos_ < s_.size() ? std::string(" ('") + s_[pos_] + "')" : " (end of input)"));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Poly expr() {
    bool neg = false;
    skip_ws();
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      skip_ws();
      if (eat('*')) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    Poly b = base();
    skip_ws();
    if (eat('^')) {
      unsigned long k = nat();
      if (k > 60000) err("exponent too large");
      return b.pow(unsigned(k));
    }
    return b;
  }

  unsigned long nat() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      err("expected a number");
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > 100000000UL) err("number too large");
      ++pos_;
    }
    return v;
  }

  Int bigint() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      err("expected a number");
    Int v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  Poly base() {
    skip_ws();
    if (pos_ >= s_.size()) err("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) err("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = bigint();
      if (eat('/')) {
        size_t denpos = pos_;
        Int den = bigint();
        if (den == 0) {
          pos_ = denpos;
          err("zero denominator");
        }
        Rat q(num, den);
        if (ring_.coeff.kind == DomainKind::Integer && !rat_is_integer(q))
          err("fraction is not an integer over Z");
        return Poly::constant(ring_, DomainElem::from_rat(ring_.coeff, q));
      }
      return Poly::constant(ring_, DomainElem::from_rat(ring_.coeff, Rat(num)));
    }
    if (c == 'x') {
      ++pos_;
      unsigned long i = nat();
      if (i < 1 || long(i) > ring_.arity) err("variable index out of range");
      return Poly::variable(ring_, int(i) - 1);
    }
    if (c == 't') {
      ++pos_;
      if (ring_.coeff.kind != DomainKind::UnivariatePoly)
        err("'t' only exists over Q[t]");
      return Poly::constant(ring_, DomainElem::generator(ring_.coeff));
    }
    if (s_.compare(pos_, 4, "zeta") == 0) {
      pos_ += 4;
      if (!ring_.coeff.is_cyclotomic_like()) err("'zeta' needs a cyclotomic domain");
      return Poly::constant(ring_, DomainElem::generator(ring_.coeff));
    }
    err("unexpected token");
  }

  const std::string& s_;
  const RingCtx& ring_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const RingCtx& ring) {
  return Parser(text, ring).parse();
}

DomainElem parse_coeff(const std::string& text, const DomainDescriptor& dom) {
  RingCtx scalar{1, dom};
  Poly p = parse_poly(text, scalar);
  if (!p.is_constant()) fail(ErrorCode::SyntaxError, "expected a coefficient, got a polynomial");
  return p.constant_coeff();
}

std::vector<Poly> parse_poly_list(const std::string& text, const RingCtx& ring) {
  std::vector<Poly> out;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back(parse_poly(text.substr(start, i - start), ring));
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  return out;
}

DomainDescriptor parse_domain(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "Q") return DomainDescriptor::Q();
  if (s == "Z") return DomainDescriptor::Z();
  if (s == "Q[t]") return DomainDescriptor::Qt();
  auto parse_order = [&](size_t at) {
    int e = 0;
    for (size_t i = at; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        fail(ErrorCode::SyntaxError, "bad cyclotomic order in domain '" + text + "'");
      e = e * 10 + (s[i] - '0');
    }
    if (e < 1 || e > 64) fail(ErrorCode::SyntaxError, "cyclotomic order out of range");
    return e;
  };
  if (s.rfind("Q[zeta]/", 0) == 0) return DomainDescriptor::Zeta(parse_order(8));
  if (s.rfind("zeta^", 0) == 0) return DomainDescriptor::Zeta(parse_order(5));
  fail(ErrorCode::SyntaxError, "unknown domain '" + text + "'");
}

}  // namespace polywild
