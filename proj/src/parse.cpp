#include "dvr/parse.hpp"

#include <cctype>

namespace dvr {

namespace {

class Parser {
 public:
  Parser(const std::string& s, const RingPtr& r) : s_(s), r_(r) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& m) { throw ParseError("syntax error: " + m, i_ + 1); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly p = term();
    for (;;) {
      if (accept('+')) p += term();
      else if (accept('-')) p -= term();
      else return p;
    }
  }

  Poly term() {
    Poly p = unary();
    while (accept('*')) p = p * unary();
    return p;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly b = atom();
    if (accept('^')) {
      skip();
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      long e = std::stol(s_.substr(st, i_ - st));
      if (e > 1000) fail("exponent too large");
      return b.pow(static_cast<int>(e));
    }
    return b;
  }

  mpz_class integer() {
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return mpz_class(s_.substr(st, i_ - st));
  }

  Poly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class v(integer());
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected denominator");
        mpz_class d = integer();
        if (d == 0) fail("zero denominator");
        v = mpq_class(v.get_num(), d);
        v.canonicalize();
      }
      return Poly::constant(r_, r_->field().from_mpq(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t st = i_;
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string name = s_.substr(st, i_ - st);
      int slot = r_->index(name);
      if (slot < 0) {
        i_ = st;
        throw ParseError("unknown variable '" + name + "' for this ambient", st + 1);
      }
      return Poly::var(r_, slot);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  RingPtr r_;
  size_t i_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const RingPtr& ring) { return Parser(text, ring).run(); }

}  // namespace dvr
