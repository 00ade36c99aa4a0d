#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "dvr/field.hpp"

namespace dvr {

// Dense univariate polynomial over a Field, coefficients low to high.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(Field f) : f_(f) {}
  UPoly(Field f, std::vector<Scalar> c);
  static UPoly constant(const Scalar& c);
  static UPoly monomial(Field f, const Scalar& c, int deg);
  static UPoly x(Field f) { return monomial(f, f.one(), 1); }
  static UPoly from_ints(Field f, const std::vector<long>& c);

  Field field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : f_.zero(); }
  Scalar lead() const { return c_.back(); }

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly scaled(const Scalar& s) const;
  bool operator==(const UPoly& b) const { return f_ == b.f_ && c_ == b.c_; }
  bool operator!=(const UPoly& b) const { return !(*this == b); }

  UPoly monic() const;
  UPoly derivative() const;
  Scalar eval(const Scalar& x) const;
  UPoly compose(const UPoly& g) const;
  UPoly shift(const Scalar& s) const;  // f(x + s)
  std::string to_string(const std::string& var = "z") const;

 private:
  void trim();
  Field f_;
  std::vector<Scalar> c_;
};

std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly exact_div(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);  // monic (or zero)
// s*a + t*b = g (g monic)
void xgcd(const UPoly& a, const UPoly& b, UPoly& g, UPoly& s, UPoly& t);
UPoly powmod(const UPoly& base, const mpz_class& e, const UPoly& m);
Scalar resultant(UPoly a, UPoly b);

struct UFactor {
  UPoly poly;  // monic irreducible
  int mult;
};

// Squarefree decomposition of a monic polynomial (perfect fields only).
std::vector<UFactor> squarefree(const UPoly& f);
// Full factorization over the coefficient field. Supports Q, F_p, F_{p^n} and
// number fields Q(a). Factors are monic, sorted by degree then coefficients.
std::vector<UFactor> factor(const UPoly& f);
std::vector<Scalar> roots(const UPoly& f);  // distinct roots in the field
bool is_irreducible(const UPoly& f);
// Square root in the field when it exists.
bool sqrt_in_field(const Scalar& a, Scalar* root);

// Minimal polynomial over the prime field of an element of an extension.
UPoly prime_minpoly(const Scalar& a);

// Embedding K -> L sending the generator of K to `image`.
struct Embedding {
  Field from, to;
  Scalar gen_image;  // unused when `from` is prime
  Scalar map(const Scalar& a) const;
  UPoly map(const UPoly& f) const;
  static Embedding identity(Field f);
  Embedding then(const Embedding& next) const;
};

// L = K[b]/(g) for g irreducible over K, realized as a simple extension of the
// prime field. Returns the embedding K -> L and the image of b.
struct Adjoined {
  Embedding emb;
  Scalar root;
};
Adjoined adjoin_root(const UPoly& g);

// Deterministic random source shared by the randomized factorization steps.
std::mt19937_64& factor_rng();

}  // namespace dvr
