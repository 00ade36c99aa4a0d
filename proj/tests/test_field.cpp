#include "doctest.h"
#include "dvr/linalg.hpp"
#include "dvr/upoly.hpp"

using namespace dvr;

namespace {

UPoly prod(const std::vector<UFactor>& fs, Field f) {
  UPoly r = UPoly::constant(f.one());
  for (auto& x : fs)
    for (int i = 0; i < x.mult; ++i) r = r * x.poly;
  return r;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  Field F = Field::prime(7);
  Scalar a = F.from_int(3);
  CHECK((a * a.inverse()).is_one());
  CHECK(F.from_mpq(mpq_class(1, 2)) == F.from_int(4));
  CHECK_THROWS_AS(Field::prime(3), DomainError);
  CHECK_THROWS_AS(Field::prime(9), DomainError);
}

TEST_CASE("extension arithmetic") {
  Field Q = Field::rationals();
  Field K = Field::extension(Q, {mpq_class(-2), 0, 0, 1});
  Scalar a = K.generator();
  CHECK((a * a * a) == K.from_int(2));
  Scalar b = a + K.one();
  CHECK((b * b.inverse()).is_one());
  CHECK(prime_minpoly(a).degree() == 3);
  CHECK(prime_minpoly(a * a).coeff(0) == Q.from_int(-4));
}

TEST_CASE("rational factorization") {
  Field Q = Field::rationals();
  UPoly x = UPoly::x(Q);
  UPoly f = (x * x - UPoly::constant(Q.from_int(2))) * (x * x * x + x + UPoly::constant(Q.one())) *
            (x + UPoly::constant(Q.from_int(5))) * (x + UPoly::constant(Q.from_int(5)));
  auto fs = factor(f);
  REQUIRE(fs.size() == 3);
  CHECK(fs[0].poly.degree() == 1);
  CHECK(fs[0].mult == 2);
  CHECK(prod(fs, Q) == f.monic());
  CHECK(is_irreducible(UPoly::from_ints(Q, {1, 0, 0, 0, 1})));
  // Swinnerton-Dyer style: x^4 - 10x^2 + 1 splits mod every prime
  CHECK(is_irreducible(UPoly::from_ints(Q, {1, 0, -10, 0, 1})));
  UPoly g = UPoly::from_ints(Q, {-6, 11, -6, 1});
  CHECK(roots(g).size() == 3);
  // non-monic with content
  UPoly h = UPoly::from_ints(Q, {6, 0, -4}) * UPoly::from_ints(Q, {1, 3});
  CHECK(prod(factor(h), Q) == h.monic());
  CHECK(factor(h).size() == 2);
}

TEST_CASE("finite field factorization") {
  Field F = Field::prime(5);
  UPoly x = UPoly::x(F);
  UPoly f = powmod(x, mpz_class(5), UPoly::monomial(F, F.one(), 7)) - x;
  auto fs = factor(f);
  CHECK(fs.size() == 5);
  UPoly g = UPoly::from_ints(F, {2, 1, 0, 1});  // x^3 + x + 2
  CHECK(prod(factor(g), F) == g);
  UPoly sq = (x * x + UPoly::constant(F.from_int(2))) * (x * x + UPoly::constant(F.from_int(2)));
  auto sf = factor(sq);
  REQUIRE(sf.size() == 1);
  CHECK(sf[0].mult == 2);
  // char p squarefree: (x^5 - 2) = (x - 2)^5 over F_5
  auto p5 = factor(UPoly::from_ints(F, {-2, 0, 0, 0, 0, 1}));
  REQUIRE(p5.size() == 1);
  CHECK(p5[0].mult == 5);
}

TEST_CASE("number field factorization and roots") {
  Field Q = Field::rationals();
  Field K = Field::extension(Q, {mpq_class(-2), 0, 0, 1});
  UPoly f = UPoly::from_ints(K, {-2, 0, 0, 1});
  auto fs = factor(f);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].poly.degree() == 1);
  CHECK(fs[1].poly.degree() == 2);
  CHECK(prod(fs, K) == f);
  Adjoined w = adjoin_root(fs[1].poly);
  CHECK(w.emb.to.degree() == 6);
  CHECK(roots(w.emb.map(f)).size() == 3);
  Scalar r;
  CHECK(sqrt_in_field(K.from_int(4), &r));
  CHECK(r * r == K.from_int(4));
  CHECK_FALSE(sqrt_in_field(K.from_int(3), nullptr));
}

TEST_CASE("finite extension") {
  Field F = Field::prime(7);
  UPoly g = UPoly::from_ints(F, {1, 0, 1});  // x^2+1 irreducible mod 7
  REQUIRE(is_irreducible(g));
  Adjoined a = adjoin_root(g);
  Field L = a.emb.to;
  CHECK(L.degree() == 2);
  CHECK((a.root * a.root + L.one()).is_zero());
  UPoly h = UPoly::from_ints(L, {3, 0, 1});
  CHECK(roots(h).size() == 2);  // every element of F_7 is a square in F_49
  Adjoined b = adjoin_root(UPoly::from_ints(L, {-3, 0, 0, 1}).monic());
  CHECK(b.emb.to.degree() >= 2);
}

TEST_CASE("linear algebra") {
  Field Q = Field::rationals();
  Matrix m = {{Q.from_int(1), Q.from_int(2)}, {Q.from_int(2), Q.from_int(4)}};
  CHECK(rank(m) == 1);
  CHECK(nullspace(m, 2).size() == 1);
  CHECK(determinant(m).is_zero());
  Matrix n = {{Q.from_int(2), Q.from_int(1)}, {Q.from_int(1), Q.from_int(1)}};
  auto inv = inverse(n);
  REQUIRE(inv);
  CHECK((*inv)[0][0] == Q.one());
}
