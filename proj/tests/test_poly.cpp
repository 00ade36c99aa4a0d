#include <random>

#include "doctest.h"
#include "dvr/parse.hpp"
#include "dvr/poly.hpp"

using namespace dvr;

namespace {

RingPtr p3(Field f = Field::rationals()) { return Ring::make(f, {"x0", "x1", "x2", "x3"}); }
RingPtr wp2111(Field f = Field::rationals()) { return Ring::make(f, {"u", "x1", "x2", "x3"}, {2, 1, 1, 1}); }
RingPtr affine(Field f = Field::rationals()) { return Ring::make(f, {"x", "y"}); }

Poly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }

// Term-wise reference product: expand as sums of single-term products.
Poly reference_mul(const Poly& a, const Poly& b) {
  Poly r(a.ring());
  for (auto& [ea, ca] : a.terms())
    for (auto& [eb, cb] : b.terms()) {
      Exps e;
      for (int i = 0; i < kSlots; ++i) e[i] = static_cast<uint16_t>(ea[i] + eb[i]);
      r += Poly::monomial(a.ring(), e, ca * cb);
    }
  return r;
}

Poly random_poly(const RingPtr& r, std::mt19937_64& g, int nterms, int maxdeg) {
  Poly p(r);
  for (int i = 0; i < nterms; ++i) {
    Exps e{};
    for (int s = 0; s < r->nvars(); ++s) e[s] = static_cast<uint16_t>(g() % (maxdeg + 1));
    e[kT] = static_cast<uint16_t>(g() % 3);
    p += Poly::monomial(r, e, r->field().from_int(static_cast<long>(g() % 11) - 5));
  }
  return p;
}

Poly product(const std::vector<PolyFactor>& fs, const RingPtr& r) {
  Poly p = Poly::constant(r, 1);
  for (auto& f : fs) p = p * f.poly.pow(f.mult);
  return p;
}

}  // namespace

TEST_CASE("add and mul") {
  auto R = affine();
  CHECK((P("x", R) + P("-x", R)).is_zero());
  CHECK(P("x^2+t", R) + P("t", R) == P("x^2+2*t", R));
  CHECK(P("x+t", R) * P("x-t", R) == P("x^2-t^2", R));
  auto S = p3();
  CHECK_THROWS_AS(P("x", R) + Poly::var(S, 0), DomainError);
}

TEST_CASE("ring axioms against term-wise oracle") {
  std::mt19937_64 g(7);
  for (auto f : {Field::rationals(), Field::prime(7)}) {
    auto R = Ring::make(f, {"x", "y", "z"});
    for (int i = 0; i < 60; ++i) {
      Poly a = random_poly(R, g, 4, 3), b = random_poly(R, g, 4, 3), c = random_poly(R, g, 3, 2);
      CHECK((a + b) - b == a);
      CHECK(a * b == reference_mul(a, b));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      if (!a.is_zero() && !b.is_zero()) CHECK((a * b).order_at_origin() == a.order_at_origin() + b.order_at_origin());
    }
  }
}

TEST_CASE("substitute_scale and t_content") {
  auto R = p3();
  Poly F = P("x0*(x0*x3 + x1^2) + t*x2^3 + t^4*x3^3", R);
  Poly G = F.substitute_scale(0, 1);
  CHECK(G == P("t*x0*(t*x0*x3 + x1^2) + t*x2^3 + t^4*x3^3", R));
  CHECK(G.size() == F.size());
  CHECK(G.t_content() == 1);
  CHECK(P("t^2*x0 + t^3", R).t_content() == 2);
  CHECK(P("x0 + t", R).t_content() == 0);
  CHECK_THROWS_AS(F.substitute_scale(kT, 1), DomainError);
  CHECK_THROWS_AS(Poly(R).t_content(), DomainError);
  auto W = wp2111();
  CHECK(P("u + x1", W).substitute_scale(0, 2) == P("t^2*u + x1", W));
  CHECK(F.special_fiber() == P("x0*(x0*x3 + x1^2)", R));
  CHECK(P("t*x1", R).special_fiber().is_zero());
}

TEST_CASE("primitive part is nonzero mod t") {
  std::mt19937_64 g(11);
  auto R = Ring::make(Field::rationals(), {"x", "y"});
  for (int i = 0; i < 50; ++i) {
    Poly a = random_poly(R, g, 3, 2);
    if (a.is_zero()) continue;
    Poly s = a.substitute_scale(0, static_cast<int>(g() % 3));
    CHECK(s.t_content() >= 0);
    CHECK_FALSE(s.div_t(s.t_content()).special_fiber().is_zero());
  }
}

TEST_CASE("order, initial part, tangent cone data") {
  auto R = Ring::make(Field::rationals(), {"x", "y"});
  CHECK(P("x^2 + t^4", R).order_at_origin() == 2);
  CHECK(P("t*x*y + t^3", R).order_at_origin() == 3);
  CHECK(P("x^2+x*y+t*y^3", R).initial_part(2) == P("x^2+x*y", R));
  CHECK(P("x^2+t*x", R).initial_part(2) == P("x^2+t*x", R));
  CHECK(P("x^2+y^3+t^4", R).initial_part(2) == P("x^2", R));
  CHECK_THROWS_AS(P("x^2+y^3", R).initial_part(3), DomainError);
}

TEST_CASE("weighted degree") {
  auto W = wp2111();
  CHECK(P("u^2", W).weighted_degree() == 4);
  CHECK_THROWS_AS(P("u^2 + x1^3", W).weighted_degree(), DomainError);
  CHECK(P("x1*x2*x3*u", W).weighted_degree() == 5);
  CHECK(P("x0*(x0*x3 + x1^2) + t*x2^3 + t^4*x3^3", p3()).weighted_degree() == 3);
}

TEST_CASE("parse and print") {
  auto R = p3();
  Poly F = P("x0*(x0*x3 + x1^2) + t*x2^3 + t^4*x3^3", R);
  CHECK(F.to_string() == "x0^2*x3 + x0*x1^2 + t*x2^3 + t^4*x3^3");
  CHECK(P(F.to_string(), R) == F);
  CHECK(P("1/2*x0 - 3/4*t*x1", R).to_string() == "1/2*x0 - 3/4*t*x1");
  try {
    P("x0 + ", R);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.column() == 6);
  }
  CHECK_THROWS_AS(P("x0 + u", R), ParseError);
  auto F7 = p3(Field::prime(7));
  Poly G = P("x0^3 - 2*x1^3 + 1/2*t*x2^3", F7);
  CHECK(P(G.to_string(), F7) == G);
}

TEST_CASE("factor_over_k") {
  auto R = p3();
  auto fs = factor_over_k(P("x0*(x0*x3 + x1^2)", R));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].poly == P("x0", R));
  CHECK(fs[1].poly == P("x0*x3 + x1^2", R));
  auto sq = factor_over_k(P("(x1^2 - x2*x3)^2", R));
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].mult == 2);
  Poly N = P("x1^3 + 2*x2^3 + 4*x3^3 - 6*x1*x2*x3", R);
  auto nf = factor_over_k(N);
  REQUIRE(nf.size() == 1);
  CHECK(nf[0].mult == 1);
  // over Q(2^{1/3}) the norm form acquires a linear factor
  Field K = Field::extension(Field::rationals(), {mpq_class(-2), 0, 0, 1});
  auto RK = p3(K);
  Poly NK = Poly(RK);
  for (auto& [e, c] : N.terms()) NK.add_term(e, K.from_mpq(c.coeff(0)));
  auto kf = factor_over_k(NK);
  REQUIRE(kf.size() == 2);
  CHECK(kf[0].poly.total_degree() == 1);
  CHECK(kf[1].poly.total_degree() == 2);
  // products of assorted factors
  std::vector<std::string> cases = {"(x0+2*x1-x3)*(x1^2+x2*x3+x0^2)",
                                    "(x0-x1)*(x1+x2)*(x2-3*x3)*(x0+x3)",
                                    "(x0^2+x1^2+x2^2-x3^2)*(x0*x1-x2*x3+x3^2)",
                                    "(x1^2-2*x2^2)*(x1^2+x3^2)",
                                    "x1*x2*x3", "x2^4", "(x1+x2)^3*(x0-x3)",
                                    "(x0^2+x1*x2)*(x0^2+x1*x2)"};
  for (auto& s : cases) {
    Poly F = P(s, R);
    Scalar unit;
    auto f = factor_over_k(F, &unit);
    CHECK(product(f, R).scaled(unit) == F);
  }
  CHECK(factor_over_k(P("(x0+2*x1-x3)*(x1^2+x2*x3+x0^2)", R)).size() == 2);
  CHECK(factor_over_k(P("(x1^2-2*x2^2)*(x1^2+x3^2)", R)).size() == 2);
  CHECK(factor_over_k(P("(x0^2+x1^2+x2^2-x3^2)*(x0*x1-x2*x3+x3^2)", R)).size() == 2);
  CHECK_THROWS_AS(factor_over_k(P("x0^5", R)), DomainError);
  CHECK_THROWS_AS(factor_over_k(P("x0^2+t*x1^2", R)), DomainError);
}

TEST_CASE("weighted factorization") {
  auto W = wp2111();
  auto f1 = factor_over_k(P("u*(u + x1^2 + x2*x3)", W));
  CHECK(f1.size() == 2);
  auto f2 = factor_over_k(P("(u + x1^2)*(u - x2*x3)", W));
  CHECK(f2.size() == 2);
  auto f3 = factor_over_k(P("u^2 + x1^4 + x2^4 + x3^4", W));
  CHECK(f3.size() == 1);
  auto f4 = factor_over_k(P("x1*(u*x2 + x3^3)", W));
  CHECK(f4.size() == 2);
  auto f5 = factor_over_k(P("(x1^2-x2*x3)*(x1^2+x2^2+x3^2)", W));
  CHECK(f5.size() == 2);
  for (auto s : {"u*(u + x1^2 + x2*x3)", "(u + x1^2)*(u - x2*x3)", "x1*(u*x2 + x3^3)", "(u+x1*x2)^2"}) {
    Poly F = P(s, W);
    Scalar unit;
    auto f = factor_over_k(F, &unit);
    CHECK(product(f, W).scaled(unit) == F);
  }
}

TEST_CASE("tangent cone") {
  auto R = Ring::make(Field::rationals(), {"x", "y"});
  Poly a = tangent_cone(P("x^2 + t*y", R));
  CHECK(a.to_string() == "x^2 + y*tau");
  CHECK(tangent_cone(P("x*y + t^2", R)).to_string() == "x*y + tau^2");
  CHECK(tangent_cone(P("x^2 + t*x + t^3", R)).to_string() == "x^2 + x*tau");
  std::mt19937_64 g(3);
  for (int i = 0; i < 40; ++i) {
    Poly f = random_poly(R, g, 4, 3);
    if (f.is_zero()) continue;
    Poly c = tangent_cone(f);
    CHECK(c.is_homogeneous());
    CHECK(c.total_degree() == f.order_at_origin());
  }
}
