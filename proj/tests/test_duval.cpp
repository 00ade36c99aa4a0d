#include <random>

#include "doctest.h"
#include "dvr/duval.hpp"
#include "dvr/parse.hpp"

using namespace dvr;

namespace {

RingPtr surface_ring(Field K = Field::rationals()) { return Ring::make(K, {"x", "y"}); }

struct Named {
  std::string f;
  AdeFamily family;
  int index;
};

std::vector<Named> ade_corpus() {
  std::vector<Named> c;
  for (int n = 1; n <= 8; ++n) c.push_back({"x^2 + y^2 + t^" + std::to_string(n + 1), AdeFamily::A, n});
  for (int n = 4; n <= 8; ++n) c.push_back({"x^2 + y^2*t + t^" + std::to_string(n - 1), AdeFamily::D, n});
  c.push_back({"x^2 + y^3 + t^4", AdeFamily::E, 6});
  c.push_back({"x^2 + y^3 + y*t^3", AdeFamily::E, 7});
  c.push_back({"x^2 + y^3 + t^5", AdeFamily::E, 8});
  return c;
}

}  // namespace

TEST_CASE("ADE corpus: resolution, dual graph and Milnor number") {
  auto r = surface_ring();
  for (auto& c : ade_corpus()) {
    CAPTURE(c.f);
    Poly f = parse_poly(c.f, r);
    auto v = classify_surface_germ(f);
    CHECK(v.family == c.family);
    CHECK(v.index == c.index);
    CHECK(static_cast<int>(v.dual_graph.size()) == c.index);
    for (auto& curve : v.dual_graph) CHECK(curve.self_intersection == -2);
    CHECK(milnor_number(f) == c.index);
  }
}

TEST_CASE("fast paths") {
  auto r = surface_ring();
  auto fp = surface_fast_path(parse_poly("x^2 + y^3 + t^4", r));
  REQUIRE(fp);
  CHECK(fp->family == AdeFamily::E);
  CHECK(fp->index == 6);
  CHECK(surface_fast_path(parse_poly("x^2 + y^2 + t^5", r))->family == AdeFamily::A);
  CHECK(surface_fast_path(parse_poly("x^2 + y^2*t + t^4", r))->family == AdeFamily::D);
  CHECK_FALSE(surface_fast_path(parse_poly("x^2 + y^3 + y*t^3", r)));
  // the quartic term is read after completing the square in x
  CHECK_FALSE(surface_fast_path(parse_poly("x^2 + x*t^2 + y^3 + y*t^3 + 1/4*t^4", r)));
  CHECK(classify_surface_germ(parse_poly("x^2 + x*t^2 + y^3 + y*t^3 + 1/4*t^4", r)).name() == "E7");
}

TEST_CASE("non Du Val and errors") {
  auto r = surface_ring();
  CHECK(classify_surface_germ(parse_poly("x^3 + y^3 + t^3", r)).family == AdeFamily::NotDuVal);
  CHECK(classify_surface_germ(parse_poly("x^2 + y^4 + t^4", r)).family == AdeFamily::NotDuVal);
  CHECK(classify_surface_germ(parse_poly("x + y^2", r)).family == AdeFamily::Smooth);
  CHECK_THROWS_AS(classify_surface_germ(parse_poly("x^2 + y^2", r)), DomainError);
  CHECK_THROWS_AS(classify_surface_germ(parse_poly("1 + x^2", r)), DomainError);
  SurfaceGermOptions shallow;
  shallow.max_blowups = 3;
  auto v = classify_surface_germ(parse_poly("x^2 + y^2 + t^12", r), shallow);
  CHECK(v.family == AdeFamily::NotDuVal);
  CHECK(milnor_number(parse_poly("x^2 + y^2 + t^3", r)) == 2);
  CHECK(milnor_number(parse_poly("x + y^2", r)) == 0);
  CHECK_THROWS_AS(milnor_number(parse_poly("x^2 + y^2", r)), DomainError);
}

TEST_CASE("conjugate exceptional curves") {
  auto r = surface_ring();
  // tangent cone x^2 + y^2 splits over Q(i)
  CHECK(classify_surface_germ(parse_poly("x^2 + y^2 + t^5", r)).name() == "A4");
  // D4 with three conjugate branches
  CHECK(classify_surface_germ(parse_poly("x^2 + y^3 - 2*t^3", r)).name() == "D4");
  CHECK(classify_surface_germ(parse_poly("x^2 + y^3 + y*t^2 + t^3", r)).name() == "D4");
}

TEST_CASE("finite fields") {
  auto r = surface_ring(Field::prime(7));
  CHECK(classify_surface_germ(parse_poly("x^2 + y^2 + t^4", r)).name() == "A3");
  CHECK(classify_surface_germ(parse_poly("x^2 + y^3 + t^5", r)).name() == "E8");
}

TEST_CASE("fast paths agree with resolution under coordinate changes") {
  auto r = surface_ring();
  std::mt19937_64 g(3);
  RingPtr S = Ring::make(Field::rationals(), {"x", "y"});
  auto K = Field::rationals();
  int fired = 0;
  for (auto& c : ade_corpus())
   for (int rep = 0; rep < 4; ++rep) {
    Poly f = parse_poly(c.f, r);
    std::vector<Poly> im;
    Matrix M;
    do {
      M = zero_matrix(K, 3, 3);
      for (auto& row : M)
        for (auto& x : row) x = K.from_int(static_cast<long>(g() % 5) - 2);
    } while (determinant(M).is_zero());
    std::vector<Poly> vars = {Poly::var(r, 0), Poly::var(r, 1), Poly::t(r)};
    for (int i = 0; i < 3; ++i) {
      Poly p(r);
      for (int j = 0; j < 3; ++j) p += vars[j].scaled(M[i][j]);
      if (i == 0) p += vars[1] * vars[2];
      im.push_back(p);
    }
    Poly h = f.compose({im[0], im[1]}, im[2]);
    CAPTURE(h.to_string());
    auto v = classify_surface_germ(h);
    CHECK(v.family == c.family);
    CHECK(v.index == c.index);
    CHECK(milnor_number(h) == c.index);
    auto fp = surface_fast_path(h);
    if (fp) {
      ++fired;
      CHECK(fp->family == v.family);
    }
  }
  CHECK(fired >= 50);
}

TEST_CASE("threefold points") {
  auto R3 = Ring::make(Field::rationals(), {"x", "y", "z"});
  auto v = classify_threefold_germ(parse_poly("x^2 + y^2 + z^2 + t^2", R3), 1);
  CHECK(v.name() == "cA1");
  CHECK(v.agreement);
  auto A = AmbientSpace::make(AmbientKind::P3, Field::rationals());
  auto K = A.ring->field();
  auto p = rational_point(A.ring, {K.zero(), K.zero(), K.zero(), K.one()});
  for (int n = 4; n <= 6; ++n) {
    Poly F = parse_poly("x0*(x0*x3 + x1^2) + t*x2^3 + t^" + std::to_string(n) + "*x3^3", A.ring);
    CHECK(classify_threefold_point(F, p, 9).type == "NotCdv");
  }
  Poly F2 = parse_poly("x0*(x0*x3 + x1^2) + t*x2^3 + t^2*x3^3", A.ring);
  auto v2 = classify_threefold_point(F2, p, 9);
  CHECK(v2.is_cdv());
  CHECK(v2.name() == "cA3");
}

TEST_CASE("index-two terminal shapes") {
  auto R3 = Ring::make(Field::rationals(), {"x", "y", "z"});
  auto m1 = terminal_index2_match(parse_poly("x*y + z^4 + t^2", R3), ToricChart::Half1110);
  CHECK(m1.matches);
  CHECK(m1.shape == 1);
  auto m2 = terminal_index2_match(parse_poly("x^2 + y^2 + z^4 + t^4", R3), ToricChart::Half0111);
  CHECK(m2.matches);
  CHECK(m2.shape == 2);
  auto m3 = terminal_index2_match(parse_poly("x^2 + y^3 + y*z*t + z^4", R3), ToricChart::Half1011);
  CHECK(m3.shape == 3);
  auto m4 = terminal_index2_match(parse_poly("x^2 + y^3 + z^4 + t^6", R3), ToricChart::Half1011);
  CHECK(m4.shape == 4);
  auto m5 = terminal_index2_match(parse_poly("x^2 + y^3", R3), ToricChart::Half1011);
  CHECK_FALSE(m5.matches);
  CHECK(m5.reason == "h != 0 required");
  CHECK_THROWS_AS(terminal_index2_match(parse_poly("x^2 + y", R3), ToricChart::Half1110), DomainError);
  CHECK(parse_toric_chart("1/2(0,1,1,1)") == ToricChart::Half0111);
}

TEST_CASE("standard model check") {
  auto A = AmbientSpace::make(AmbientKind::P3, Field::rationals());
  Poly smooth = parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + t*x0*x1*x2", A.ring);
  auto s = standard_model_check(smooth, A);
  CHECK(s.standard);
  CHECK(s.report.empty());
  Poly exc = parse_poly(
      "x1^3 + 2*x2^3 + 4*x3^3 - 6*x1*x2*x3 + t*(x0*(3*x1^2 - 6*x2*x3) + x2*(12*x3^2 - 6*x1*x2)) + t^2*x0^3", A.ring);
  CHECK_FALSE(standard_model_check(exc, A).standard);
  Poly node = parse_poly("x3*(x0^2 + x1^2 + x2^2) + x0^3 + x1^3 + x2^3 + t*(x3^2*x0 + x1^3) + t^2*x3^3", A.ring);
  auto sn = standard_model_check(node, A);
  CHECK(sn.standard);
  REQUIRE(sn.report.size() == 1);
  CHECK(sn.report[0].point.to_string() == "(0 : 0 : 0 : 1)");
  CHECK(sn.report[0].verdict.name() == "cA1");
}
