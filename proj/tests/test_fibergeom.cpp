#include <random>

#include "doctest.h"
#include "dvr/fibergeom.hpp"
#include "dvr/parse.hpp"

using namespace dvr;

namespace {

const char* kNorm = "x1^3 + 2*x2^3 + 4*x3^3 - 6*x1*x2*x3";

Poly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }

std::string exceptional_fixture() {
  // N + t*(x0*dN/dx1 + x2*dN/dx3) + t^2*x0^3
  return std::string(kNorm) + " + t*(x0*(3*x1^2 - 6*x2*x3) + x2*(12*x3^2 - 6*x1*x2)) + t^2*x0^3";
}

bool smooth_at(const Poly& F, long tv) {
  Poly G = F.evaluate_t(F.field().from_int(tv));
  std::vector<Poly> gens;
  std::vector<int> vars;
  for (int i = 0; i < F.ring()->nvars(); ++i) {
    gens.push_back(G.derivative(i));
    vars.push_back(i);
  }
  return groebner(gens, vars).dimension() <= 0;
}

CoordinateChange random_change(const RingPtr& r, const std::vector<int>& slots, std::mt19937_64& g) {
  Field K = r->field();
  for (;;) {
    Matrix M = zero_matrix(K, slots.size(), slots.size());
    for (auto& row : M)
      for (auto& x : row) x = K.from_int(static_cast<long>(g() % 5) - 2);
    if (!determinant(M).is_zero()) return CoordinateChange::linear(r, slots, M);
  }
}

}  // namespace

TEST_CASE("fiber report on the plane-plus-quadric family") {
  auto A = AmbientSpace::make(AmbientKind::P3, Field::rationals());
  Poly F = P("x0*(x0*x3 + x1^2) + t*x2^3 + t^2*x3^3", A.ring);
  auto rep = fiber_report(F, A);
  CHECK(rep.n_components == 2);
  CHECK(rep.reduced);
  REQUIRE(rep.planes_over_k.size() == 1);
  CHECK(rep.planes_over_k[0] == P("x0", A.ring));
  CHECK_FALSE(rep.geometric_plane_triple);
  auto K = A.ring->field();
  CHECK(multiplicity_at_point(F, rational_point(A.ring, {K.zero(), K.zero(), K.zero(), K.one()})) == 2);
  auto sl = singular_locus(F, A);
  CHECK_FALSE(sl.contains_curve);
  REQUIRE(sl.points.size() == 1);
  CHECK(sl.points[0].to_string() == "(0 : 0 : 0 : 1)");
  CHECK(multiplicity_along(F, Center::plane(P("x0", A.ring)), A) == 1);
  CHECK(multiplicity_along(F, Center::line(P("x0", A.ring), P("x1", A.ring)), A) == 1);
  CHECK_THROWS_AS(multiplicity_at_point(F, rational_point(A.ring, {K.one(), K.one(), K.zero(), K.zero()})),
                  DomainError);
}

TEST_CASE("singular points over extensions") {
  auto A = AmbientSpace::make(AmbientKind::P3, Field::rationals());
  Poly F = P("x0*(x0*x3 + x1^2) + t*(x2^3 + x3^3) + t^2*x3^3", A.ring);
  auto sl = singular_locus(F, A);
  REQUIRE(sl.points.size() == 2);
  int total = 0;
  for (auto& p : sl.points) {
    total += p.orbit_size;
    CHECK(multiplicity_at_point(F, p) == 2);
  }
  CHECK(total == 3);
}

TEST_CASE("norm form splits into three conjugate planes") {
  auto A = AmbientSpace::make(AmbientKind::P3, Field::rationals());
  Poly F = P(std::string(kNorm) + " + t*x0^3", A.ring);
  auto rep = fiber_report(F, A);
  CHECK(rep.n_components == 1);
  CHECK(rep.planes_over_k.empty());
  REQUIRE(rep.geometric_plane_triple);
  CHECK(rep.geometric_plane_triple->emb.to.degree() == 6);
  CHECK(rep.geometric_plane_triple->planes.size() == 3);
  Poly reducible = P("x0*x1*x2 + t^3*x3^3", A.ring);
  CHECK_FALSE(find_plane_triple(P("x0^3 + x1^3 + x2^3 + x3^3", A.ring)));
  CHECK(multiplicity_at_point(reducible, rational_point(A.ring, {A.ring->field().zero(), A.ring->field().zero(),
                                                                 A.ring->field().zero(), A.ring->field().one()})) == 3);
}

TEST_CASE("exceptional pattern") {
  auto A = AmbientSpace::make(AmbientKind::P3, Field::rationals());
  Poly F = P(exceptional_fixture(), A.ring);
  CHECK(smooth_at(F, 1));
  auto ev = exceptional_pattern_check(F, A);
  CHECK(ev.conjugate_planes);
  CHECK(ev.singular_along_c);
  CHECK(ev.double_triple_point);
  CHECK(ev.result);
  REQUIRE(ev.triple_point);
  CHECK(ev.triple_point->to_string() == "(1 : 0 : 0 : 0)");
  CHECK(singular_locus(F, A).contains_curve);

  Poly G = P(std::string(kNorm) + " + t*x0^3", A.ring);
  auto ev2 = exceptional_pattern_check(G, A);
  CHECK_FALSE(ev2.result);
  CHECK_FALSE(ev2.singular_along_c);

  Poly H = P("x0*(x0*x3 + x1^2) + t*x2^3 + t^2*x3^3", A.ring);
  CHECK_FALSE(exceptional_pattern_check(H, A).result);
}

TEST_CASE("exceptional pattern is coordinate independent") {
  auto A = AmbientSpace::make(AmbientKind::P3, Field::rationals());
  Poly F = P(exceptional_fixture(), A.ring);
  std::mt19937_64 g(5);
  for (int i = 0; i < 3; ++i) {
    Poly Fc = random_change(A.ring, {0, 1, 2, 3}, g).apply(F);
    CHECK(exceptional_pattern_check(Fc, A).result);
  }
}

TEST_CASE("quartic normal forms") {
  auto A = AmbientSpace::make(AmbientKind::WP2111, Field::rationals());
  auto r = A.ring;
  struct Case {
    const char* f;
    QuarticCase tag;
  };
  std::vector<Case> cases = {
      {"(u + x1^2 - x2*x3)*(u + x2^2 + x3^2) + t*(x1^4 + x2^4)", QuarticCase::UFactor},
      {"(x1 + x2)*(u*x3 + x1^3 + x2^3 + x3^3) + t*u^2", QuarticCase::LinearFactor},
      {"(x1^2 + x2^2 + x3^2)*(x1^2 - x2*x3) + t*u^2", QuarticCase::TwoSmoothConics},
      {"(u + x1*x2)^2 + (x1 + x2)^2*(x1^2 + x3^2) + t*x3^4", QuarticCase::GorensteinDoubleLine},
      {"u*(x1^2 + x1*x2) + x3^2*(x1^2 + 3*x2^2) + x1^4 + x2^3*x1 + t*u^2", QuarticCase::Index2Line},
      {"u^2 + x1^4 + x2^4 + x3^4 + t*x1^4", QuarticCase::Normal},
  };
  std::mt19937_64 g(11);
  for (auto& c : cases) {
    Poly F = P(c.f, r);
    auto nf = quartic_normal_form(F);
    CAPTURE(c.f);
    CHECK(quartic_case_name(nf.tag) == quartic_case_name(c.tag));
    CHECK(nf.change.is_consistent());
    CHECK(verify_quartic_normal_form(F, nf));
    for (int i = 0; i < 2; ++i) {
      Poly Fc = random_change(r, {1, 2, 3}, g).apply(F);
      auto nfc = quartic_normal_form(Fc);
      CHECK(quartic_case_name(nfc.tag) == quartic_case_name(c.tag));
      CHECK(verify_quartic_normal_form(Fc, nfc));
    }
  }
}

TEST_CASE("helpers") {
  auto A = AmbientSpace::make(AmbientKind::WP2111, Field::rationals());
  auto r = A.ring;
  CHECK(is_smooth_conic(P("x1^2 - x2*x3", r)));
  CHECK_FALSE(is_smooth_conic(P("x1^2 - x2^2", r)));
  CHECK_FALSE(is_smooth_conic(P("u + x1^2", r)));
  auto c = change_making_first(r, {1, 2, 3}, P("x2 + 2*x3", r));
  CHECK(c.apply(P("x2 + 2*x3", r)) == P("x1", r));
  auto K = r->field();
  auto m = change_moving_point_to_last(r, {1, 2, 3}, {K.one(), K.from_int(2), K.from_int(3)});
  Poly q = P("2*x1 - x2", r);
  CHECK(m.apply(q).coeff(exps_of({{3, 1}})).is_zero());
}
