#include <random>

#include "doctest.h"
#include "dvr/ambient.hpp"
#include "dvr/parse.hpp"

using namespace dvr;

namespace {

Poly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }

Poly random_form(const RingPtr& r, int deg, std::mt19937_64& g, int nterms) {
  // weighted-homogeneous of degree deg with random t powers
  Poly p(r);
  int n = r->nvars();
  for (int k = 0; k < nterms; ++k) {
    Exps e{};
    int left = deg;
    for (int tries = 0; tries < 50 && left > 0; ++tries) {
      int s = static_cast<int>(g() % n);
      if (r->weight(s) <= left) {
        ++e[s];
        left -= r->weight(s);
      }
    }
    if (left) continue;
    e[kT] = static_cast<uint16_t>(g() % 4);
    p += Poly::monomial(r, e, r->field().from_int(static_cast<long>(g() % 7) - 3));
  }
  return p;
}

}  // namespace

TEST_CASE("ambient spaces") {
  auto A = AmbientSpace::make(AmbientKind::WP2111, Field::rationals());
  CHECK(A.degree() == 4);
  CHECK(A.weight_one_slots() == std::vector<int>{1, 2, 3});
  CHECK(parse_ambient_kind("P3") == AmbientKind::P3);
  CHECK_THROWS_AS(parse_ambient_kind("P5"), DomainError);
  auto D = AmbientSpace::make(AmbientKind::DeterminantalP6, Field::rationals());
  CHECK(D.minors().size() == 6);
}

TEST_CASE("move_center_to_standard") {
  auto A = AmbientSpace::make(AmbientKind::P3, Field::rationals());
  auto R = A.ring;
  auto s1 = move_center_to_standard(Center::plane(P("x0 + x3", R)), A);
  CHECK(s1.slots == std::vector<int>{3});
  CHECK(s1.change.inverse[3] == P("x0 + x3", R));
  CHECK(s1.change.is_consistent());
  auto s2 = move_center_to_standard(Center::line(P("x0", R), P("x1", R)), A);
  CHECK(s2.change.is_identity());
  CHECK(s2.slots == std::vector<int>{0, 1});
  auto Q = R->field();
  auto s3 = move_center_to_standard(Center::point(R, {Q.zero(), Q.zero(), Q.zero(), Q.one()}), A);
  CHECK(s3.change.is_identity());
  CHECK_THROWS_AS(move_center_to_standard(Center::line(P("x0", R), P("2*x0", R)), A), DomainError);
  CHECK_THROWS_AS(move_center_to_standard(Center::plane(P("x0^2", R)), A), DomainError);
  // the center becomes the coordinate subspace
  auto pt = Center::point(R, {Q.from_int(1), Q.from_int(2), Q.from_int(3), Q.from_int(4)});
  auto s4 = move_center_to_standard(pt, A);
  for (auto& f : pt.forms) {
    Poly g = s4.change.apply(f);
    for (auto& [e, c] : g.terms()) {
      bool in = false;
      for (int s : s4.slots) in = in || e[s];
      CHECK(in);
    }
  }
}

TEST_CASE("elementary transform on the plane x0 = 0") {
  auto A = AmbientSpace::make(AmbientKind::P3, Field::rationals());
  auto R = A.ring;
  Poly F = P("x0*(x0*x3 + x1^2) + t*x2^3 + t^4*x3^3", R);
  auto [Fp, st] = elementary_transform(F, Center::plane(P("x0", R)), A);
  CHECK(Fp == P("x0*x1^2 + x2^3 + t*x0^2*x3 + t^3*x3^3", R));
  CHECK(st.t_removed == 1);
  CHECK(st.mu_before == 1);
  CHECK(check_generic_fiber_identity(F, st));
  CHECK(st.discrepancy[0].second == 1);
  CHECK(st.discrepancy[1].second == 3);
  // smooth equation and a plane not in the fiber: trivial step
  Poly S = P("x0^3 + x1^3 + x2^3 + x3^3", R);
  auto [S2, ss] = elementary_transform(S, Center::plane(P("x0", R)), A);
  CHECK(ss.trivial);
  CHECK(ss.t_removed == 0);
  // plane then complementary weights returns F
  auto [G1, g1] = elementary_transform(F, Center::plane(P("x3", R)), A);
  auto [G2, g2] = weighted_transform(G1, {1, 1, 1, 0});
  CHECK(G2 == F);
  CHECK(check_generic_fiber_identity(G1, g2));
}

TEST_CASE("weighted transforms") {
  auto A = AmbientSpace::make(AmbientKind::WP2111, Field::rationals());
  auto R = A.ring;
  Poly F = P("u*(u + x1^2 + x2*x3) + t*(x1^4 + x2^4 + x3^4) + t^2*x1*x2^3", R);
  auto [F1, s1] = weighted_transform(F, {1, 0, 0, 0});
  CHECK(s1.criterion_ok);
  CHECK(s1.k_before == 0);
  CHECK(s1.k_after == 1);
  Poly H = P("(x1^2 - x2*x3)*(x1^2 + x2^2 + x3^2) + t^2*u^2 + t*(x1^4 + x2^4 + x3^4 + u*x1*x2)", R);
  auto [H1, h1] = weighted_transform(H, {1, 1, 1, 1});
  CHECK(h1.criterion_ok);
  CHECK(h1.k_before == 2);
  CHECK(h1.k_after == 0);
  auto [I, i1] = weighted_transform(F, {0, 0, 0, 0});
  CHECK(I == F);
  CHECK(i1.t_removed == 0);
  CHECK(i1.criterion_ok);
  CHECK_THROWS_AS(weighted_transform(F, {-1, 0, 0, 0}), DomainError);
  CHECK(axial_multiplicity(P("u^2 + x1^4", R)) == 0);
  CHECK(axial_multiplicity(P("x1^4 + t^30*u^2", R)) == kAxialInfinite);
}

TEST_CASE("transform soundness on random inputs") {
  std::mt19937_64 g(2024);
  for (auto kind : {AmbientKind::P3, AmbientKind::WP2111}) {
    auto A = AmbientSpace::make(kind, Field::rationals());
    auto R = A.ring;
    int deg = A.degree();
    for (int it = 0; it < 120; ++it) {
      Poly F = random_form(R, deg, g, 6);
      if (F.is_zero()) continue;
      F = F.div_t(F.t_content());
      std::vector<int> w(R->nvars());
      for (auto& x : w) x = static_cast<int>(g() % 3);
      auto [Fp, st] = weighted_transform(F, w);
      CHECK(check_generic_fiber_identity(F, st));
      CHECK(Fp.t_content() == 0);
      CHECK(Fp.weighted_degree() == deg);
      // complement within one full twist
      int m = 0;
      for (int i = 0; i < R->nvars(); ++i) m = std::max(m, (w[i] + R->weight(i) - 1) / R->weight(i));
      std::vector<int> cw(R->nvars());
      for (int i = 0; i < R->nvars(); ++i) cw[i] = m * R->weight(i) - w[i];
      auto [Fb, sb] = weighted_transform(Fp, cw);
      CHECK(Fb == F);
      if (kind == AmbientKind::P3) {
        Poly l(R);
        for (int i = 0; i < 4; ++i) l += Poly::var(R, i).scaled(R->field().from_int(static_cast<long>(g() % 5) - 2));
        if (l.is_zero()) continue;
        auto [Fe, se] = elementary_transform(F, Center::plane(l), A);
        CHECK(check_generic_fiber_identity(F, se));
        CHECK(Fe.t_content() == 0);
        CHECK(se.t_removed == se.mu_before);
      }
    }
  }
}

TEST_CASE("determinantal model") {
  auto A = AmbientSpace::make(AmbientKind::WP2111, Field::rationals());
  auto R = A.ring;
  Poly F = P("(x1^2 - x2*x3)*(x1*x2 + x2^2 + 3*x1*x3 + x2*x3 - 2*x3^2)"
             " + t*(u^2 + x2^4 + x3^4 + x1^2*x2*x3 - x1*x2^3 + 2*x1^2*x3^2)", R);
  DeterminantalModel M = construct_determinantal_model(F);
  auto Z = M.ambient.ring;
  CHECK(M.change.is_identity());
  CHECK(M.L == P("z2 + z3 + 3*z4 + z5 - 2*z6", Z));
  CHECK(M.Q == P("z3^2 + z6^2 + z2*z4 - z2*z3 + 2*z4^2", Z));
  CHECK(M.R.is_zero());
  CHECK(M.Fplus == P("z1*(z2 + z3 + 3*z4 + z5 - 2*z6) + u^2 + z3^2 + z6^2 + z2*z4 - z2*z3 + 2*z4^2", Z));
  CHECK(M.ambient.matrix[0][0] == P("t*z1 + z5", Z));
  CHECK(M.ambient.matrix[1][2] == P("z5", Z));
  CHECK(M.special_fiber_ok);
  // general S2, G: the t-part R is reported
  Poly F2 = P("(x1^2 - x2*x3)*(x1^2 + x2*x3) + t*(u^2 + x1^4 + x2^4)", R);
  DeterminantalModel M2 = construct_determinantal_model(F2);
  CHECK(M2.L == P("2*z5", Z));
  CHECK(M2.Q == P("z5^2 + z3^2", Z));
  CHECK(M2.R == P("z1^2 + t*z1^2 + 2*z1*z5", Z));
  // S1 in other coordinates
  Poly F3 = P("(x2^2 - x1*x3)*(x1*x3 + x2^2) + t*(u^2 + u*x1*x2 + x3^4 + x1^4)", R);
  DeterminantalModel M3 = construct_determinantal_model(F3);
  CHECK(M3.S1 == P("x1^2 - x2*x3", R));
  CHECK(M3.change.is_consistent());
  CHECK_THROWS_AS(construct_determinantal_model(P("(x1^2 - x2^2)*(x1*x3 + x2^2) + t*(u^2 + x3^4)", R)), DomainError);
  CHECK_THROWS_AS(construct_determinantal_model(P("(x1^2 + x2^2 + x3^2)*(x1^2 + 2*x2^2 + x3^2) + t*(u^2 + x3^4)", R)), DomainError);
  CHECK_THROWS_AS(construct_determinantal_model(P("(x1^2 - x2*x3)*(x1*x3 + x2^2) + t^2*(u^2 + x3^4)", R)), DomainError);
}
