#include <functional>
#include <random>

#include "doctest.h"
#include "dvr/parse.hpp"
#include "dvr/rigidity.hpp"

using namespace dvr;

namespace {

const char* kQuadricPencil =
    "u*(x1*x2 + x3^2) + x1^3*x3 + x2^4 + x3^4 + x1^2*x2^2 + t*x1^3*x2 + t^2*x1^4 + t*u^2";
const char* kIndex2Sextic =
    "u^2 + v^2*x1*x2 + v*(x1^4 + x2^4) + x1^6 + x2^6 + x1^3*x2^3 + t*(v*x1^4 + x2^6) + t*v^3";
const char* kIndex3Sextic = "u*v*x1 + u*(x1^3 + x2^3) + v^3 + v*(x1^4 + x2^4) + x1^6 + x2^6 + t*u^2";
const char* kIndex6Sextic = "u*v*x1 + v^2*x1*x2 + u*x2^3 + v*x1^4 + x1^6 + x2^6 + t*u^2 + t*v^3";

struct Fixture {
  AmbientSpace A;
  Poly F;
};

Fixture fixture(AmbientKind kind, const std::string& s) {
  auto A = AmbientSpace::make(kind, Field::rationals());
  return {A, parse_poly(s, A.ring)};
}

RigidityProfile profile(AmbientKind kind, const std::string& s) {
  auto fx = fixture(kind, s);
  auto m = match_profile(fx.F, fx.A);
  REQUIRE_MESSAGE(m.matched, m.reason);
  return m.profile;
}

std::vector<bool> flag_values(const RigidityProfile& p) {
  std::vector<bool> v;
  for (auto& f : genericity_check(p)) v.push_back(f.value);
  return v;
}

std::string names(const MemberReport& r) {
  std::string s;
  for (auto& p : r.points) s += p.point.to_string() + " " + p.verdict.name() + "; ";
  return s;
}

// Random change respecting the weights: invertible linear map on the weight-one block, scaled heavy
// coordinates, and shifts of heavy coordinates by forms of matching weight.
CoordinateChange random_change(const RingPtr& r, std::mt19937_64& g) {
  Field K = r->field();
  std::uniform_int_distribution<int> c(-3, 3);
  std::vector<int> light, heavy;
  for (int i = 0; i < r->nvars(); ++i) (r->weight(i) == 1 ? light : heavy).push_back(i);
  Matrix M;
  do {
    M = zero_matrix(K, light.size(), light.size());
    for (auto& row : M)
      for (auto& x : row) x = K.from_int(c(g));
  } while (!inverse(M));
  CoordinateChange ch = CoordinateChange::linear(r, light, M);
  auto random_form = [&](int w) {
    Poly f(r);
    std::vector<Exps> mons;
    std::function<void(size_t, int, Exps)> rec = [&](size_t i, int left, Exps e) {
      if (i == light.size()) {
        if (left == 0) mons.push_back(e);
        return;
      }
      for (int d = 0; d <= left; ++d) {
        e[light[i]] = d;
        rec(i + 1, left - d, e);
      }
    };
    rec(0, w, Exps{});
    for (auto& e : mons) f.add_term(e, K.from_int(c(g)));
    return f;
  };
  for (int h : heavy) {
    int scale = 0;
    while (scale == 0) scale = c(g);
    Poly shift = random_form(r->weight(h));
    for (int h2 : heavy)
      if (r->weight(h2) < r->weight(h)) shift += Poly::var(r, h2) * random_form(r->weight(h) - r->weight(h2));
    std::vector<Poly> im, inv;
    for (int i = 0; i < r->nvars(); ++i) im.push_back(Poly::var(r, i)), inv.push_back(Poly::var(r, i));
    Scalar s = K.from_int(scale);
    im[h] = Poly::var(r, h).scaled(s) + shift;
    inv[h] = (Poly::var(r, h) - shift).scaled(s.inverse());
    ch = ch.then(CoordinateChange::from_images(r, im, inv));
  }
  return ch;
}

}  // namespace

TEST_CASE("quadric-pencil quartic matches with smooth transversal conic and k = 1") {
  auto p = profile(AmbientKind::WP2111, kQuadricPencil);
  CHECK(p.d == 2);
  CHECK(p.index == 2);
  CHECK(p.k == 1);
  CHECK(p.pieces.at("Q0").to_string() == "x1*x2 + x3^2");
  auto flags = genericity_check(p);
  REQUIRE(flags.size() == 3);
  for (auto& f : flags) CHECK_MESSAGE(f.value, f.name);
}

TEST_CASE("sextics in P(3,2,1,1) match with index 2, 3 and 6") {
  auto p2 = profile(AmbientKind::WP3211, kIndex2Sextic);
  CHECK(p2.d == 1);
  CHECK(p2.index == 2);
  CHECK(p2.k == 1);
  CHECK(all_generic(genericity_check(p2)));
  auto p3 = profile(AmbientKind::WP3211, kIndex3Sextic);
  CHECK(p3.index == 3);
  CHECK(p3.k == 1);
  CHECK(all_generic(genericity_check(p3)));
  auto p6 = profile(AmbientKind::WP3211, kIndex6Sextic);
  CHECK(p6.index == 6);
  CHECK(p6.k == 1);
  CHECK(p6.s == 1);
  CHECK(all_generic(genericity_check(p6)));
  auto p6b = profile(AmbientKind::WP3211, "u*v*x1 + v^2*x1*x2 + u*x2^3 + v*x1^4 + x1^6 + x2^6 + t*u^2 + t^3*v^3");
  CHECK(p6b.s == 3);
  CHECK_FALSE(all_generic(genericity_check(p6b)));
}

TEST_CASE("completing the square exposes the pieces at t = 0") {
  // u^2 + 2*u*v*x1 + ... is (u + v*x1)^2 - v^2*x1^2 + ...
  auto p = profile(AmbientKind::WP3211, "u^2 + 2*u*v*x1 + v^2*x2^2 + v*x1^4 + x2^6 + t*v^3");
  CHECK(p.index == 2);
  CHECK(p.pieces.at("Q0").to_string() == "-x1^2 + x2^2");
  CHECK(p.change.apply(p.F) == p.normalized);
  CHECK(p.normalized.t_coefficient(0).coeff([] {
    Exps e{};
    e[0] = 1;
    e[1] = 1;
    e[2] = 1;
    return e;
  }()).is_zero());
}

TEST_CASE("Gorenstein and malformed inputs do not match") {
  auto a = fixture(AmbientKind::WP2111, "u^2 + x1^4 + x2^4 + x3^4");
  auto m = match_profile(a.F, a.A);
  CHECK_FALSE(m.matched);
  CHECK(m.reason.find("Gorenstein") != std::string::npos);
  auto b = fixture(AmbientKind::WP3211, "u^2 + v^3 + x1^6 + x2^6");
  CHECK_FALSE(match_profile(b.F, b.A).matched);
  auto c = fixture(AmbientKind::WP2111, "u*x1^2 + x2^4");
  CHECK_FALSE(match_profile(c.F, c.A).matched);
  auto d = fixture(AmbientKind::P3, "x0^3 + x1^3 + x2^3 + x3^3");
  CHECK_FALSE(match_profile(d.F, d.A).matched);
}

TEST_CASE("genericity failures are reported per condition") {
  auto rank1 = profile(AmbientKind::WP2111, "u*x1^2 + x1^4 + x2^4 + x3^4 + t*u^2");
  auto f1 = genericity_check(rank1);
  CHECK_FALSE(f1[0].value);
  CHECK(f1[2].value);
  auto tangent = profile(AmbientKind::WP2111, "u*(x1*x2 + x3^2) + (x1*x2 + x3^2)*(x1^2 + x2^2) + x1^4 + t*u^2");
  auto f2 = genericity_check(tangent);
  CHECK(f2[0].value);
  CHECK_FALSE(f2[1].value);
  auto shared = profile(AmbientKind::WP3211, "u^2 + v^2*x1*x2 + v*x1*(x1^3 + x2^3) + x1*(x1^5 + x2^5) + t*v^3");
  auto f3 = genericity_check(shared);
  CHECK_FALSE(f3[0].value);
  CHECK(f3[1].value);
  auto k2 = profile(AmbientKind::WP2111, "u*(x1*x2 + x3^2) + x1^4 + x2^4 + x3^4 + t^2*u^2");
  CHECK(k2.k == 2);
  auto f4 = genericity_check(k2);
  CHECK(f4[0].value);
  CHECK(f4[1].value);
  CHECK_FALSE(f4[2].value);
}

TEST_CASE("member through a tangency of the conic: A1 at the quotient point and A1 on the chart") {
  auto p = profile(AmbientKind::WP2111, kQuadricPencil);
  auto r = classify_member(p, parse_poly("x3", p.ambient.ring));
  INFO(names(r));
  CHECK(r.all_du_val);
  CHECK(r.summary() == "A1, A1");
  bool quotient_a1 = false;
  for (auto& mp : r.points)
    if (mp.quotient) quotient_a1 = mp.verdict.name() == "A1" && mp.point.to_string() == "(1 : 0 : 0)";
  CHECK(quotient_a1);
  // Q0 restricted to x1 = 0 is the square x3^2: smooth away from the quotient point.
  auto r2 = classify_member(p, parse_poly("x1", p.ambient.ring));
  INFO(names(r2));
  CHECK(r2.summary() == "A1");
  REQUIRE(r2.points.size() == 1);
  CHECK(r2.points[0].quotient);
}

TEST_CASE("quotient points of members in P(3,2,1)") {
  auto p2 = profile(AmbientKind::WP3211, kIndex2Sextic);
  auto r2 = classify_member(p2, parse_poly("x2", p2.ambient.ring));
  INFO(names(r2));
  REQUIRE(r2.points.size() == 1);
  CHECK(r2.points[0].point.to_string() == "(0 : 1 : 0)");
  CHECK(r2.points[0].verdict.name() == "A1");
  auto p3 = profile(AmbientKind::WP3211, kIndex3Sextic);
  auto r3 = classify_member(p3, parse_poly("x1 - 2*x2", p3.ambient.ring));
  CHECK(r3.summary() == "A2");
  auto p6 = profile(AmbientKind::WP3211, kIndex6Sextic);
  auto r6 = classify_member(p6, parse_poly("x2", p6.ambient.ring));
  CHECK(r6.summary() == "A1, A2");
}

TEST_CASE("members with singular generic fiber are rejected") {
  auto p = profile(AmbientKind::WP2111, "u*(x1*x2 + x3^2) + x1^2*x2^2 + x3*(x1^3 + x2^3) + x3^4 + t*u^2");
  CHECK_THROWS_AS(classify_member(p, parse_poly("x3", p.ambient.ring)), DomainError);
  CHECK_THROWS_AS(classify_member(p, parse_poly("u", p.ambient.ring)), DomainError);
}

TEST_CASE("sweeps over generic profiles find only Du Val members") {
  for (auto [kind, eq] : {std::pair{AmbientKind::WP2111, kQuadricPencil}, std::pair{AmbientKind::WP3211, kIndex2Sextic}}) {
    auto p = profile(kind, eq);
    SweepOptions opt;
    opt.count = 100;
    opt.seed = 11;
    auto rep = rigidity_sweep(p, opt);
    CHECK(rep.ran);
    CHECK(rep.members == 100);
    CHECK(rep.du_val == 100);
    CHECK(rep.violations.empty());
    CHECK(rep.unresolved.empty());
    CHECK(rep.all_du_val());
  }
  auto p3 = profile(AmbientKind::WP3211, kIndex3Sextic);
  SweepOptions opt;
  opt.count = 30;
  auto rep3 = rigidity_sweep(p3, opt);
  CHECK(rep3.du_val == 30);
}

TEST_CASE("sweep is not run on a non-generic profile") {
  auto k2 = profile(AmbientKind::WP2111, "u*(x1*x2 + x3^2) + x1^4 + x2^4 + x3^4 + t^2*u^2");
  auto rep = rigidity_sweep(k2);
  CHECK_FALSE(rep.ran);
  CHECK(rep.members == 0);
  CHECK(rep.reason.find("k = 1 fails") != std::string::npos);
}

TEST_CASE("sweeps are deterministic for a seed") {
  auto p = profile(AmbientKind::WP3211, kIndex2Sextic);
  SweepOptions opt;
  opt.count = 20;
  opt.seed = 5;
  auto a = rigidity_sweep(p, opt);
  auto b = rigidity_sweep(p, opt);
  CHECK(a.samples == b.samples);
  opt.seed = 6;
  CHECK(rigidity_sweep(p, opt).samples != a.samples);
}

TEST_CASE("profile exponents and flags survive weight-respecting coordinate changes") {
  std::mt19937_64 g(2024);
  std::vector<std::pair<AmbientKind, std::string>> cases = {
      {AmbientKind::WP2111, kQuadricPencil},
      {AmbientKind::WP2111, "u*x1^2 + x1^4 + x2^4 + x3^4 + t*u^2"},
      {AmbientKind::WP2111, "u*(x1*x2 + x3^2) + x1^4 + x2^4 + x3^4 + t^2*u^2"},
      {AmbientKind::WP3211, kIndex2Sextic},
      {AmbientKind::WP3211, "u^2 + v^2*x1*x2 + v*x1*(x1^3 + x2^3) + x1*(x1^5 + x2^5) + t*v^3"},
      {AmbientKind::WP3211, kIndex3Sextic},
      {AmbientKind::WP3211, kIndex6Sextic},
  };
  for (auto& [kind, eq] : cases) {
    auto p = profile(kind, eq);
    auto flags = flag_values(p);
    for (int trial = 0; trial < 8; ++trial) {
      CoordinateChange ch = random_change(p.ambient.ring, g);
      Poly G = ch.apply(p.F);
      auto m = match_profile(G, p.ambient);
      INFO(eq, " under ", ch.to_string());
      REQUIRE(m.matched);
      CHECK(m.profile.d == p.d);
      CHECK(m.profile.index == p.index);
      CHECK(m.profile.k == p.k);
      CHECK(m.profile.s == p.s);
      CHECK(flag_values(m.profile) == flags);
    }
  }
}
