#include "dvr/fibergeom.hpp"

#include <algorithm>
#include <random>

namespace dvr {

namespace {

Poly var(const RingPtr& r, int s) { return Poly::var(r, s); }

Scalar constant_term(const Poly& p) {
  Exps z{};
  return p.coeff(z);
}

Matrix hessian(const Poly& q, const std::vector<int>& slots) {
  Matrix H = zero_matrix(q.field(), slots.size(), slots.size());
  for (size_t i = 0; i < slots.size(); ++i)
    for (size_t j = 0; j < slots.size(); ++j) H[i][j] = constant_term(q.derivative(slots[i]).derivative(slots[j]));
  return H;
}

std::vector<int> weight_one(const RingPtr& r) {
  std::vector<int> s;
  for (int i = 0; i < r->nvars(); ++i)
    if (r->weight(i) == 1) s.push_back(i);
  return s;
}

// Restriction of a form to the line P + s Q, as a polynomial in s.
UPoly restrict_line(const Poly& F, const std::vector<Scalar>& P, const std::vector<Scalar>& Q) {
  RingPtr S = Ring::make(F.field(), {"s"});
  std::vector<Poly> im;
  for (size_t i = 0; i < P.size(); ++i) im.push_back(Poly::constant(S, P[i]) + Poly::var(S, 0).scaled(Q[i]));
  return to_upoly(F.compose(im), 0);
}

std::vector<Scalar> random_vector(Field K, size_t n, std::mt19937_64& g) {
  std::vector<Scalar> v;
  for (size_t i = 0; i < n; ++i) v.push_back(K.from_int(static_cast<long>(g() % 7) - 3));
  return v;
}

bool proportional(const Poly& a, const Poly& b) { return a.monic() == b.monic(); }

}  // namespace

UPoly to_upoly(const Poly& p, int slot) {
  std::vector<Scalar> c;
  for (auto& [e, v] : p.terms()) {
    for (int s = 0; s < kSlots; ++s)
      if (s != slot && e[s]) throw Error("to_upoly: polynomial is not univariate");
    size_t d = e[slot];
    if (c.size() <= d) c.resize(d + 1, p.field().zero());
    c[d] = v;
  }
  return UPoly(p.field(), c);
}

bool is_smooth_conic(const Poly& q) {
  if (q.is_zero() || q.uses(kT)) return false;
  for (auto& [e, c] : q.terms())
    if (geo_degree(e) != 2) return false;
  auto slots = weight_one(q.ring());
  for (auto& [e, c] : q.terms())
    for (int s = 0; s < q.ring()->nvars(); ++s)
      if (e[s] && q.ring()->weight(s) != 1) return false;
  if (slots.size() != 3) return false;
  return !determinant(hessian(q, slots)).is_zero();
}

CoordinateChange change_making_first(const RingPtr& r, const std::vector<int>& slots, const Poly& l) {
  Field K = r->field();
  size_t m = slots.size();
  Row c(m, K.zero());
  for (auto& [e, v] : l.terms())
    for (size_t i = 0; i < m; ++i)
      if (e[slots[i]]) c[i] = v;
  size_t j = 0;
  while (j < m && c[j].is_zero()) ++j;
  if (j == m) throw DomainError("zero linear form");
  Matrix T = zero_matrix(K, m, m);
  T[0] = c;
  size_t row = 1;
  for (size_t i = 0; i < m; ++i)
    if (i != j) T[row++][i] = K.one();
  return CoordinateChange::linear(r, slots, *dvr::inverse(T));
}

CoordinateChange change_moving_point_to_last(const RingPtr& r, const std::vector<int>& slots,
                                             const std::vector<Scalar>& p) {
  Field K = r->field();
  size_t m = slots.size();
  size_t k = m;
  for (size_t i = 0; i < m; ++i)
    if (!p[i].is_zero()) k = i;
  if (k == m) throw DomainError("the zero vector is not a point");
  Matrix T = zero_matrix(K, m, m);
  size_t col = 0;
  for (size_t i = 0; i < m; ++i)
    if (i != k) T[i][col++] = K.one();
  for (size_t i = 0; i < m; ++i) T[i][m - 1] = p[i];
  return CoordinateChange::linear(r, slots, T);
}

std::optional<PlaneTriple> find_plane_triple(const Poly& F0, uint64_t seed) {
  const RingPtr& r = F0.ring();
  if (r->nvars() != 4 || F0.total_degree() != 3 || F0.uses(kT)) return std::nullopt;
  Field K = r->field();
  std::mt19937_64 g(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto P = random_vector(K, 4, g), Q = random_vector(K, 4, g);
    UPoly b = restrict_line(F0, P, Q);
    if (b.degree() != 3) continue;
    auto fs = factor(b);
    if (fs.size() != 1 || fs[0].poly.degree() != 3) continue;
    Adjoined a1 = adjoin_root(fs[0].poly);
    RingPtr R1 = r->with_field(a1.emb.to);
    Poly G = F0.map_field(a1.emb, R1);
    auto lf = linear_factors(G);
    if (lf.empty()) return std::nullopt;
    Embedding emb = a1.emb;
    std::vector<Poly> planes;
    int total = 0;
    for (auto& f : lf) total += f.mult;
    if (total == 3) {
      for (auto& f : lf)
        for (int i = 0; i < f.mult; ++i) planes.push_back(f.poly);
    } else {
      Poly q(R1);
      if (!divides(lf[0].poly, G, &q)) return std::nullopt;
      bool done = false;
      for (int a2 = 0; a2 < 8 && !done; ++a2) {
        auto P2 = random_vector(a1.emb.to, 4, g), Q2 = random_vector(a1.emb.to, 4, g);
        UPoly b2 = restrict_line(q, P2, Q2);
        if (b2.degree() != 2) continue;
        auto f2 = factor(b2);
        if (f2.size() != 1 || f2[0].poly.degree() != 2) continue;
        Adjoined ad2 = adjoin_root(f2[0].poly);
        RingPtr R2 = r->with_field(ad2.emb.to);
        auto lq = linear_factors(q.map_field(ad2.emb, R2));
        int tq = 0;
        for (auto& f : lq) tq += f.mult;
        if (tq != 2) return std::nullopt;
        planes = {lf[0].poly.map_field(ad2.emb, R2)};
        for (auto& f : lq)
          for (int i = 0; i < f.mult; ++i) planes.push_back(f.poly);
        emb = a1.emb.then(ad2.emb);
        done = true;
      }
      if (!done) return std::nullopt;
    }
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = i + 1; j < 3; ++j)
        if (proportional(planes[i], planes[j])) return std::nullopt;
    Poly prod = planes[0] * planes[1] * planes[2];
    if (!proportional(prod, F0.map_field(emb, planes[0].ring()))) return std::nullopt;
    return PlaneTriple{emb, planes};
  }
  return std::nullopt;
}

FiberReport fiber_report(const Poly& F, const AmbientSpace& A) {
  check_same_ring(F, Poly(A.ring));
  Poly F0 = F.special_fiber();
  if (F0.is_zero()) throw DomainError("special fiber vanishes (non-flat input)");
  FiberReport rep;
  rep.components = factor_over_k(F0);
  rep.n_components = static_cast<int>(rep.components.size());
  for (auto& c : rep.components) {
    if (c.mult > 1) rep.reduced = false;
    if (c.poly.weighted_degree() == 1) rep.planes_over_k.push_back(c.poly);
  }
  if (A.kind == AmbientKind::P3 && rep.n_components == 1 && rep.reduced && F0.total_degree() == 3)
    rep.geometric_plane_triple = find_plane_triple(F0);
  return rep;
}

int multiplicity_along(const Poly& F, const Center& c, const AmbientSpace& A) {
  StandardCenter st = move_center_to_standard(c, A);
  Poly Fp = st.change.apply(F);
  int mu = INT_MAX;
  for (auto& [e, v] : Fp.terms()) {
    int d = e[kT];
    for (int s : st.slots) d += e[s];
    mu = std::min(mu, d);
  }
  return mu == INT_MAX ? 0 : mu;
}

int generic_multiplicity_along_plane(const Poly& F, const Center& plane, const AmbientSpace& A) {
  if (plane.kind != CenterKind::Plane) throw DomainError("expected a plane");
  return multiplicity_along(F, plane, A);
}

int generic_multiplicity_along_line(const Poly& F, const Center& line, const AmbientSpace& A) {
  if (line.kind != CenterKind::Line) throw DomainError("expected a line");
  return multiplicity_along(F, line, A);
}

std::string FiberPoint::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); ++i) s += (i ? " : " : "") + coords[i].to_string();
  s += ")";
  if (orbit_size > 1) s += " [orbit of " + std::to_string(orbit_size) + " over " + emb.to.to_string() + "]";
  return s;
}

FiberPoint rational_point(const RingPtr& r, const std::vector<Scalar>& coords) {
  FiberPoint p;
  p.emb = Embedding::identity(r->field());
  p.coords = coords;
  int j = -1;
  for (int i = 0; i < r->nvars(); ++i)
    if (r->weight(i) == 1 && !coords[i].is_zero()) j = i;
  p.vertex = j < 0;
  return p;
}

LocalGerm local_equation(const Poly& F, const FiberPoint& p) {
  const RingPtr& r = F.ring();
  Field L = p.emb.to;
  RingPtr RL = r->with_field(L);
  Poly G = F.map_field(p.emb, RL);
  int n = r->nvars();
  int j = -1;
  for (int i = 0; i < n; ++i)
    if (r->weight(i) == 1 && !p.coords[i].is_zero()) j = i;
  LocalGerm out;
  if (j < 0) {
    for (int i = 0; i < n; ++i)
      if (!p.coords[i].is_zero()) j = i;
    if (j < 0) throw DomainError("the zero vector is not a point");
    for (int i = 0; i < n; ++i)
      if (i != j && !p.coords[i].is_zero()) throw DomainError("unsupported point on a weighted stratum");
    out.quotient_chart = true;
  }
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    if (i != j) names.push_back(r->name(i));
  RingPtr S = Ring::make(L, names);
  std::vector<Poly> im;
  Scalar lam = p.coords[j];
  int k = 0;
  for (int i = 0; i < n; ++i) {
    if (i == j) {
      im.push_back(Poly::constant(S, 1));
      continue;
    }
    Scalar c = out.quotient_chart ? L.zero() : p.coords[i] / lam.pow(r->weight(i));
    im.push_back(Poly::var(S, k++) + Poly::constant(S, c));
  }
  out.f = G.compose(im, Poly::t(S));
  return out;
}

int multiplicity_at_point(const Poly& F, const FiberPoint& p) {
  LocalGerm g = local_equation(F, p);
  if (g.f.is_zero()) throw DomainError("equation vanishes identically near the point");
  int m = g.f.order_at_origin();
  if (m == 0) throw DomainError("point does not lie on X");
  return m;
}

SingularLocus singular_locus(const Poly& F, const AmbientSpace& A) {
  check_same_ring(F, Poly(A.ring));
  const RingPtr& r = A.ring;
  int n = r->nvars();
  Poly F0 = F.special_fiber();
  if (F0.is_zero()) throw DomainError("special fiber vanishes (non-flat input)");
  std::vector<Poly> gens = {F0};
  for (int i = 0; i < n; ++i) gens.push_back(F0.derivative(i));
  gens.push_back(F.t_coefficient(1));
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Poly& p) { return p.is_zero(); }), gens.end());
  std::vector<int> vars;
  for (int i = 0; i < n; ++i) vars.push_back(i);
  SingularLocus out;
  GroebnerBasis GB = groebner(gens, vars);
  int d = GB.dimension();
  if (d >= 2) {
    out.contains_curve = true;
    out.witness = GB.basis;
    return out;
  }
  if (d < 1) return out;
  auto ws = weight_one(r);
  std::vector<int> heavy;
  for (int i = 0; i < n; ++i)
    if (r->weight(i) != 1) heavy.push_back(i);
  Field K = r->field();
  for (size_t idx = 0; idx < ws.size(); ++idx) {
    int j = ws[idx];
    std::vector<Poly> im;
    std::vector<int> free;
    for (int i = 0; i < n; ++i) {
      auto pos = std::find(ws.begin(), ws.end(), i);
      bool zeroed = pos != ws.end() && static_cast<size_t>(pos - ws.begin()) < idx;
      if (i == j) im.push_back(Poly::constant(r, 1));
      else if (zeroed) im.push_back(Poly(r));
      else {
        im.push_back(var(r, i));
        free.push_back(i);
      }
    }
    std::vector<Poly> g2;
    for (auto& g : gens) {
      Poly h = g.compose(im);
      if (!h.is_zero()) g2.push_back(h);
    }
    auto make_point = [&](const Embedding& emb, const std::vector<Scalar>& sol, int orbit) {
      FiberPoint p;
      p.emb = emb;
      p.orbit_size = orbit;
      Field L = emb.to;
      p.coords.assign(n, L.zero());
      p.coords[j] = L.one();
      for (size_t f = 0; f < free.size(); ++f) p.coords[free[f]] = sol[f];
      out.points.push_back(p);
    };
    if (free.empty()) {
      if (g2.empty()) make_point(Embedding::identity(K), {}, 1);
      continue;
    }
    if (g2.empty()) throw Unresolved("singular locus: unexpected positive-dimensional stratum");
    for (auto& orb : solve_zero_dim(g2, free)) make_point(orb.emb, orb.coords, orb.orbit_size);
  }
  // Stratum where every weight-one coordinate vanishes: only coordinate points are supported.
  for (size_t hi = 0; hi < heavy.size(); ++hi) {
    std::vector<Poly> im;
    std::vector<int> free;
    for (int i = 0; i < n; ++i) {
      auto pos = std::find(heavy.begin(), heavy.end(), i);
      if (pos == heavy.end() || pos < heavy.begin() + hi) im.push_back(Poly(r));
      else if (i == heavy[hi]) im.push_back(Poly::constant(r, 1));
      else {
        im.push_back(var(r, i));
        free.push_back(i);
      }
    }
    std::vector<Poly> g2;
    for (auto& g : gens) {
      Poly h = g.compose(im);
      if (!h.is_zero()) g2.push_back(h);
    }
    bool at_coordinate_point = g2.empty();
    if (!free.empty()) {
      if (g2.empty()) throw Unresolved("singular locus: positive-dimensional heavy stratum");
      for (auto& orb : solve_zero_dim(g2, free)) {
        bool zero = std::all_of(orb.coords.begin(), orb.coords.end(), [](const Scalar& c) { return c.is_zero(); });
        if (!zero) throw Unresolved("singular point on a stratum of several heavy coordinates");
        at_coordinate_point = true;
      }
    }
    if (at_coordinate_point) {
      FiberPoint p;
      p.emb = Embedding::identity(K);
      p.coords.assign(n, K.zero());
      p.coords[heavy[hi]] = K.one();
      p.vertex = true;
      out.points.push_back(p);
    }
  }
  return out;
}

ExceptionalEvidence exceptional_pattern_check(const Poly& F, const AmbientSpace& A) {
  ExceptionalEvidence ev;
  if (A.kind != AmbientKind::P3) {
    ev.reason = "exceptional models are cubic models in P3";
    return ev;
  }
  FiberReport fr = fiber_report(F, A);
  if (!fr.planes_over_k.empty()) {
    ev.reason = "special fiber contains a k-rational plane";
    return ev;
  }
  if (fr.n_components != 1 || !fr.reduced) {
    ev.reason = "special fiber is not reduced and k-irreducible";
    return ev;
  }
  if (!fr.geometric_plane_triple) {
    ev.reason = "geometric special fiber is not a union of three planes";
    return ev;
  }
  ev.conjugate_planes = true;
  ev.triple = fr.geometric_plane_triple;
  const RingPtr& r = A.ring;
  Field K = r->field();
  Poly F0 = F.special_fiber();
  Matrix M;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Poly l = F0.derivative(i).derivative(j);
      Row row(4, K.zero());
      for (auto& [e, c] : l.terms())
        for (int s = 0; s < 4; ++s)
          if (e[s]) row[s] = c;
      M.push_back(row);
    }
  auto ns = nullspace(M, 4);
  if (ns.size() != 1) {
    ev.reason = "the three planes do not meet in a single point";
    return ev;
  }
  Row p = ns[0];
  size_t first = 0;
  while (p[first].is_zero()) ++first;
  Scalar inv = p[first].inverse();
  for (auto& x : p) x *= inv;
  ev.triple_point = rational_point(r, p);
  const Embedding& emb = ev.triple->emb;
  Field E = emb.to;
  RingPtr RE = r->with_field(E);
  RingPtr line = Ring::make(E, {"s", "r"});
  Poly F1 = F.t_coefficient(1).map_field(emb, RE);
  std::vector<Poly> checks = {F1};
  for (int i = 0; i < 4; ++i) checks.push_back(F0.derivative(i).map_field(emb, RE));
  bool sing = true;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      Matrix L2 = zero_matrix(E, 2, 4);
      for (int k = 0; k < 2; ++k)
        for (auto& [e, c] : ev.triple->planes[k == 0 ? a : b].terms())
          for (int s = 0; s < 4; ++s)
            if (e[s]) L2[k][s] = c;
      auto basis = nullspace(L2, 4);
      if (basis.size() != 2) {
        sing = false;
        continue;
      }
      std::vector<Poly> im;
      for (int s = 0; s < 4; ++s)
        im.push_back(Poly::var(line, 0).scaled(basis[0][s]) + Poly::var(line, 1).scaled(basis[1][s]));
      for (auto& c : checks)
        if (!c.compose(im).is_zero()) sing = false;
    }
  ev.singular_along_c = sing;
  int mu = 0;
  try {
    mu = multiplicity_at_point(F, *ev.triple_point);
  } catch (const DomainError&) {
    mu = 0;
  }
  ev.double_triple_point = mu == 2;
  ev.result = ev.conjugate_planes && ev.singular_along_c && ev.double_triple_point;
  if (!ev.singular_along_c) ev.reason = "X is not singular along the pairwise intersections";
  else if (!ev.double_triple_point) ev.reason = "multiplicity at the triple point is " + std::to_string(mu);
  return ev;
}

std::string quartic_case_name(QuarticCase c) {
  switch (c) {
    case QuarticCase::UFactor: return "u-factor";
    case QuarticCase::LinearFactor: return "linear-factor";
    case QuarticCase::TwoSmoothConics: return "two-smooth-conics";
    case QuarticCase::GorensteinDoubleLine: return "gorenstein-double-line";
    case QuarticCase::Index2Line: return "index2-line";
    case QuarticCase::Normal: return "normal";
    case QuarticCase::Unclassified: return "unclassified";
  }
  return "";
}

namespace {

bool is_wp2111(const RingPtr& r) { return r->weights() == std::vector<int>{2, 1, 1, 1}; }

int surface_sing_dim(const Poly& F0) {
  std::vector<Poly> gens = {F0};
  for (int i = 0; i < F0.ring()->nvars(); ++i) {
    Poly d = F0.derivative(i);
    if (!d.is_zero()) gens.push_back(d);
  }
  std::vector<int> vars;
  for (int i = 0; i < F0.ring()->nvars(); ++i) vars.push_back(i);
  return groebner(gens, vars).dimension();
}

// Coefficient of u^k (slot 0) as a polynomial in the other variables.
Poly u_coefficient(const Poly& F, int k) {
  Poly o(F.ring());
  for (auto& [e, c] : F.terms())
    if (e[0] == k) {
      Exps g = e;
      g[0] = 0;
      o.add_term(g, c);
    }
  return o;
}

CoordinateChange u_shift(const RingPtr& r, const Scalar& a, const Poly& q) {
  // u = (u' - q) / a, u' = a u + q
  CoordinateChange c = CoordinateChange::identity(r);
  c.images[0] = (var(r, 0) - q).scaled(a.inverse());
  c.inverse[0] = var(r, 0).scaled(a) + q;
  return c;
}

std::optional<std::vector<Scalar>> rational_common_singular_point(const Poly& Q, const Poly& G) {
  const RingPtr& r = Q.ring();
  Field K = r->field();
  std::vector<Poly> gens;
  for (int i = 1; i <= 3; ++i)
    for (auto* p : {&Q, &G}) {
      Poly d = p->derivative(i);
      if (!d.is_zero()) gens.push_back(d);
    }
  if (!G.is_zero()) gens.push_back(G);
  for (int j = 1; j <= 3; ++j) {
    std::vector<Poly> im = {Poly(r)};
    std::vector<int> free;
    for (int i = 1; i <= 3; ++i) {
      if (i < j) im.push_back(Poly(r));
      else if (i == j) im.push_back(Poly::constant(r, 1));
      else {
        im.push_back(var(r, i));
        free.push_back(i);
      }
    }
    std::vector<Poly> g2;
    for (auto& g : gens) {
      Poly h = g.compose(im);
      if (!h.is_zero()) g2.push_back(h);
    }
    std::vector<Scalar> pt(3, K.zero());
    pt[j - 1] = K.one();
    if (free.empty()) {
      if (g2.empty()) return pt;
      continue;
    }
    if (g2.empty()) {
      return pt;
    }
    std::vector<SolutionOrbit> sols;
    try {
      sols = solve_zero_dim(g2, free);
    } catch (const Unresolved&) {
      continue;
    }
    for (auto& s : sols)
      if (s.rational()) {
        for (size_t f = 0; f < free.size(); ++f) pt[free[f] - 1] = s.coords[f];
        return pt;
      }
  }
  return std::nullopt;
}

}  // namespace

QuarticNormalForm quartic_normal_form(const Poly& F) {
  const RingPtr& r = F.ring();
  if (!is_wp2111(r)) throw DomainError("quartic normal forms live in P(2,1,1,1)");
  QuarticNormalForm nf;
  nf.change = CoordinateChange::identity(r);
  Poly F0 = F.special_fiber();
  if (F0.is_zero()) throw DomainError("special fiber vanishes (non-flat input)");
  auto fs = factor_over_k(F0);
  bool reducible = fs.size() > 1 || fs[0].mult > 1;
  std::vector<int> xs = {1, 2, 3};
  if (reducible) {
    for (auto& f : fs)
      if (f.poly.uses(0) && f.poly.weighted_degree() == 2) {
        Scalar a = u_coefficient(f.poly, 1).lead_coeff();
        Poly q = u_coefficient(f.poly, 0);
        nf.tag = QuarticCase::UFactor;
        nf.change = u_shift(r, a, q);
        return nf;
      }
    for (auto& f : fs)
      if (f.poly.weighted_degree() == 1) {
        nf.tag = QuarticCase::LinearFactor;
        nf.change = change_making_first(r, xs, f.poly);
        return nf;
      }
    bool conics = true;
    for (auto& f : fs)
      if (!is_smooth_conic(f.poly)) conics = false;
    int deg = 0;
    for (auto& f : fs) deg += 2 * f.mult;
    if (conics && deg == 4) {
      nf.tag = QuarticCase::TwoSmoothConics;
      return nf;
    }
    nf.tag = QuarticCase::Unclassified;
    nf.reason = "reducible fiber with no k-rational u-factor, linear factor or pair of smooth conics";
    return nf;
  }
  if (surface_sing_dim(F0) < 2) {
    nf.tag = QuarticCase::Normal;
    return nf;
  }
  Scalar a = u_coefficient(F0, 2).is_zero() ? r->field().zero() : u_coefficient(F0, 2).lead_coeff();
  if (!a.is_zero()) {
    Poly q = u_coefficient(F0, 1);
    CoordinateChange sh = u_shift(r, r->field().one(), q.scaled((a + a).inverse()));
    Poly G = sh.apply(F0) - var(r, 0).pow(2).scaled(a);
    for (auto& f : factor_over_k(G))
      if (f.poly.weighted_degree() == 1 && f.mult >= 2) {
        nf.tag = QuarticCase::GorensteinDoubleLine;
        nf.change = sh.then(change_making_first(r, xs, f.poly));
        return nf;
      }
    nf.tag = QuarticCase::Unclassified;
    nf.reason = "nonnormal Gorenstein fiber whose branch quartic has no k-rational double line";
    return nf;
  }
  Poly Q = u_coefficient(F0, 1), G = u_coefficient(F0, 0);
  auto pt = rational_common_singular_point(Q, G);
  if (pt) {
    nf.tag = QuarticCase::Index2Line;
    nf.change = change_moving_point_to_last(r, xs, *pt);
    return nf;
  }
  nf.tag = QuarticCase::Unclassified;
  nf.reason = "nonnormal index-two fiber without a k-rational common singular point of Q and G";
  return nf;
}

bool verify_quartic_normal_form(const Poly& F, const QuarticNormalForm& nf) {
  Poly F0 = nf.change.apply(F).special_fiber();
  auto all_terms = [&](auto pred) {
    for (auto& [e, c] : F0.terms())
      if (!pred(e)) return false;
    return true;
  };
  switch (nf.tag) {
    case QuarticCase::UFactor: return all_terms([](const Exps& e) { return e[0] >= 1; });
    case QuarticCase::LinearFactor: return all_terms([](const Exps& e) { return e[1] >= 1; });
    case QuarticCase::TwoSmoothConics: {
      auto fs = factor_over_k(F0);
      for (auto& f : fs)
        if (!is_smooth_conic(f.poly)) return false;
      return true;
    }
    case QuarticCase::GorensteinDoubleLine:
      return all_terms([](const Exps& e) { return (e[0] == 2 && geo_degree(e) == 2) || (e[0] == 0 && e[1] >= 2); });
    case QuarticCase::Index2Line:
      return all_terms([](const Exps& e) { return e[0] < 2 && e[1] + e[2] >= 2; });
    case QuarticCase::Normal: return surface_sing_dim(F0) < 2;
    case QuarticCase::Unclassified: return true;
  }
  return false;
}

}  // namespace dvr
