#include "dvr/rigidity.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

namespace dvr {

namespace {

std::vector<int> light_slots(const RingPtr& r) {
  std::vector<int> out;
  for (int i = 0; i < r->nvars(); ++i)
    if (r->weight(i) == 1) out.push_back(i);
  return out;
}

// Part of the t^m coefficient of F with the prescribed exponents on `fixed` slots, those slots
// removed.
Poly slice(const Poly& F, const std::vector<std::pair<int, int>>& fixed, int m) {
  Poly out(F.ring());
  Poly Fm = F.t_coefficient(m);
  for (auto& [e, c] : Fm.terms()) {
    bool ok = true;
    for (auto [slot, deg] : fixed)
      if (e[slot] != deg) ok = false;
    if (!ok) continue;
    Exps e2 = e;
    for (auto [slot, deg] : fixed) e2[slot] = 0;
    out.add_term(e2, c);
  }
  return out;
}

// t-order of the coefficient of the monomial with the given exponents; -1 when it is absent.
int t_order_of(const Poly& F, const std::vector<std::pair<int, int>>& exps) {
  int best = -1;
  for (auto& [e, c] : F.terms()) {
    bool ok = true;
    for (int i = 0; i < F.ring()->nvars(); ++i) {
      int want = 0;
      for (auto [slot, deg] : exps)
        if (slot == i) want = deg;
      if (e[i] != want) ok = false;
    }
    if (ok && (best < 0 || e[kT] < best)) best = e[kT];
  }
  return best;
}

// No common zero of the forms in the projective space of the weight-one variables.
bool no_common_zero(const std::vector<Poly>& forms, const std::vector<int>& slots) {
  std::vector<Poly> gens;
  for (auto& f : forms)
    if (!f.is_zero()) gens.push_back(f);
  if (gens.empty()) return false;
  return groebner(gens, slots).dimension() <= 0;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

ProfileMatch no_match(std::string why) {
  ProfileMatch m;
  m.reason = std::move(why);
  return m;
}

ProfileMatch match_d2(const Poly& F, const AmbientSpace& A) {
  const RingPtr& r = A.ring;
  int k = t_order_of(F, {{0, 2}});
  if (k < 0) return no_match("no u^2 term");
  if (k == 0) return no_match("u^2 has a unit coefficient: Gorenstein (index 1)");
  RigidityProfile p;
  p.d = 2;
  p.index = 2;
  p.k = k;
  p.shape = "uQ+G+t^k u^2";
  p.ambient = A;
  p.F = F;
  p.change = CoordinateChange::identity(r);
  p.normalized = F;
  p.pieces["Q0"] = slice(F, {{0, 1}}, 0);
  p.pieces["G0"] = slice(F, {{0, 0}}, 0);
  ProfileMatch m;
  m.matched = true;
  m.profile = std::move(p);
  return m;
}

ProfileMatch match_d1(const Poly& F, const AmbientSpace& A) {
  const RingPtr& r = A.ring;
  Field K = r->field();
  const int U = 0, V = 1;
  int a = t_order_of(F, {{U, 2}});
  int b = t_order_of(F, {{V, 3}});
  if (a < 0) return no_match("no u^2 term");
  if (b < 0) return no_match("no v^3 term");
  if (a == 0 && b == 0) return no_match("u^2 and v^3 have unit coefficients: Gorenstein (index 1)");
  RigidityProfile p;
  p.d = 1;
  p.ambient = A;
  p.F = F;
  std::vector<Poly> im, inv;
  for (int i = 0; i < r->nvars(); ++i) im.push_back(Poly::var(r, i)), inv.push_back(Poly::var(r, i));
  if (a == 0) {
    p.index = 2;
    p.k = b;
    p.shape = "u^2+v^2Q+vG+H+t^k v^3";
    // Complete the square at t = 0.
    Exps e{};
    e[U] = 2;
    Scalar a0 = F.coeff(e);
    Poly P = slice(F, {{U, 1}}, 0).scaled(a0.inverse() / K.from_int(2));
    im[U] = Poly::var(r, U) - P;
    inv[U] = Poly::var(r, U) + P;
  } else if (b == 0) {
    p.index = 3;
    p.k = a;
    p.shape = "uvL+uC+v^3+vG+H+t^k u^2";
    Exps e{};
    e[V] = 3;
    Scalar b0 = F.coeff(e);
    Poly Q0 = slice(F, {{U, 0}, {V, 2}}, 0).scaled(b0.inverse() / K.from_int(3));
    im[V] = Poly::var(r, V) - Q0;
    inv[V] = Poly::var(r, V) + Q0;
  } else {
    p.index = 6;
    p.k = a;
    p.s = b;
    p.shape = "uvL+v^2Q+uC+vG+H+t^k u^2+t^s v^3";
    p.note = "the second exponent is read as the v^3 coefficient";
  }
  p.change = CoordinateChange::from_images(r, im, inv);
  p.normalized = p.change.apply(F);
  const Poly& N = p.normalized;
  if (p.index == 2) {
    p.pieces["Q0"] = slice(N, {{U, 0}, {V, 2}}, 0);
    p.pieces["G0"] = slice(N, {{U, 0}, {V, 1}}, 0);
    p.pieces["H0"] = slice(N, {{U, 0}, {V, 0}}, 0);
  } else {
    p.pieces["L0"] = slice(N, {{U, 1}, {V, 1}}, 0);
    p.pieces["C0"] = slice(N, {{U, 1}, {V, 0}}, 0);
    p.pieces["G0"] = slice(N, {{U, 0}, {V, 1}}, 0);
    p.pieces["H0"] = slice(N, {{U, 0}, {V, 0}}, 0);
    if (p.index == 6) p.pieces["Q0"] = slice(N, {{U, 0}, {V, 2}}, 0);
  }
  ProfileMatch m;
  m.matched = true;
  m.profile = std::move(p);
  return m;
}

// Quotient singularity of B at a coordinate point of a heavy slot, from the covering germ.
std::optional<SurfaceGermVerdict> quotient_point(const Poly& B, int slot, std::string& note) {
  const RingPtr& r = B.ring();
  Field K = r->field();
  std::vector<Scalar> coords(r->nvars(), K.zero());
  coords[slot] = K.one();
  FiberPoint pt = rational_point(r, coords);
  pt.vertex = true;
  LocalGerm g = local_equation(B, pt);
  if (g.f.is_zero()) throw DomainError("member contains a quotient point of the ambient with multiplicity");
  int ord = g.f.order_at_origin();
  if (ord == 0) return std::nullopt;
  int rr = r->weight(slot);
  const RingPtr& S = g.f.ring();
  std::vector<int> w;
  for (int i = 0; i < S->nvars(); ++i) w.push_back(r->weight(r->index(S->name(i))) % rr);
  w.push_back(0);  // t
  if (ord >= 2) throw Unresolved("singular cover at the quotient point " + pt.to_string());
  int cls = -1;
  Poly lin = g.f.initial_part(1);
  for (auto& [e, c] : lin.terms())
    for (int i = 0; i < S->nvars(); ++i)
      if (e[i]) cls = w[i];
  if (cls < 0) cls = 0;
  auto it = std::find(w.begin(), w.end(), cls);
  w.erase(it);
  SurfaceGermVerdict v;
  std::ostringstream os;
  os << "1/" << rr << "(" << w[0] << "," << w[1] << ")";
  if (w[0] == 0 || w[1] == 0) {
    v.family = AdeFamily::Smooth;
    note = "smooth quotient " + os.str();
  } else if ((w[0] + w[1]) % rr == 0) {
    v.family = AdeFamily::A;
    v.index = rr - 1;
    note = "cyclic quotient " + os.str();
  } else {
    v.family = AdeFamily::NotDuVal;
    v.reason = "cyclic quotient " + os.str() + " is not in SL2";
    note = v.reason;
  }
  return v;
}

}  // namespace

ProfileMatch match_profile(const Poly& F, const AmbientSpace& A) {
  if (!F.ring()->same_as(*A.ring)) return no_match("equation is not in the ambient ring");
  if (F.is_zero() || !F.is_homogeneous()) return no_match("equation is not weighted homogeneous");
  if (A.kind == AmbientKind::WP2111) {
    if (F.weighted_degree() != 4) return no_match("weighted degree is not 4");
    return match_d2(F, A);
  }
  if (A.kind == AmbientKind::WP3211) {
    if (F.weighted_degree() != 6) return no_match("weighted degree is not 6");
    return match_d1(F, A);
  }
  return no_match("ambient is neither P(2,1,1,1) nor P(3,2,1,1)");
}

std::vector<GenericityFlag> genericity_check(const RigidityProfile& p) {
  std::vector<GenericityFlag> out;
  auto slots = light_slots(p.ambient.ring);
  auto piece = [&](const char* n) {
    auto it = p.pieces.find(n);
    return it == p.pieces.end() ? Poly(p.ambient.ring) : it->second;
  };
  if (p.d == 2) {
    Poly Q0 = piece("Q0"), G0 = piece("G0");
    bool smooth = is_smooth_conic(Q0);
    out.push_back({"conic Q0 smooth", smooth, "Q0 = " + Q0.to_string()});
    std::vector<Poly> gens = {Q0, G0};
    for (size_t i = 0; i < slots.size(); ++i)
      for (size_t j = i + 1; j < slots.size(); ++j)
        gens.push_back(Q0.derivative(slots[i]) * G0.derivative(slots[j]) -
                       Q0.derivative(slots[j]) * G0.derivative(slots[i]));
    bool transversal = no_common_zero(gens, slots);
    out.push_back({"Q0 meets G0 transversally", transversal,
                   transversal ? "no tangency point" : "Q0 = G0 = 0 has a tangency or singular point"});
    out.push_back({"k = 1", p.k == 1, "k = " + std::to_string(p.k)});
    return out;
  }
  std::vector<std::string> names;
  if (p.index == 2) names = {"Q0", "G0", "H0"};
  else if (p.index == 3) names = {"L0", "C0", "G0", "H0"};
  else names = {"L0", "Q0", "C0", "G0", "H0"};
  std::vector<Poly> forms;
  for (auto& n : names) forms.push_back(piece(n.c_str()));
  bool ok = no_common_zero(forms, slots);
  out.push_back({join(names) + " have no common zero", ok, ok ? "" : "common zero in P1"});
  if (p.index == 6)
    out.push_back({"k = s = 1", p.k == 1 && p.s == 1, "k = " + std::to_string(p.k) + ", s = " + std::to_string(p.s)});
  else
    out.push_back({"k = 1", p.k == 1, "k = " + std::to_string(p.k)});
  return out;
}

bool all_generic(const std::vector<GenericityFlag>& flags) {
  return std::all_of(flags.begin(), flags.end(), [](const GenericityFlag& f) { return f.value; });
}

std::string MemberReport::summary() const {
  std::vector<std::string> v;
  for (auto& p : points)
    if (p.verdict.family != AdeFamily::Smooth)
      for (int i = 0; i < p.point.orbit_size; ++i) v.push_back(p.verdict.name());
  std::sort(v.begin(), v.end());
  return v.empty() ? "smooth" : join(v);
}

MemberReport classify_member(const RigidityProfile& p, const Poly& hyperplane, uint64_t seed,
                             const SurfaceGermOptions& opt) {
  const RingPtr& r = p.ambient.ring;
  auto slots = light_slots(r);
  if (!hyperplane.ring()->same_as(*r)) throw DomainError("hyperplane is not in the ambient ring");
  std::map<int, Scalar> c;
  for (auto& [e, v] : hyperplane.terms()) {
    int which = -1;
    for (int s : slots)
      if (e[s] == 1 && geo_degree(e) == 1 && e[kT] == 0) which = s;
    if (which < 0) throw DomainError("hyperplane must be a linear form in the weight-one variables");
    c[which] = v;
  }
  if (c.empty()) throw DomainError("zero hyperplane");
  int j = c.rbegin()->first;
  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i = 0; i < r->nvars(); ++i)
    if (i != j) names.push_back(r->name(i)), weights.push_back(r->weight(i));
  RingPtr S = Ring::make(r->field(), names, weights);
  std::vector<Poly> im;
  int pos = 0;
  for (int i = 0; i < r->nvars(); ++i) {
    if (i == j) {
      im.push_back(Poly(S));
      continue;
    }
    im.push_back(Poly::var(S, pos++));
  }
  Poly xj(S);
  for (auto& [s, v] : c)
    if (s != j) xj -= im[s].scaled(v / c[j]);
  im[j] = xj;
  MemberReport rep;
  rep.hyperplane = hyperplane;
  rep.surface = p.F.compose(im, Poly::t(S));
  const Poly& B = rep.surface;
  if (B.special_fiber().is_zero()) throw DomainError("member contains the special fiber");
  if (!generic_fiber_smooth(B, seed)) throw DomainError("member rejected: generic fiber of B is singular");
  AmbientSpace AB;
  AB.kind = p.ambient.kind;
  AB.ring = S;
  SingularLocus sl = singular_locus(B, AB);
  if (sl.contains_curve) throw DomainError("member rejected: B is singular along a curve");
  for (auto& pt : sl.points) {
    if (pt.vertex) continue;
    MemberPoint mp;
    mp.point = pt;
    mp.verdict = classify_surface_germ(local_equation(B, pt).f, opt);
    rep.points.push_back(mp);
  }
  for (int i = 0; i < S->nvars(); ++i) {
    if (S->weight(i) == 1) continue;
    std::string note;
    auto v = quotient_point(B, i, note);
    if (!v) continue;
    MemberPoint mp;
    std::vector<Scalar> coords(S->nvars(), S->field().zero());
    coords[i] = S->field().one();
    mp.point = rational_point(S, coords);
    mp.point.vertex = true;
    mp.verdict = *v;
    mp.quotient = true;
    mp.note = note;
    rep.points.push_back(mp);
  }
  for (auto& mp : rep.points)
    if (mp.verdict.family == AdeFamily::NotDuVal) rep.all_du_val = false;
  return rep;
}

SweepReport rigidity_sweep(const RigidityProfile& p, const SweepOptions& opt) {
  SweepReport rep;
  auto flags = genericity_check(p);
  if (!all_generic(flags)) {
    std::vector<std::string> failed;
    for (auto& f : flags)
      if (!f.value) failed.push_back(f.name + " fails (" + f.detail + ")");
    rep.reason = "profile is not generic: " + join(failed);
    return rep;
  }
  rep.ran = true;
  const RingPtr& r = p.ambient.ring;
  auto slots = light_slots(r);
  Field K = r->field();
  std::mt19937_64 g(opt.seed);
  std::uniform_int_distribution<int> coef(-opt.box, opt.box);
  struct Verdict {
    enum Kind { DuVal, NotDuVal, Rejected, Unresolved } kind = DuVal;
    std::string detail;
  };
  std::unordered_map<std::string, Verdict> cache;
  int attempts = 0;
  while (rep.members < opt.count) {
    if (++attempts > 20 * opt.count + 100) throw Unresolved("too many rejected members");
    Poly h(r);
    for (int s : slots) h += Poly::var(r, s).scaled(K.from_int(coef(g)));
    if (h.is_zero()) continue;
    std::string key = h.monic().to_string();
    auto it = cache.find(key);
    if (it == cache.end()) {
      Verdict res;
      try {
        MemberReport m = classify_member(p, h, opt.seed, opt.germ);
        res = {m.all_du_val ? Verdict::DuVal : Verdict::NotDuVal, m.summary()};
      } catch (const DomainError&) {
        res = {Verdict::Rejected, ""};
      } catch (const Unresolved& e) {
        res = {Verdict::Unresolved, e.what()};
      }
      it = cache.emplace(key, res).first;
    }
    if (it->second.kind == Verdict::Rejected) {
      ++rep.rejected;
      continue;
    }
    ++rep.members;
    if (it->second.kind == Verdict::DuVal) ++rep.du_val;
    else if (it->second.kind == Verdict::NotDuVal) rep.violations.push_back(h.to_string() + ": " + it->second.detail);
    else rep.unresolved.push_back(h.to_string() + ": " + it->second.detail);
    rep.samples.emplace_back(h.to_string(), it->second.detail);
  }
  return rep;
}

}  // namespace dvr
