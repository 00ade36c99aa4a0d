#include "dvr/flowchart.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

namespace dvr {

namespace {

Poly var(const RingPtr& r, int s) { return Poly::var(r, s); }

bool nonzero_row(const Row& r) {
  return std::any_of(r.begin(), r.end(), [](const Scalar& c) { return !c.is_zero(); });
}

// k-rational points of V(gens) in the projective space on `slots` (all of weight one).
std::vector<std::vector<Scalar>> projective_rational_points(const std::vector<Poly>& gens, const RingPtr& r,
                                                            const std::vector<int>& slots) {
  Field K = r->field();
  size_t m = slots.size();
  std::vector<std::vector<Scalar>> out;
  for (size_t j = 0; j < m; ++j) {
    std::vector<Poly> im;
    for (int i = 0; i < r->nvars(); ++i) im.push_back(var(r, i));
    std::vector<int> free;
    for (size_t i = 0; i < m; ++i) {
      if (i < j) im[slots[i]] = Poly(r);
      else if (i == j) im[slots[i]] = Poly::constant(r, 1);
      else free.push_back(slots[i]);
    }
    std::vector<Poly> g2;
    bool inconsistent = false;
    for (auto& g : gens) {
      Poly h = g.compose(im);
      if (h.is_zero()) continue;
      if (h.total_degree() == 0 && !h.uses(kT)) inconsistent = true;
      g2.push_back(h);
    }
    if (inconsistent) continue;
    std::vector<Scalar> pt(m, K.zero());
    pt[j] = K.one();
    if (free.empty()) {
      out.push_back(pt);
      continue;
    }
    if (g2.empty()) throw Unresolved("positive-dimensional solution set in a chart");
    for (auto& s : solve_zero_dim(g2, free)) {
      if (!s.rational()) continue;
      auto p = pt;
      for (size_t f = 0; f < free.size(); ++f) p[j + 1 + f] = s.coords[f];
      out.push_back(p);
    }
  }
  return out;
}

Center canonical_line(const RingPtr& r, const std::vector<Scalar>& p, const std::vector<Scalar>& q) {
  Field K = r->field();
  Matrix M = {Row(p.begin(), p.end()), Row(q.begin(), q.end())};
  auto ns = nullspace(M, 4);
  Matrix N(ns.begin(), ns.end());
  rref(N);
  std::vector<Poly> forms;
  for (auto& row : N) {
    if (!nonzero_row(row)) continue;
    Poly l(r);
    for (int i = 0; i < 4; ++i) l += var(r, i).scaled(row[i]);
    forms.push_back(l);
  }
  return Center::line(forms.at(0), forms.at(1));
}

bool proportional_points(const std::vector<Scalar>& p, const std::vector<Scalar>& q) {
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (!(p[i] * q[j] - p[j] * q[i]).is_zero()) return false;
  return true;
}

std::vector<Center> sorted_unique(std::vector<Center> cs) {
  std::sort(cs.begin(), cs.end(), [](const Center& a, const Center& b) { return a.to_string() < b.to_string(); });
  cs.erase(std::unique(cs.begin(), cs.end(),
                       [](const Center& a, const Center& b) { return a.to_string() == b.to_string(); }),
           cs.end());
  return cs;
}

AmbientSpace ambient_of(const Poly& F, AmbientKind kind) {
  AmbientSpace A;
  A.kind = kind;
  A.ring = F.ring();
  std::vector<int> w = kind == AmbientKind::P3 ? std::vector<int>{1, 1, 1, 1} : std::vector<int>{2, 1, 1, 1};
  if (F.ring()->weights() != w) throw DomainError("equation lives in the wrong ambient for this program");
  return A;
}

int n_components(const Poly& F) { return static_cast<int>(factor_over_k(F.special_fiber()).size()); }

std::string hex64(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string weights_string(const std::vector<int>& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

// Bookkeeping shared by both programs.
struct Runner {
  Trace tr;
  std::set<std::string> seen;
  int cap;

  Runner(const Poly& F, const AmbientSpace& A, const std::string& program, const FlowchartOptions& opt) : cap(opt.cap) {
    tr.program = program;
    tr.ambient = A;
    tr.seed = opt.seed;
    tr.input = F.div_t(F.t_content());
    tr.final = tr.input;
    record(tr.input);
  }
  void record(const Poly& F) {
    seen.insert(normalize_state(F).to_string());
    tr.states.push_back(state_hash(F));
  }
  // false when the program must stop
  bool push(TransformStep s) {
    tr.steps.push_back(s);
    tr.final = s.after;
    std::string key = normalize_state(s.after).to_string();
    if (seen.count(key)) {
      tr.states.push_back(state_hash(s.after));
      tr.outcome = Outcome::CycleDetected;
      tr.diagnosis = "state after step " + std::to_string(tr.steps.size() - 1) + " repeats an earlier state";
      return false;
    }
    record(s.after);
    return true;
  }
  bool at_cap() {
    if (static_cast<int>(tr.steps.size()) < cap) return false;
    tr.outcome = Outcome::CapExceeded;
    tr.diagnosis = "a rule still fires after " + std::to_string(cap) + " steps";
    return true;
  }
};

Poly u_part(const Poly& F, int upow, int tdeg) {
  Poly o(F.ring());
  for (auto& [e, c] : F.terms())
    if (e[0] == upow && e[kT] == tdeg) {
      Exps g = e;
      g[0] = 0;
      g[kT] = 0;
      o.add_term(g, c);
    }
  return o;
}

int criterion_content(const Poly& F, const std::vector<int>& w) {
  int best = INT_MAX;
  for (auto& [e, c] : F.terms()) {
    int d = e[kT];
    for (size_t i = 0; i < w.size(); ++i) d += w[i] * e[i];
    best = std::min(best, d);
  }
  return best;
}

int weight_sum(const std::vector<int>& w) {
  int s = 0;
  for (int x : w) s += x;
  return s;
}

struct Dp2Move {
  std::string rule;
  std::vector<int> weights;
  CoordinateChange change;
};

TransformStep apply_dp2(const Poly& F, const Dp2Move& mv) {
  Poly G = mv.change.apply(F);
  int c = criterion_content(G, mv.weights);
  if (c < weight_sum(mv.weights))
    throw Error("divisibility criterion fails for weights " + weights_string(mv.weights) + " in case " + mv.rule +
                ": t-content " + std::to_string(c));
  auto [Fp, st] = weighted_transform(G, mv.weights);
  if (!st.criterion_ok) throw Error("divisibility criterion fails after the transform");
  std::vector<Poly> sub;
  for (auto& im : mv.change.images) sub.push_back(im.compose(st.substitution));
  st.substitution = sub;
  st.change = mv.change;
  st.before = F;
  st.rule = mv.rule;
  st.center = "weights" + weights_string(mv.weights);
  st.k_before = axial_multiplicity(F);
  st.k_after = axial_multiplicity(Fp);
  return st;
}

std::optional<Dp2Move> gorenstein_line_move(const Poly& F, const QuarticNormalForm& nf) {
  const RingPtr& r = F.ring();
  std::vector<int> w = {1, 1, 0, 0};
  Poly Fn = nf.change.apply(F);
  if (criterion_content(Fn, w) >= 2) return Dp2Move{"curve-u-x1", w, nf.change};
  Poly F0 = Fn.special_fiber();
  Poly G = F0 - u_part(F0, 2, 0) * var(r, 0).pow(2);
  for (auto& f : factor_over_k(G)) {
    if (f.poly.weighted_degree() != 1 || f.mult < 2) continue;
    CoordinateChange ch = nf.change.then(change_making_first(r, {1, 2, 3}, f.poly));
    if (criterion_content(ch.apply(F), w) >= 2) return Dp2Move{"curve-u-x1", w, ch};
  }
  return std::nullopt;
}

std::optional<Dp2Move> index2_line_move(const Poly& F) {
  const RingPtr& r = F.ring();
  std::vector<int> w = {0, 1, 1, 0};
  if (!u_part(F, 2, 1).is_zero() || !u_part(F, 2, 0).is_zero()) return std::nullopt;
  std::vector<Poly> gens;
  for (Poly p : {u_part(F, 1, 0), u_part(F, 0, 0)})
    for (int i = 1; i <= 3; ++i) {
      Poly d = p.derivative(i);
      if (!d.is_zero()) gens.push_back(d);
    }
  for (Poly p : {u_part(F, 1, 1), u_part(F, 0, 1)})
    if (!p.is_zero()) gens.push_back(p);
  std::vector<std::vector<Scalar>> pts;
  try {
    pts = projective_rational_points(gens, r, {1, 2, 3});
  } catch (const Unresolved&) {
    return std::nullopt;
  }
  for (auto& p : pts) {
    CoordinateChange ch = change_moving_point_to_last(r, {1, 2, 3}, p);
    if (criterion_content(ch.apply(F), w) >= 2) return Dp2Move{"curve-x1-x2", w, ch};
  }
  return std::nullopt;
}

// Moves a non-vertex point (u0 : a) of the special fiber to (0,0,0,1).
CoordinateChange change_for_point(const RingPtr& r, const FiberPoint& p) {
  std::vector<Scalar> a(p.coords.begin() + 1, p.coords.end());
  CoordinateChange ch = change_moving_point_to_last(r, {1, 2, 3}, a);
  Scalar u0 = p.coords[0];
  if (u0.is_zero()) return ch;
  CoordinateChange sh = CoordinateChange::identity(r);
  Poly x3sq = var(r, 3).pow(2);
  sh.images[0] = var(r, 0) + x3sq.scaled(u0);
  sh.inverse[0] = var(r, 0) - x3sq.scaled(u0);
  return ch.then(sh);
}

}  // namespace

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Standard: return "standard";
    case Outcome::Exceptional: return "exceptional";
    case Outcome::NeedsP6: return "needs-p6";
    case Outcome::CapExceeded: return "cap-exceeded";
    case Outcome::CycleDetected: return "cycle-detected";
  }
  return "";
}

Poly normalize_state(const Poly& F) {
  if (F.is_zero()) throw DomainError("zero equation");
  return F.div_t(F.t_content()).monic();
}

std::string state_hash(const Poly& F) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : normalize_state(F).to_string()) h = (h ^ ch) * 0x100000001b3ull;
  return hex64(h);
}

std::vector<Center> cubic_plane_candidates(const Poly& F) {
  std::vector<Center> out;
  for (auto& f : factor_over_k(F.special_fiber()))
    if (f.poly.total_degree() == 1) out.push_back(Center::plane(f.poly.monic()));
  return sorted_unique(out);
}

std::vector<Center> cubic_line_candidates(const Poly& F, uint64_t seed) {
  const RingPtr& r = F.ring();
  Field K = r->field();
  AmbientSpace A = ambient_of(F, AmbientKind::P3);
  Poly F0 = F.special_fiber(), F1 = F.t_coefficient(1);
  std::vector<Poly> gens = {F0};
  for (int i = 0; i < 4; ++i) {
    Poly d = F0.derivative(i);
    if (!d.is_zero()) gens.push_back(d);
  }
  if (!F1.is_zero()) gens.push_back(F1);
  std::mt19937_64 g(seed);
  std::vector<std::vector<std::vector<Scalar>>> sections;
  for (int attempt = 0; attempt < 12 && sections.size() < 2; ++attempt) {
    std::vector<Scalar> h(4);
    for (auto& c : h) c = K.from_int(static_cast<long>(g() % 7) - 3);
    int j = -1;
    for (int i = 0; i < 4; ++i)
      if (!h[i].is_zero()) j = i;
    if (j < 0) continue;
    std::vector<Poly> im;
    for (int i = 0; i < 4; ++i) im.push_back(var(r, i));
    Poly xj(r);
    for (int i = 0; i < 4; ++i)
      if (i != j) xj -= var(r, i).scaled(h[i] / h[j]);
    im[j] = xj;
    std::vector<Poly> g2;
    for (auto& p : gens) {
      Poly q = p.compose(im);
      if (!q.is_zero()) g2.push_back(q);
    }
    std::vector<int> slots;
    for (int i = 0; i < 4; ++i)
      if (i != j) slots.push_back(i);
    std::vector<std::vector<Scalar>> pts;
    try {
      pts = projective_rational_points(g2, r, slots);
    } catch (const Unresolved&) {
      continue;
    }
    std::vector<std::vector<Scalar>> full;
    for (auto& p : pts) {
      std::vector<Scalar> v(4, K.zero());
      for (size_t s = 0; s < slots.size(); ++s) v[slots[s]] = p[s];
      Scalar vj = K.zero();
      for (int i = 0; i < 4; ++i)
        if (i != j) vj = vj - v[i] * h[i] / h[j];
      v[j] = vj;
      full.push_back(v);
    }
    sections.push_back(full);
  }
  if (sections.size() < 2) throw Unresolved("could not slice the singular scheme by two planes");
  std::vector<Center> out;
  for (auto& p : sections[0])
    for (auto& q : sections[1]) {
      if (proportional_points(p, q)) continue;
      Center c = canonical_line(r, p, q);
      if (multiplicity_along(F, c, A) >= 2) out.push_back(c);
    }
  return sorted_unique(out);
}

std::vector<Center> cubic_point_candidates(const Poly& F) {
  const RingPtr& r = F.ring();
  Field K = r->field();
  AmbientSpace A = ambient_of(F, AmbientKind::P3);
  Poly F0 = F.special_fiber(), F1 = F.t_coefficient(1), F2 = F.t_coefficient(2);
  Matrix M;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Poly d = F0.derivative(i).derivative(j);
      if (d.is_zero()) continue;
      Row row(4, K.zero());
      for (auto& [e, c] : d.terms())
        for (int s = 0; s < 4; ++s)
          if (e[s]) row[s] = c;
      M.push_back(row);
    }
  auto basis = nullspace(M, 4);
  if (basis.empty()) return {};
  size_t m = basis.size();
  std::vector<Poly> im;
  for (int j = 0; j < 4; ++j) {
    Poly x(r);
    for (size_t i = 0; i < m; ++i) x += var(r, static_cast<int>(i)).scaled(basis[i][j]);
    im.push_back(x);
  }
  std::vector<Poly> gens;
  for (int i = 0; i < 4; ++i) {
    Poly d = F1.derivative(i).compose(im);
    if (!d.is_zero()) gens.push_back(d);
  }
  Poly f2 = F2.compose(im);
  if (!f2.is_zero()) gens.push_back(f2);
  std::vector<int> slots;
  for (size_t i = 0; i < m; ++i) slots.push_back(static_cast<int>(i));
  std::vector<Center> out;
  for (auto& s : projective_rational_points(gens, r, slots)) {
    std::vector<Scalar> p(4, K.zero());
    for (int j = 0; j < 4; ++j)
      for (size_t i = 0; i < m; ++i) p[j] = p[j] + s[i] * basis[i][j];
    Center c = Center::point(r, p);
    if (multiplicity_along(F, c, A) == 3) out.push_back(c);
  }
  return sorted_unique(out);
}

Trace run_cubic(const Poly& Fin, const FlowchartOptions& opt) {
  AmbientSpace A = ambient_of(Fin, AmbientKind::P3);
  if (Fin.is_zero()) throw DomainError("zero equation");
  if (Fin.weighted_degree() != 3) throw DomainError("the cubic program needs a cubic form");
  if (!generic_fiber_smooth(Fin, opt.seed)) throw DomainError("generic fiber is singular");
  Runner run(Fin, A, "cubic", opt);
  Poly F = run.tr.input;
  for (;;) {
    std::optional<std::pair<std::string, Center>> fire;
    auto planes = cubic_plane_candidates(F);
    for (auto& c : planes)
      if (!fire && multiplicity_along(F, c, A) >= 2) fire = {{"plane-mult2", c}};
    std::vector<Center> lines;
    if (!fire) {
      lines = cubic_line_candidates(F, opt.seed);
      for (auto& c : lines)
        if (!fire && multiplicity_along(F, c, A) == 3) fire = {{"line-mult3", c}};
    }
    if (!fire && !planes.empty()) fire = {{"fiber-plane", planes.front()}};
    if (!fire)
      for (auto& c : lines)
        if (!fire && multiplicity_along(F, c, A) == 2) fire = {{"line-mult2", c}};
    if (!fire) {
      auto pts = cubic_point_candidates(F);
      if (!pts.empty()) fire = {{"point-mult3", pts.front()}};
    }
    if (!fire) break;
    if (run.at_cap()) return run.tr;
    auto [Fp, st] = elementary_transform(F, fire->second, A);
    st.rule = fire->first;
    st.n_before = n_components(F);
    st.n_after = n_components(Fp);
    if (!run.push(st)) return run.tr;
    F = Fp;
  }
  if (A.ring->field().degree() == 1) {
    auto ev = exceptional_pattern_check(F, A);
    if (ev.result) {
      run.tr.outcome = Outcome::Exceptional;
      run.tr.exceptional = ev;
      run.tr.diagnosis = "three conjugate planes, singular along their intersections, double at the triple point";
      return run.tr;
    }
  }
  auto sc = standard_model_check(F, A, opt.seed, opt.germ);
  if (!sc.standard) throw Error("certification failure: no rule fires, yet the model is neither standard nor exceptional (" + sc.reason + ")");
  run.tr.outcome = Outcome::Standard;
  run.tr.standard = sc;
  return run.tr;
}

Trace run_dp2(const Poly& Fin, const FlowchartOptions& opt) {
  AmbientSpace A = ambient_of(Fin, AmbientKind::WP2111);
  if (Fin.is_zero()) throw DomainError("zero equation");
  if (Fin.weighted_degree() != 4) throw DomainError("the degree-two program needs a quartic in P(2,1,1,1)");
  if (!generic_fiber_smooth(Fin, opt.seed)) throw DomainError("generic fiber is singular");
  Runner run(Fin, A, "dp2", opt);
  Poly F = run.tr.input;
  const RingPtr& r = A.ring;
  for (;;) {
    QuarticNormalForm nf = quartic_normal_form(F);
    std::optional<Dp2Move> mv;
    switch (nf.tag) {
      case QuarticCase::UFactor: mv = Dp2Move{"u-divides", {1, 0, 0, 0}, nf.change}; break;
      case QuarticCase::LinearFactor: mv = Dp2Move{"x1-divides", {0, 1, 0, 0}, nf.change}; break;
      case QuarticCase::TwoSmoothConics: {
        int k = axial_multiplicity(F);
        if (k >= 2) {
          mv = Dp2Move{"two-conics", {1, 1, 1, 1}, CoordinateChange::identity(r)};
          break;
        }
        auto fs = factor_over_k(F.special_fiber());
        if (fs.size() == 1) {
          run.tr.outcome = Outcome::NeedsP6;
          run.tr.diagnosis = "special fiber is a double conic with k = 1: the model leaves P(2,1,1,1)";
          return run.tr;
        }
        try {
          auto M = construct_determinantal_model(F);
          if (M.special_fiber_ok) {
            run.tr.outcome = Outcome::Standard;
            run.tr.determinantal = M;
            run.tr.diagnosis = "standard model in P6 cut by the minors of a symmetric matrix";
            return run.tr;
          }
          run.tr.diagnosis = "determinantal model found but its special fiber check failed";
        } catch (const DomainError& e) {
          run.tr.diagnosis = std::string("two conics with k = 1 outside the determinantal shape: ") + e.what();
        }
        run.tr.outcome = Outcome::NeedsP6;
        return run.tr;
      }
      case QuarticCase::Unclassified: throw Error("normal-form change not found: " + nf.reason);
      default: break;
    }
    if (!mv) {
      SingularLocus sl = singular_locus(F, A);
      if (sl.contains_curve) {
        if (nf.tag == QuarticCase::GorensteinDoubleLine) mv = gorenstein_line_move(F, nf);
        else if (nf.tag == QuarticCase::Index2Line) mv = index2_line_move(F);
        if (!mv) throw Error("singular along a curve, but no line matches the prescribed weights");
      } else {
        auto sc = standard_model_check(F, A, opt.seed, opt.germ);
        if (sc.standard) {
          run.tr.outcome = Outcome::Standard;
          run.tr.standard = sc;
          return run.tr;
        }
        for (auto& rep : sc.report) {
          if (mv) break;
          if (rep.point.vertex) {
            if (rep.verdict.type != "NotTerminal") continue;
            VertexAnalysis va = analyze_vertex(F);
            mv = Dp2Move{va.weights[0] == 1 ? "vertex-no-uq" : "vertex-square", va.weights, *va.change};
          } else if (!rep.verdict.is_cdv()) {
            if (!rep.point.rational()) throw Unresolved("nonterminal point is not k-rational: " + rep.point.to_string());
            mv = Dp2Move{"point-noncdv", {2, 1, 1, 0}, change_for_point(r, rep.point)};
          }
        }
        if (!mv) throw Error("certification failure: " + sc.reason);
      }
    }
    if (run.at_cap()) return run.tr;
    TransformStep st = apply_dp2(F, *mv);
    st.n_before = n_components(F);
    st.n_after = n_components(st.after);
    if (!run.push(st)) return run.tr;
    F = st.after;
  }
}

TraceVerification verify_trace(const Trace& tr, const Poly& original) {
  TraceVerification v;
  auto fail = [&](int i, const std::string& m) {
    v.ok = false;
    v.failures.push_back((i < 0 ? std::string("trace") : "step " + std::to_string(i)) + ": " + m);
  };
  if (normalize_state(tr.input) != normalize_state(original)) fail(-1, "input does not match the original equation");
  Poly cur = tr.input;
  std::set<std::string> seen = {normalize_state(cur).to_string()};
  bool cycle_reported = tr.outcome == Outcome::CycleDetected;
  for (size_t i = 0; i < tr.steps.size(); ++i) {
    const TransformStep& s = tr.steps[i];
    int ii = static_cast<int>(i);
    if (s.before != cur) fail(ii, "does not start where the previous step ended");
    if (!check_generic_fiber_identity(s.before, s)) fail(ii, "generic-fiber identity F(substitution) = t^c F+ fails");
    if (s.after.is_zero() || s.after.t_content() != 0) fail(ii, "output is not t-primitive");
    else if (s.after.weighted_degree() != s.before.weighted_degree()) fail(ii, "weighted degree changed");
    Poly pulled = s.before.compose(s.substitution);
    if (!pulled.is_zero() && pulled.t_content() != s.t_removed) fail(ii, "recorded c differs from the recomputed t-content");
    if (tr.program == "cubic") {
      if (s.t_removed != s.mu_before) fail(ii, "c differs from the multiplicity along the center");
      int mu = s.mu_before;
      bool rule_ok = (s.rule == "plane-mult2" && mu >= 2) || (s.rule == "line-mult3" && mu == 3) ||
                     (s.rule == "fiber-plane" && mu >= 1) || (s.rule == "line-mult2" && mu == 2) ||
                     (s.rule == "point-mult3" && mu == 3);
      if (!rule_ok) fail(ii, "multiplicity " + std::to_string(mu) + " does not fit rule " + s.rule);
      for (auto& [name, val] : s.discrepancy) {
        if (name == "f*(K+X):F" && val != mu - 1) fail(ii, "pullback multiplicity entry inconsistent with mu");
        if (name == "g*X+:G" && val != 3 - mu) fail(ii, "exceptional entry inconsistent with mu");
        if (name == "g*X+:G" && s.t_removed != 3 - val) fail(ii, "c != 3 - (3 - mu)");
      }
    } else {
      int total = weight_sum(s.weights);
      if (s.t_removed < total) fail(ii, "divisibility criterion c >= sum of weights fails");
      int kb = axial_multiplicity(s.before), ka = axial_multiplicity(s.after);
      if (kb != s.k_before || ka != s.k_after) fail(ii, "recorded axial multiplicities are stale");
      int expect = INT_MIN;
      if (s.rule == "u-divides") expect = kb + 1;
      else if (s.rule == "x1-divides") expect = kb - 1;
      else if (s.rule == "two-conics") expect = kb - 2;
      if (expect != INT_MIN && ka != expect) fail(ii, "axial multiplicity transition differs from the table");
    }
    std::string key = normalize_state(s.after).to_string();
    if (seen.count(key) && !(cycle_reported && i + 1 == tr.steps.size())) fail(ii, "state repeats");
    seen.insert(key);
    cur = s.after;
  }
  if (tr.final != cur) fail(-1, "final equation does not match the last step");
  if (tr.states.size() != tr.steps.size() + 1) fail(-1, "state list has the wrong length");
  else {
    if (tr.states[0] != state_hash(tr.input)) fail(-1, "initial state hash mismatch");
    for (size_t i = 0; i < tr.steps.size(); ++i)
      if (tr.states[i + 1] != state_hash(tr.steps[i].after)) fail(static_cast<int>(i), "state hash mismatch");
  }
  if (tr.outcome == Outcome::Standard && !tr.standard && !tr.determinantal) fail(-1, "standard outcome without certificate");
  if (tr.outcome == Outcome::Exceptional && !(tr.exceptional && tr.exceptional->result))
    fail(-1, "exceptional outcome without certificate");
  return v;
}

}  // namespace dvr
