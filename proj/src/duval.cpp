#include "dvr/duval.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace dvr {

namespace {

// t becomes an ordinary variable named "t" after the geometric ones.
Poly flatten(const Poly& f) {
  auto names = f.ring()->names();
  names.push_back("t");
  RingPtr S = Ring::make(f.field(), names);
  int n = f.ring()->nvars();
  Poly out(S);
  for (auto& [e, c] : f.terms()) {
    Exps g = e;
    g[n] = e[kT];
    g[kT] = 0;
    out.add_term(g, c);
  }
  return out;
}

Scalar const_term(const Poly& p) { return p.coeff(Exps{}); }

Poly homogeneous_part(const Poly& f, int d) {
  Poly o(f.ring());
  for (auto& [e, c] : f.terms())
    if (full_degree(e) == d) o.add_term(e, c);
  return o;
}

Matrix hessian_of(const Poly& q, const std::vector<int>& slots) {
  Matrix H = zero_matrix(q.field(), slots.size(), slots.size());
  for (size_t i = 0; i < slots.size(); ++i)
    for (size_t j = 0; j < slots.size(); ++j) H[i][j] = const_term(q.derivative(slots[i]).derivative(slots[j]));
  return H;
}

std::vector<int> iota(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

Row coeff_row(const Poly& l, int n) {
  Row r(n, l.field().zero());
  for (auto& [e, c] : l.terms())
    for (int s = 0; s < n; ++s)
      if (e[s]) r[s] = c;
  return r;
}

Poly linear_form(const RingPtr& r, const Row& c) {
  Poly p(r);
  for (size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) p += Poly::var(r, static_cast<int>(i)).scaled(c[i]);
  return p;
}

Scalar dot(const Row& a, const Row& b) {
  Scalar s = a[0].field().zero();
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool proportional(const Row& a, const Row& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

Row map_row(const Embedding& e, const Row& r) {
  Row o;
  for (auto& x : r) o.push_back(e.map(x));
  return o;
}

Poly div_var(const Poly& g, int slot, int k) {
  Poly o(g.ring());
  for (auto& [e, c] : g.terms()) {
    if (e[slot] < k) throw Error("div_var: not divisible");
    Exps h = e;
    h[slot] = static_cast<uint16_t>(h[slot] - k);
    o.add_term(h, c);
  }
  return o;
}

// Strict transform of a double point in the chart x_j != 0 of the blowup.
Poly chart_transform(const Poly& f, int j) {
  const RingPtr& r = f.ring();
  std::vector<Poly> im;
  for (int i = 0; i < r->nvars(); ++i)
    im.push_back(i == j ? Poly::var(r, j) : Poly::var(r, j) * Poly::var(r, i));
  return div_var(f.compose(im), j, f.order_at_origin());
}

Poly translate(const Poly& f, const Row& q) {
  const RingPtr& r = f.ring();
  std::vector<Poly> im;
  for (int i = 0; i < r->nvars(); ++i) im.push_back(Poly::var(r, i) + Poly::constant(r, q[i]));
  return f.compose(im);
}

struct NotDuValSignal {
  std::string reason;
};

struct InCurve {
  int id;
  Row dir;
};

struct ResGraph {
  std::vector<std::string> kinds;
  std::set<std::pair<int, int>> edges;
  int blowups = 0;
  int depth = 0;
  int add(const std::string& k) {
    kinds.push_back(k);
    return static_cast<int>(kinds.size()) - 1;
  }
  void edge(int a, int b) {
    if (a == b) return;
    edges.insert({std::min(a, b), std::max(a, b)});
  }
};

struct ExcPoint {
  Embedding emb;
  Row coords;  // on the exceptional plane, coords[chart] = 1
  int chart;
  int orbit;
};

std::vector<ExcPoint> exceptional_singular_points(const Poly& f) {
  const RingPtr& r = f.ring();
  int n = r->nvars();
  std::vector<ExcPoint> out;
  for (int j = 0; j < n; ++j) {
    Poly g = chart_transform(f, j);
    std::vector<Poly> im;
    std::vector<int> free;
    for (int i = 0; i < n; ++i) {
      if (i <= j) im.push_back(Poly(r));
      else {
        im.push_back(Poly::var(r, i));
        free.push_back(i);
      }
    }
    std::vector<Poly> gens;
    bool empty = false;
    auto push = [&](const Poly& p) {
      Poly h = p.compose(im);
      if (h.is_zero()) return;
      if (h.order_at_origin() == 0 && h.size() == 1) empty = true;
      gens.push_back(h);
    };
    push(g);
    for (int i = 0; i < n; ++i) push(g.derivative(i));
    if (empty) continue;
    auto make = [&](const Embedding& e, const std::vector<Scalar>& sol, int orbit) {
      ExcPoint p{e, Row(n, e.to.zero()), j, orbit};
      p.coords[j] = e.to.one();
      for (size_t k = 0; k < free.size(); ++k) p.coords[free[k]] = sol[k];
      out.push_back(p);
    };
    if (free.empty()) {
      if (gens.empty()) make(Embedding::identity(r->field()), {}, 1);
      continue;
    }
    if (gens.empty()) throw NotDuValSignal{"blowup is singular along the exceptional divisor"};
    std::vector<SolutionOrbit> sols;
    try {
      sols = solve_zero_dim(gens, free);
    } catch (const Unresolved&) {
      throw NotDuValSignal{"blowup is singular along a curve"};
    }
    for (auto& s : sols) make(s.emb, s.coords, s.orbit_size);
  }
  return out;
}

// Splitting field of a rank-two ternary quadratic form.
Adjoined split_rank_two(const Poly& f2) {
  const RingPtr& r = f2.ring();
  Field L = r->field();
  RingPtr S = Ring::make(L, {"s"});
  for (long a = 1; a < 40; ++a) {
    std::vector<Poly> im;
    for (int i = 0; i < r->nvars(); ++i)
      im.push_back(Poly::constant(S, L.from_int(1 + a * i)) + Poly::var(S, 0).scaled(L.from_int((a + i * i) % 5 - 2)));
    UPoly b = to_upoly(f2.compose(im), 0);
    if (b.degree() != 2) continue;
    auto fs = factor(b);
    if (fs.size() == 1 && fs[0].poly.degree() == 2) return adjoin_root(fs[0].poly);
  }
  throw Unresolved("could not split the rank-two quadratic cone " + f2.to_string());
}

void resolve(const Poly& f, const std::vector<InCurve>& in, int depth, ResGraph& G, const SurfaceGermOptions& o) {
  int m = f.order_at_origin();
  if (m <= 1) {
    for (size_t a = 0; a < in.size(); ++a)
      for (size_t b = a + 1; b < in.size(); ++b) G.edge(in[a].id, in[b].id);
    return;
  }
  if (m >= 3)
    throw NotDuValSignal{"point of multiplicity " + std::to_string(m) + " after " + std::to_string(depth) + " blowups"};
  if (depth >= o.max_blowups) throw NotDuValSignal{"resolution depth exceeds " + std::to_string(o.max_blowups)};
  Field L = f.field();
  if (L.degree() > o.field_degree_cap) throw Unresolved("field tower degree cap exceeded");
  const RingPtr& r = f.ring();
  int n = r->nvars();
  Poly f2 = homogeneous_part(f, 2);
  Matrix H = hessian_of(f2, iota(n));
  size_t rk = rank(H);
  G.depth = std::max(G.depth, depth + 1);
  if (rk == 3) {
    ++G.blowups;
    int c = G.add("conic");
    for (auto& cv : in) G.edge(cv.id, c);
    return;
  }
  std::vector<Row> lines;
  if (rk == 1) {
    for (auto& row : H)
      if (std::any_of(row.begin(), row.end(), [](const Scalar& s) { return !s.is_zero(); })) {
        lines.push_back(row);
        break;
      }
  } else {
    auto lf = linear_factors(f2);
    if (lf.size() < 2) {
      Adjoined a = split_rank_two(f2);
      if (a.emb.to.degree() > o.field_degree_cap) throw Unresolved("field tower degree cap exceeded");
      RingPtr R2 = r->with_field(a.emb.to);
      std::vector<InCurve> in2;
      for (auto& cv : in) in2.push_back({cv.id, map_row(a.emb, cv.dir)});
      resolve(f.map_field(a.emb, R2), in2, depth, G, o);
      return;
    }
    lines = {coeff_row(lf[0].poly, n), coeff_row(lf[1].poly, n)};
  }
  ++G.blowups;
  std::vector<int> ids;
  for (size_t i = 0; i < lines.size(); ++i) ids.push_back(G.add("line"));
  auto pts = exceptional_singular_points(f);
  auto singular_at = [&](const Row& X) {
    for (auto& p : pts)
      if (p.orbit == 1 && proportional(map_row(p.emb, X), p.coords)) return true;
    return false;
  };
  for (size_t a = 0; a < in.size(); ++a) {
    if (singular_at(in[a].dir)) continue;
    for (size_t k = 0; k < lines.size(); ++k)
      if (dot(lines[k], in[a].dir).is_zero()) G.edge(in[a].id, ids[k]);
    for (size_t b = a + 1; b < in.size(); ++b)
      if (proportional(in[a].dir, in[b].dir)) G.edge(in[a].id, in[b].id);
  }
  if (lines.size() == 2) {
    Row X = {lines[0][1] * lines[1][2] - lines[0][2] * lines[1][1], lines[0][2] * lines[1][0] - lines[0][0] * lines[1][2],
             lines[0][0] * lines[1][1] - lines[0][1] * lines[1][0]};
    if (!singular_at(X)) G.edge(ids[0], ids[1]);
  }
  for (auto& p : pts) {
    Field Lq = p.emb.to;
    RingPtr Rq = r->with_field(Lq);
    int j = p.chart;
    Row shift = p.coords;
    shift[j] = Lq.zero();
    Poly g = translate(chart_transform(f, j).map_field(p.emb, Rq), shift);
    std::vector<InCurve> next;
    Row ej(n, Lq.zero());
    ej[j] = Lq.one();
    for (auto& cv : in)
      if (proportional(map_row(p.emb, cv.dir), p.coords)) next.push_back({cv.id, ej});
    for (size_t k = 0; k < lines.size(); ++k) {
      Row lk = map_row(p.emb, lines[k]);
      if (!dot(lk, p.coords).is_zero()) continue;
      std::vector<int> others;
      for (int i = 0; i < n; ++i)
        if (i != j) others.push_back(i);
      Row d(n, Lq.zero());
      d[others[0]] = lk[others[1]];
      d[others[1]] = -lk[others[0]];
      next.push_back({ids[k], d});
    }
    for (int c = 0; c < p.orbit; ++c) resolve(g, next, depth + 1, G, o);
  }
}

}  // namespace

std::string SurfaceGermVerdict::name() const {
  switch (family) {
    case AdeFamily::Smooth: return "smooth";
    case AdeFamily::A: return "A" + std::to_string(index);
    case AdeFamily::D: return "D" + std::to_string(index);
    case AdeFamily::E: return "E" + std::to_string(index);
    case AdeFamily::NotDuVal: return "not Du Val";
  }
  return "";
}

int SurfaceGermVerdict::rank() const { return static_cast<int>(family) * 1000 + index; }

std::optional<std::pair<AdeFamily, int>> ade_type_of_graph(const std::vector<DualCurve>& g) {
  int n = static_cast<int>(g.size());
  if (n == 0) return std::nullopt;
  size_t edges = 0;
  for (auto& c : g) {
    edges += c.neighbors.size();
    if (c.self_intersection != -2) return std::nullopt;
  }
  if (edges / 2 != static_cast<size_t>(n - 1)) return std::nullopt;
  std::vector<int> seen(n, 0), stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g[v].neighbors)
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  if (count != n) return std::nullopt;
  int fork = -1;
  for (int v = 0; v < n; ++v) {
    int d = static_cast<int>(g[v].neighbors.size());
    if (d > 3) return std::nullopt;
    if (d == 3) {
      if (fork >= 0) return std::nullopt;
      fork = v;
    }
  }
  if (fork < 0) return std::make_pair(AdeFamily::A, n);
  std::vector<int> arms;
  for (int w : g[fork].neighbors) {
    int len = 1, prev = fork, cur = w;
    for (;;) {
      int nxt = -1;
      for (int x : g[cur].neighbors)
        if (x != prev) nxt = x;
      if (nxt < 0) break;
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return std::make_pair(AdeFamily::D, n);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return std::make_pair(AdeFamily::E, n);
  return std::nullopt;
}

namespace {

int milnor_flat(const Poly& f, int jet_order) {
  const RingPtr& r = f.ring();
  int n = r->nvars();
  Field K = r->field();
  std::vector<Poly> J;
  for (int i = 0; i < n; ++i) J.push_back(f.derivative(i));
  int prev = -1;
  for (int N = 1; N <= jet_order + 1; ++N) {
    std::map<Exps, int, CanonicalOrder> index;
    std::vector<Exps> monos;
    std::vector<Exps> frontier = {Exps{}};
    for (int d = 0; d < N; ++d) {
      std::set<Exps> next;
      for (auto& e : frontier) {
        index.emplace(e, static_cast<int>(monos.size()));
        monos.push_back(e);
        for (int i = 0; i < n; ++i) {
          Exps g = e;
          ++g[i];
          next.insert(g);
        }
      }
      frontier.assign(next.begin(), next.end());
    }
    std::map<int, std::map<int, Scalar>> pivots;
    for (auto& d : J)
      for (auto& m : monos) {
        std::map<int, Scalar> row;
        for (auto& [e, c] : d.terms()) {
          Exps g = e;
          for (int i = 0; i < n; ++i) g[i] = static_cast<uint16_t>(g[i] + m[i]);
          auto it = index.find(g);
          if (it != index.end()) row.try_emplace(it->second, K.zero()).first->second += c;
        }
        for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
        while (!row.empty()) {
          auto lead = row.begin();
          auto pv = pivots.find(lead->first);
          if (pv == pivots.end()) {
            Scalar inv = lead->second.inverse();
            for (auto& [k, v] : row) v *= inv;
            pivots.emplace(lead->first, std::move(row));
            break;
          }
          Scalar c = lead->second;
          for (auto& [k, v] : pv->second) {
            Scalar& x = row.try_emplace(k, K.zero()).first->second;
            x -= c * v;
            if (x.is_zero()) row.erase(k);
          }
        }
      }
    int dim = static_cast<int>(monos.size() - pivots.size());
    if (dim == prev) return dim;
    prev = dim;
  }
  throw DomainError("Milnor number is not finite within jet order " + std::to_string(jet_order));
}

bool isolated_flat(const Poly& f) {
  const RingPtr& r = f.ring();
  int n = r->nvars();
  // A finite local Jacobian algebra already isolates the critical point.
  try {
    milnor_flat(f, 10);
    return true;
  } catch (const DomainError&) {
  }
  std::vector<Poly> gens = {f};
  for (int i = 0; i < n; ++i)
    if (!f.derivative(i).is_zero()) gens.push_back(f.derivative(i));
  if (groebner(gens, iota(n)).dimension() <= 0) return true;
  // Saturate by a random linear form: components through the origin survive.
  auto names = r->names();
  names.push_back("s_");
  RingPtr S = Ring::make(r->field(), names);
  std::vector<Poly> g2;
  for (auto& g : gens) g2.push_back(g.change_ring(S));
  Poly lam(S);
  for (int i = 0; i < n; ++i) lam += Poly::var(S, i).scaled(r->field().from_int(2 * i + 3));
  g2.push_back(Poly::constant(S, 1) - Poly::var(S, n) * lam);
  std::vector<int> vars = {n};
  for (int i = 0; i < n; ++i) vars.push_back(i);
  GroebnerBasis gb = groebner(g2, vars, MonoOrder::Lex);
  for (auto& b : gb.basis) {
    if (b.uses(n)) continue;
    if (!const_term(b).is_zero()) return true;
  }
  return false;
}

std::optional<FastPathVerdict> fast_path_flat(const Poly& f) {
  const RingPtr& r = f.ring();
  if (r->nvars() != 3 || f.is_zero() || f.order_at_origin() != 2) return std::nullopt;
  Poly f2 = homogeneous_part(f, 2);
  Matrix H = hessian_of(f2, iota(3));
  size_t rk = rank(H);
  if (rk >= 2) return FastPathVerdict{AdeFamily::A, 0, "reduced tangent cone"};
  Row l;
  for (auto& row : H)
    if (std::any_of(row.begin(), row.end(), [](const Scalar& s) { return !s.is_zero(); })) {
      l = row;
      break;
    }
  Poly g = change_making_first(r, {0, 1, 2}, linear_form(r, l)).apply(f);
  Poly c(r), b(r), U(r);
  for (auto& [e, v] : g.terms()) {
    Exps h = e;
    if (e[0] == 0) c.add_term(e, v);
    else if (e[0] == 1) {
      h[0] = 0;
      b.add_term(h, v);
    } else {
      h[0] = static_cast<uint16_t>(h[0] - 2);
      U.add_term(h, v);
    }
  }
  Scalar U0 = const_term(U);
  Poly gt = c - (b * b).scaled((U0 + U0 + U0 + U0).inverse());
  Poly c3 = homogeneous_part(gt, 3);
  if (c3.is_zero()) return std::nullopt;
  Poly a = c3.derivative(1).derivative(1), d = c3.derivative(2).derivative(2), m = c3.derivative(1).derivative(2);
  Poly hess = a * d - m * m;
  if (!hess.is_zero()) return FastPathVerdict{AdeFamily::D, 0, "double plane with a cubic that is not a cube"};
  auto lf = linear_factors(c3);
  if (lf.empty()) return std::nullopt;
  Row lc = coeff_row(lf[0].poly, 3);
  Row w = {r->field().zero(), -lc[2], lc[1]};
  Poly q4 = homogeneous_part(gt, 4);
  std::vector<Poly> im;
  for (int i = 0; i < 3; ++i) im.push_back(Poly::constant(r, w[i]));
  if (!q4.compose(im).is_zero()) return FastPathVerdict{AdeFamily::E, 6, "cube with a quartic term along its kernel"};
  return std::nullopt;
}

SurfaceGermVerdict classify_flat(const Poly& f, const SurfaceGermOptions& opt) {
  SurfaceGermVerdict v;
  if (f.is_zero()) throw DomainError("zero germ");
  int m = f.order_at_origin();
  if (m == 0) throw DomainError("germ does not vanish at the origin");
  if (m == 1) return v;
  if (m >= 3) {
    v.family = AdeFamily::NotDuVal;
    v.reason = "multiplicity " + std::to_string(m);
    return v;
  }
  if (!isolated_flat(f)) throw DomainError("non-isolated singularity");
  auto fp = fast_path_flat(f);
  if (fp) v.fast_path = fp->rule;
  ResGraph G;
  try {
    resolve(f, {}, 0, G, opt);
  } catch (const NotDuValSignal& s) {
    v.family = AdeFamily::NotDuVal;
    v.reason = s.reason;
    v.blowups = G.blowups;
    v.resolution_depth = G.depth;
    return v;
  }
  v.blowups = G.blowups;
  v.resolution_depth = G.depth;
  v.dual_graph.resize(G.kinds.size());
  for (size_t i = 0; i < G.kinds.size(); ++i) v.dual_graph[i].kind = G.kinds[i];
  for (auto& [a, b] : G.edges) {
    v.dual_graph[a].neighbors.push_back(b);
    v.dual_graph[b].neighbors.push_back(a);
  }
  auto t = ade_type_of_graph(v.dual_graph);
  if (!t) {
    v.family = AdeFamily::NotDuVal;
    v.reason = "exceptional configuration is not an ADE graph";
    return v;
  }
  v.family = t->first;
  v.index = t->second;
  if (fp && (fp->family != v.family || (fp->index && fp->index != v.index)))
    throw Error("recognition shortcut disagrees with the resolution");
  return v;
}

}  // namespace

int milnor_number(const Poly& f, int jet_order) { return milnor_flat(flatten(f), jet_order); }

bool is_isolated_singularity(const Poly& f) { return isolated_flat(flatten(f)); }

std::optional<FastPathVerdict> surface_fast_path(const Poly& f) {
  if (f.ring()->nvars() != 2) throw DomainError("surface germs have two variables and t");
  return fast_path_flat(flatten(f));
}

SurfaceGermVerdict classify_surface_germ(const Poly& f, const SurfaceGermOptions& opt) {
  if (f.ring()->nvars() != 2) throw DomainError("surface germs have two variables and t");
  return classify_flat(flatten(f), opt);
}

std::string CdvVerdict::name() const {
  if (type == "cA" || type == "cD" || type == "cE") return type + std::to_string(index);
  return type;
}

CdvVerdict classify_threefold_germ(const Poly& f0, uint64_t seed, int samples, const SurfaceGermOptions& opt) {
  if (f0.ring()->nvars() != 3) throw DomainError("3-fold germs have three variables and t");
  Poly f = flatten(f0);
  CdvVerdict out;
  if (f.is_zero()) throw DomainError("zero germ");
  int m = f.order_at_origin();
  if (m == 0) throw DomainError("germ does not vanish at the origin");
  if (m == 1) {
    out.type = "Smooth";
    return out;
  }
  const RingPtr& r = f.ring();
  Field K = r->field();
  std::mt19937_64 g(seed);
  int failures = 0;
  auto agreeing = [&]() {
    int best = INT_MAX;
    for (auto& v : out.sections) best = std::min(best, v.rank());
    return static_cast<int>(std::count_if(out.sections.begin(), out.sections.end(),
                                          [&](const SurfaceGermVerdict& v) { return v.rank() == best; }));
  };
  // Special sections only ever look worse; when they crowd the first batch, draw more.
  for (int s = 0; s < samples || (s < 3 * samples && 3 * agreeing() < 2 * s); ++s) {
    std::vector<long> a(4, 0);
    while (std::all_of(a.begin(), a.end(), [](long x) { return x == 0; }))
      for (auto& x : a) x = static_cast<long>(g() % 9) - 4;
    int e = 3;
    while (a[e] == 0 || K.from_int(a[e]).is_zero()) --e;
    std::vector<std::string> names;
    for (int i = 0; i < 4; ++i)
      if (i != e) names.push_back(r->name(i));
    RingPtr S = Ring::make(K, names);
    std::vector<Poly> im;
    Poly elim(S);
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != e) elim -= Poly::var(S, k++).scaled(K.from_int(a[i]) / K.from_int(a[e]));
    k = 0;
    for (int i = 0; i < 4; ++i) im.push_back(i == e ? elim : Poly::var(S, k++));
    Poly sec = f.compose(im);
    ++out.sections_tried;
    try {
      out.sections.push_back(classify_flat(sec, opt));
    } catch (const DomainError&) {
      ++failures;
      SurfaceGermVerdict bad;
      bad.family = AdeFamily::NotDuVal;
      bad.reason = "non-isolated section";
      out.sections.push_back(bad);
    }
  }
  int total = out.sections_tried;
  if (failures == total) throw DomainError("non-isolated singular point");
  auto best = std::min_element(out.sections.begin(), out.sections.end(),
                               [](const SurfaceGermVerdict& a, const SurfaceGermVerdict& b) { return a.rank() < b.rank(); });
  int agree = static_cast<int>(std::count_if(out.sections.begin(), out.sections.end(),
                                             [&](const SurfaceGermVerdict& v) { return v.rank() == best->rank(); }));
  out.agreement = 3 * agree >= 2 * total;
  switch (best->family) {
    case AdeFamily::Smooth: out.type = "Smooth"; break;
    case AdeFamily::A: out.type = "cA"; break;
    case AdeFamily::D: out.type = "cD"; break;
    case AdeFamily::E: out.type = "cE"; break;
    case AdeFamily::NotDuVal: out.type = "NotCdv"; break;
  }
  out.index = best->index;
  if (!out.agreement) throw Unresolved("hyperplane sections disagree: only " + std::to_string(agree) + " of " +
                                       std::to_string(total) + " give " + best->name());
  return out;
}

CdvVerdict classify_threefold_point(const Poly& F, const FiberPoint& p, uint64_t seed, int samples,
                                    const SurfaceGermOptions& opt) {
  LocalGerm lg = local_equation(F, p);
  if (lg.quotient_chart) throw DomainError("cDV classification needs a hypersurface chart");
  return classify_threefold_germ(lg.f, seed, samples, opt);
}

ToricChart parse_toric_chart(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  if (t == "1/2(1,1,1,0)") return ToricChart::Half1110;
  if (t == "1/2(0,1,1,1)") return ToricChart::Half0111;
  if (t == "1/2(1,0,1,1)") return ToricChart::Half1011;
  throw DomainError("unknown toric chart " + s);
}

std::string toric_chart_name(ToricChart c) {
  switch (c) {
    case ToricChart::Half1110: return "1/2(1,1,1,0)";
    case ToricChart::Half0111: return "1/2(0,1,1,1)";
    case ToricChart::Half1011: return "1/2(1,0,1,1)";
  }
  return "";
}

Index2Match terminal_index2_match(const Poly& germ, ToricChart chart) {
  if (germ.ring()->nvars() != 3) throw DomainError("index-two germs have three variables and t");
  Poly f = flatten(germ);
  const RingPtr& r = f.ring();
  std::vector<int> w;
  switch (chart) {
    case ToricChart::Half1110: w = {1, 1, 1, 0}; break;
    case ToricChart::Half0111: w = {0, 1, 1, 1}; break;
    case ToricChart::Half1011: w = {1, 0, 1, 1}; break;
  }
  for (auto& [e, c] : f.terms()) {
    int s = 0;
    for (int i = 0; i < 4; ++i) s += w[i] * e[i];
    if (s % 2) throw DomainError("germ is not invariant in the chart " + toric_chart_name(chart));
  }
  static const char* names[] = {"", "xy+g(z^2,t)", "x^2+y^2+g(z,t)", "x^2+y^3+yzt+g(z,t)", "x^2+y^3+yg(z,t)+h(z,t)"};
  Index2Match out;
  auto match = [&](int k) {
    out.matches = true;
    out.shape = k;
    out.shape_name = names[k];
    return out;
  };
  auto fail = [&](const std::string& why) {
    out.reason = why;
    return out;
  };
  Poly q2 = homogeneous_part(f, 2);
  if (chart == ToricChart::Half1110) {
    if (rank(hessian_of(q2, {0, 1, 2})) >= 2) return match(1);
    return fail("quadratic part in x, y, z has rank at most 1");
  }
  if (chart == ToricChart::Half0111) {
    if (q2.coeff(exps_of({{0, 2}})).is_zero()) return fail("x^2 term missing");
    Matrix H = hessian_of(q2, {1, 2, 3});
    if (rank(H) != 1) return fail("quadratic part in y, z, t must have rank 1");
    Row l;
    for (auto& row : H)
      if (std::any_of(row.begin(), row.end(), [](const Scalar& s) { return !s.is_zero(); })) {
        l = row;
        break;
      }
    Poly lf(r);
    for (int i = 0; i < 3; ++i) lf += Poly::var(r, i + 1).scaled(l[i]);
    Poly g = change_making_first(r, {1, 2, 3}, lf).apply(f);
    for (auto& [e, c] : g.terms())
      if (full_degree(e) == 3 && e[0] == 0 && e[1] == 0) return fail("g(z,t) has terms of order 3");
    return match(2);
  }
  Matrix H = hessian_of(q2, {0, 1, 2, 3});
  if (rank(H) != 1) return fail("quadratic part must be a square");
  Row l;
  for (auto& row : H)
    if (std::any_of(row.begin(), row.end(), [](const Scalar& s) { return !s.is_zero(); })) {
      l = row;
      break;
    }
  Poly g = change_making_first(r, {0, 1, 2, 3}, linear_form(r, l)).apply(f);
  Poly c(r), b(r), U(r);
  for (auto& [e, v] : g.terms()) {
    Exps h = e;
    if (e[0] == 0) c.add_term(e, v);
    else if (e[0] == 1) {
      h[0] = 0;
      b.add_term(h, v);
    } else {
      h[0] = static_cast<uint16_t>(h[0] - 2);
      U.add_term(h, v);
    }
  }
  Scalar U0 = const_term(U);
  Poly gt = c - (b * b).scaled((U0 + U0 + U0 + U0).inverse());
  if (gt.coeff(exps_of({{1, 3}})).is_zero()) return fail("y^3 term missing");
  for (auto& [e, v] : gt.terms())
    if (full_degree(e) == 3 && e[1] == 1) return match(3);
  for (auto& [e, v] : gt.terms())
    if (e[1] == 0) return match(4);
  return fail("h != 0 required");
}

bool generic_fiber_smooth(const Poly& F, uint64_t seed) {
  const RingPtr& r = F.ring();
  Field K = r->field();
  std::mt19937_64 g(seed);
  int n = r->nvars();
  for (int attempt = 0; attempt < 4; ++attempt) {
    long tv = static_cast<long>(g() % 29) + 2;
    Scalar s = K.from_int(tv);
    if (s.is_zero()) continue;
    Poly G = F.evaluate_t(s);
    std::vector<Poly> gens = {G};
    for (int i = 0; i < n; ++i)
      if (!G.derivative(i).is_zero()) gens.push_back(G.derivative(i));
    if (groebner(gens, iota(n)).dimension() <= 0) return true;
  }
  return false;
}

VertexAnalysis analyze_vertex(const Poly& F) {
  const RingPtr& r = F.ring();
  if (r->weights() != std::vector<int>{2, 1, 1, 1}) throw DomainError("vertex analysis needs P(2,1,1,1)");
  Field K = r->field();
  VertexAnalysis va;
  int k = axial_multiplicity(F);
  if (k == kAxialInfinite) throw DomainError("no t^k u^2 term: the vertex lies on the generic fiber");
  va.k = k;
  if (k == 0) {
    va.shape = "not on the model";
    return va;
  }
  if (k == 1) {
    va.shape = "1/2(1,1,1)";
    return va;
  }
  auto u_part = [&](const Poly& G, int tdeg) {
    Poly o(r);
    for (auto& [e, c] : G.terms())
      if (e[0] == 1 && e[kT] == tdeg) {
        Exps g = e;
        g[0] = 0;
        g[kT] = 0;
        o.add_term(g, c);
      }
    return o;
  };
  Poly Q0 = u_part(F, 0);
  if (Q0.is_zero()) {
    va.terminal = false;
    va.reason = "no u*Q term in the special fiber";
    va.weights = {1, 1, 1, 1};
    va.change = CoordinateChange::identity(r);
    return va;
  }
  Matrix H = zero_matrix(K, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Poly d = Q0.derivative(i + 1).derivative(j + 1);
      H[i][j] = d.is_zero() ? K.zero() : d.lead_coeff();
    }
  if (rank(H) >= 2) {
    va.shape = "xy+g(z^2,t)";
    return va;
  }
  Poly l(r);
  for (auto& row : H)
    if (std::any_of(row.begin(), row.end(), [](const Scalar& c) { return !c.is_zero(); })) {
      for (int j = 0; j < 3; ++j) l += Poly::var(r, j + 1).scaled(row[j]);
      break;
    }
  CoordinateChange ch = change_making_first(r, {1, 2, 3}, l);
  if (k == 2) {
    va.shape = "x^2+y^2+g(z,t)";
    return va;
  }
  Poly Fc = ch.apply(F);
  Poly Q1 = u_part(Fc, 1);
  for (auto& [e, c] : Q1.terms())
    if (e[1] == 0) {
      va.shape = "x^2+y^3+yzt+g(z,t)";
      return va;
    }
  if (k == 3) {
    Poly G0(r);
    for (auto& [e, c] : Fc.terms())
      if (e[0] == 0 && e[1] == 0 && e[kT] == 0) G0.add_term(e, c);
    if (!G0.is_zero()) {
      va.shape = "x^2+y^3+yg(z,t)+h(z,t)";
      return va;
    }
  }
  va.terminal = false;
  va.reason = "Q0 is a square, the x1-free part of Q1 vanishes and k = " + std::to_string(k);
  va.weights = {0, 2, 1, 1};
  va.change = ch;
  return va;
}

StandardCheck standard_model_check(const Poly& F, const AmbientSpace& A, uint64_t seed, const SurfaceGermOptions& opt) {
  if (A.kind != AmbientKind::P3 && A.kind != AmbientKind::WP2111)
    throw DomainError("standard model check supports P3 and P(2,1,1,1)");
  if (!generic_fiber_smooth(F)) throw DomainError("generic fiber is singular");
  StandardCheck out;
  FiberReport fr = fiber_report(F, A);
  if (!fr.reduced || fr.n_components != 1) {
    out.reason = "special fiber is not reduced and k-irreducible";
    return out;
  }
  SingularLocus sl = singular_locus(F, A);
  if (sl.contains_curve) {
    out.reason = "X is singular along a curve";
    return out;
  }
  out.standard = true;
  uint64_t s = seed;
  for (auto& p : sl.points) {
    if (p.vertex) continue;
    SingularityReport rep{p, classify_threefold_point(F, p, s++, 5, opt), ""};
    if (!rep.verdict.is_cdv()) {
      out.standard = false;
      out.reason = "non-cDV point " + p.to_string();
    }
    out.report.push_back(rep);
  }
  if (A.kind == AmbientKind::WP2111) {
    VertexAnalysis va = analyze_vertex(F);
    if (va.k >= 1) {
      Field K = A.ring->field();
      FiberPoint v = rational_point(A.ring, {K.one(), K.zero(), K.zero(), K.zero()});
      SingularityReport rep{v, CdvVerdict{}, va.shape};
      if (va.k == 1) {
        rep.verdict.type = "QuotientHalf111";
      } else if (va.terminal) {
        rep.verdict.type = "TerminalIndex2";
      } else {
        rep.verdict.type = "NotTerminal";
        rep.note = va.reason;
        out.standard = false;
        out.reason = "vertex is not a terminal point of index two";
      }
      out.report.push_back(rep);
    }
  }
  return out;
}

}  // namespace dvr
