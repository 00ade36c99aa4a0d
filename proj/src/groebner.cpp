#include "dvr/groebner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "dvr/linalg.hpp"

namespace dvr {

namespace {

using Term = std::pair<Exps, Scalar>;
using GPoly = std::vector<Term>;

struct Ord {
  const std::vector<int>* vars;
  MonoOrder order;
  // true when a > b
  bool greater(const Exps& a, const Exps& b) const {
    if (order == MonoOrder::Lex) {
      for (int v : *vars)
        if (a[v] != b[v]) return a[v] > b[v];
      return false;
    }
    int da = 0, db = 0;
    for (int v : *vars) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da > db;
    for (size_t i = vars->size(); i-- > 0;) {
      int v = (*vars)[i];
      if (a[v] != b[v]) return a[v] < b[v];
    }
    return false;
  }
};

GPoly to_g(const Poly& p, const Ord& o) {
  GPoly g(p.terms().begin(), p.terms().end());
  std::sort(g.begin(), g.end(), [&](const Term& a, const Term& b) { return o.greater(a.first, b.first); });
  return g;
}

Poly from_g(const GPoly& g, const RingPtr& r) {
  Poly p(r);
  for (auto& [e, c] : g) p.add_term(e, c);
  return p;
}

bool divides_mono(const Exps& a, const Exps& b) {
  for (int i = 0; i < kSlots; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps mono_lcm(const Exps& a, const Exps& b) {
  Exps r;
  for (int i = 0; i < kSlots; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exps mono_sub(const Exps& a, const Exps& b) {
  Exps r;
  for (int i = 0; i < kSlots; ++i) r[i] = static_cast<uint16_t>(a[i] - b[i]);
  return r;
}

int mono_deg(const Exps& a) {
  int d = 0;
  for (auto x : a) d += x;
  return d;
}

// f - c * m * g
GPoly sub_mul(const GPoly& f, const Scalar& c, const Exps& m, const GPoly& g, const Ord& o) {
  GPoly r;
  r.reserve(f.size() + g.size());
  size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      r.push_back(f[i++]);
      continue;
    }
    Exps ge;
    for (int k = 0; k < kSlots; ++k) ge[k] = static_cast<uint16_t>(g[j].first[k] + m[k]);
    if (i == f.size() || o.greater(ge, f[i].first)) {
      r.push_back({ge, -(c * g[j].second)});
      ++j;
    } else if (o.greater(f[i].first, ge)) {
      r.push_back(f[i++]);
    } else {
      Scalar v = f[i].second - c * g[j].second;
      if (!v.is_zero()) r.push_back({ge, v});
      ++i;
      ++j;
    }
  }
  return r;
}

void make_monic(GPoly& g) {
  if (g.empty() || g[0].second.is_one()) return;
  Scalar inv = g[0].second.inverse();
  for (auto& t : g) t.second *= inv;
}

GPoly reduce(GPoly f, const std::vector<GPoly>& G, const Ord& o) {
  GPoly out;
  while (!f.empty()) {
    const Exps& m = f[0].first;
    const GPoly* div = nullptr;
    for (auto& g : G)
      if (divides_mono(g[0].first, m)) {
        div = &g;
        break;
      }
    if (div) {
      Scalar c = f[0].second / (*div)[0].second;
      f = sub_mul(f, c, mono_sub(m, (*div)[0].first), *div, o);
    } else {
      out.push_back(f[0]);
      f.erase(f.begin());
    }
  }
  return out;
}

}  // namespace

GroebnerBasis groebner(const std::vector<Poly>& gens, const std::vector<int>& vars, MonoOrder order) {
  GroebnerBasis gb;
  gb.vars = vars;
  gb.order = order;
  if (gens.empty()) throw Error("groebner: empty generator list");
  gb.ring = gens[0].ring();
  for (auto& g : gens)
    for (auto& [e, c] : g.terms())
      for (int s = 0; s < kSlots; ++s)
        if (e[s] && std::find(vars.begin(), vars.end(), s) == vars.end())
          throw Error("groebner: polynomial uses a slot outside the variable list");
  Ord o{&gb.vars, order};
  std::vector<GPoly> G;
  std::vector<std::pair<size_t, size_t>> pairs;
  auto add = [&](GPoly g) {
    make_monic(g);
    G.push_back(std::move(g));
    size_t n = G.size() - 1;
    for (size_t i = 0; i < n; ++i) pairs.push_back({i, n});
  };
  bool unit = false;
  for (auto& p : gens) {
    GPoly g = reduce(to_g(p, o), G, o);
    if (g.empty()) continue;
    add(std::move(g));
    if (mono_deg(G.back()[0].first) == 0) unit = true;
  }
  std::vector<std::vector<bool>> done;
  auto is_done = [&](size_t a, size_t b) {
    if (a > b) std::swap(a, b);
    return b < done.size() && a < done[b].size() && done[b][a];
  };
  auto mark = [&](size_t a, size_t b) {
    if (a > b) std::swap(a, b);
    if (done.size() <= b) done.resize(b + 1);
    if (done[b].size() <= a) done[b].resize(a + 1, false);
    done[b][a] = true;
  };
  while (!pairs.empty() && !unit) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](auto& a, auto& b) {
      return mono_deg(mono_lcm(G[a.first][0].first, G[a.second][0].first)) <
             mono_deg(mono_lcm(G[b.first][0].first, G[b.second][0].first));
    });
    auto [i, j] = *best;
    pairs.erase(best);
    mark(i, j);
    const Exps& li = G[i][0].first;
    const Exps& lj = G[j][0].first;
    Exps l = mono_lcm(li, lj);
    bool coprime = true;
    for (int s = 0; s < kSlots; ++s)
      if (li[s] && lj[s]) coprime = false;
    if (coprime) continue;
    bool chain = false;
    for (size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (divides_mono(G[k][0].first, l) && is_done(i, k) && is_done(j, k)) chain = true;
    }
    if (chain) continue;
    GPoly s = sub_mul(GPoly{}, -G[i][0].second.field().one(), mono_sub(l, li), G[i], o);
    s = sub_mul(s, G[j][0].second.field().one(), mono_sub(l, lj), G[j], o);
    s = reduce(std::move(s), G, o);
    if (s.empty()) continue;
    add(std::move(s));
    if (mono_deg(G.back()[0].first) == 0) unit = true;
  }
  if (unit) {
    gb.basis = {Poly::constant(gb.ring, 1)};
    return gb;
  }
  // minimalize
  std::vector<GPoly> M;
  for (size_t i = 0; i < G.size(); ++i) {
    bool red = false;
    for (size_t j = 0; j < G.size() && !red; ++j) {
      if (i == j) continue;
      if (divides_mono(G[j][0].first, G[i][0].first) && (G[j][0].first != G[i][0].first || j < i)) red = true;
    }
    if (!red) M.push_back(G[i]);
  }
  // interreduce
  for (size_t i = 0; i < M.size(); ++i) {
    std::vector<GPoly> others;
    for (size_t j = 0; j < M.size(); ++j)
      if (j != i) others.push_back(M[j]);
    GPoly head{M[i][0]};
    GPoly tail(M[i].begin() + 1, M[i].end());
    tail = reduce(tail, others, o);
    head.insert(head.end(), tail.begin(), tail.end());
    make_monic(head);
    M[i] = head;
  }
  std::sort(M.begin(), M.end(), [&](const GPoly& a, const GPoly& b) { return o.greater(b[0].first, a[0].first); });
  for (auto& g : M) gb.basis.push_back(from_g(g, gb.ring));
  return gb;
}

bool GroebnerBasis::is_unit() const {
  return basis.size() == 1 && basis[0].size() == 1 && mono_deg(basis[0].lead_exps()) == 0;
}

Poly GroebnerBasis::normal_form(const Poly& f) const {
  Ord o{&vars, order};
  std::vector<GPoly> G;
  for (auto& b : basis) G.push_back(to_g(b, o));
  return from_g(reduce(to_g(f, o), G, o), f.ring());
}

std::vector<Exps> GroebnerBasis::leading_monomials() const {
  Ord o{&vars, order};
  std::vector<Exps> out;
  for (auto& b : basis) out.push_back(to_g(b, o)[0].first);
  return out;
}

int GroebnerBasis::dimension() const {
  if (is_unit()) return -1;
  auto lm = leading_monomials();
  size_t n = vars.size();
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int cnt = __builtin_popcount(mask);
    if (cnt <= best) continue;
    bool ok = true;
    for (auto& m : lm) {
      bool inside = true;
      for (size_t i = 0; i < n && inside; ++i)
        if (m[vars[i]] && !(mask & (1u << i))) inside = false;
      if (inside) {
        ok = false;
        break;
      }
    }
    if (ok) best = cnt;
  }
  return best;
}

std::vector<Exps> GroebnerBasis::standard_monomials() const {
  auto lm = leading_monomials();
  std::vector<Exps> out, frontier{Exps{}};
  std::map<Exps, bool> seen;
  seen[Exps{}] = true;
  while (!frontier.empty()) {
    std::vector<Exps> next;
    for (auto& m : frontier) {
      bool inI = false;
      for (auto& l : lm)
        if (divides_mono(l, m)) inI = true;
      if (inI) continue;
      out.push_back(m);
      if (out.size() > 20000) throw Unresolved("quotient algebra too large");
      for (int v : vars) {
        Exps n = m;
        ++n[v];
        if (!seen[n]) {
          seen[n] = true;
          next.push_back(n);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

long GroebnerBasis::hilbert_function(int n) const {
  auto lm = leading_monomials();
  long count = 0;
  Exps e{};
  std::function<void(size_t, int)> rec = [&](size_t i, int left) {
    if (i + 1 == vars.size()) {
      e[vars[i]] = static_cast<uint16_t>(left);
      bool inI = false;
      for (auto& l : lm)
        if (divides_mono(l, e)) inI = true;
      if (!inI) ++count;
      e[vars[i]] = 0;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[vars[i]] = static_cast<uint16_t>(k);
      rec(i + 1, left - k);
    }
    e[vars[i]] = 0;
  };
  if (vars.empty()) return n == 0 && !is_unit() ? 1 : 0;
  rec(0, n);
  return count;
}

namespace {

// Minimal polynomial of f in K[x]/I (I zero-dimensional with basis G).
UPoly element_minpoly(const GroebnerBasis& G, const std::vector<Exps>& B, const Poly& f) {
  Field K = f.field();
  std::map<Exps, size_t> idx;
  for (size_t i = 0; i < B.size(); ++i) idx[B[i]] = i;
  auto vec = [&](const Poly& p) {
    Row v(B.size(), K.zero());
    for (auto& [e, c] : p.terms()) v[idx.at(e)] = c;
    return v;
  };
  std::vector<Row> pw;
  Poly cur = Poly::constant(f.ring(), 1);
  for (size_t k = 0; k <= B.size(); ++k) {
    pw.push_back(vec(G.normal_form(cur)));
    Matrix M = zero_matrix(K, B.size(), k + 1);
    for (size_t c = 0; c <= k; ++c)
      for (size_t r = 0; r < B.size(); ++r) M[r][c] = pw[c][r];
    auto ns = nullspace(M, k + 1);
    if (!ns.empty()) return UPoly(K, ns[0]).monic();
    cur = G.normal_form(cur * f);
  }
  throw Error("element_minpoly: no dependency");
}

UPoly squarefree_part(const UPoly& p) {
  UPoly r = UPoly::constant(p.field().one());
  for (auto& f : factor(p)) r = r * f.poly;
  return r;
}

}  // namespace

std::vector<SolutionOrbit> solve_zero_dim(const std::vector<Poly>& gens, const std::vector<int>& vars) {
  RingPtr R = gens.at(0).ring();
  Field K = R->field();
  GroebnerBasis G = groebner(gens, vars);
  if (G.is_unit()) return {};
  if (G.dimension() != 0) throw Unresolved("system is not zero-dimensional");
  // radical via univariate eliminants
  {
    auto B = G.standard_monomials();
    std::vector<Poly> rad = G.basis;
    for (int v : vars) {
      UPoly m = squarefree_part(element_minpoly(G, B, Poly::var(R, v)));
      Poly mp(R);
      for (int i = 0; i <= m.degree(); ++i) {
        Exps e{};
        e[v] = static_cast<uint16_t>(i);
        mp.add_term(e, m.coeff(i));
      }
      rad.push_back(mp);
    }
    G = groebner(rad, vars);
  }
  auto B = G.standard_monomials();
  std::mt19937_64 rng(977);
  for (int attempt = 0; attempt < 30; ++attempt) {
    Poly ell(R);
    for (size_t i = 0; i < vars.size(); ++i) {
      long c = attempt == 0 ? static_cast<long>(i * i + 1) : static_cast<long>(rng() % 19) - 9;
      ell += Poly::var(R, vars[i]).scaled(K.from_int(c));
    }
    UPoly mp = element_minpoly(G, B, ell);
    std::vector<SolutionOrbit> out;
    bool ok = true;
    int total = 0;
    for (auto& fa : factor(mp)) {
      Adjoined ad = adjoin_root(fa.poly);
      Field L = ad.emb.to;
      RingPtr RL = R->with_field(L);
      std::vector<Poly> gl;
      for (auto& b : G.basis) gl.push_back(b.map_field(ad.emb, RL));
      gl.push_back(ell.map_field(ad.emb, RL) - Poly::constant(RL, ad.root));
      GroebnerBasis GL = groebner(gl, vars);
      if (GL.basis.size() != vars.size()) {
        ok = false;
        break;
      }
      SolutionOrbit orb;
      orb.emb = ad.emb;
      orb.orbit_size = fa.poly.degree();
      orb.coords.assign(vars.size(), L.zero());
      for (auto& b : GL.basis) {
        // expect x_v - a
        int var = -1;
        Scalar cst = L.zero();
        bool linear = true;
        for (auto& [e, c] : b.terms()) {
          int d = 0, which = -1;
          for (size_t i = 0; i < vars.size(); ++i)
            if (e[vars[i]]) {
              d += e[vars[i]];
              which = static_cast<int>(i);
            }
          if (d == 0) cst = c;
          else if (d == 1 && c.is_one() && var < 0) var = which;
          else linear = false;
        }
        if (!linear || var < 0) {
          ok = false;
          break;
        }
        orb.coords[var] = -cst;
      }
      if (!ok) break;
      total += orb.orbit_size;
      out.push_back(orb);
    }
    if (ok && total == static_cast<int>(B.size())) return out;
  }
  throw Unresolved("solve_zero_dim: no separating linear form found");
}

}  // namespace dvr
