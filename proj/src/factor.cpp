// Factorization of small forms over the coefficient field.
#include <algorithm>

#include "dvr/poly.hpp"

namespace dvr {

namespace {

std::vector<int> used_slots(const Poly& F) {
  std::vector<int> v;
  for (int s = 0; s < kT; ++s)
    if (F.uses(s)) v.push_back(s);
  return v;
}

// Restriction G(s, y) with y fixed to `point` (indexed by ys), as a polynomial in s.
UPoly restrict_line(const Poly& G, int x0, const std::vector<int>& ys, const std::vector<Scalar>& point) {
  Field K = G.field();
  std::vector<Scalar> c(G.total_degree() + 1, K.zero());
  for (auto& [e, v] : G.terms()) {
    Scalar m = v;
    for (size_t j = 0; j < ys.size(); ++j)
      if (e[ys[j]]) m *= point[j].pow(e[ys[j]]);
    c[e[x0]] += m;
  }
  return UPoly(K, std::move(c));
}

struct Quad {
  Scalar b, q;  // s^2 + b s + q
};

std::vector<Quad> monic_quadratic_divisors(const UPoly& g) {
  std::vector<Quad> out;
  auto fs = factor(g);
  std::vector<UPoly> lin;
  for (auto& f : fs) {
    if (f.poly.degree() == 2) out.push_back({f.poly.coeff(1), f.poly.coeff(0)});
    if (f.poly.degree() == 1) lin.push_back(f.poly);
  }
  for (size_t i = 0; i < lin.size(); ++i)
    for (size_t j = i; j < lin.size(); ++j) {
      if (i == j) {
        int m = 0;
        for (auto& f : fs)
          if (f.poly == lin[i]) m = f.mult;
        if (m < 2) continue;
      }
      UPoly p = lin[i] * lin[j];
      out.push_back({p.coeff(1), p.coeff(0)});
    }
  return out;
}

std::vector<Scalar> distinct_roots(const UPoly& g) { return roots(g); }

// Find one factor of degree e (1 or 2) of G, which is monic in x0.
bool find_factor(const Poly& G, int x0, const std::vector<int>& ys, int e, Poly* out) {
  Field K = G.field();
  RingPtr R = G.ring();
  size_t n = ys.size();
  auto unit_point = [&](size_t j) {
    std::vector<Scalar> p(n, K.zero());
    p[j] = K.one();
    return p;
  };
  if (e == 1) {
    std::vector<std::vector<Scalar>> cand(n);
    for (size_t j = 0; j < n; ++j) {
      cand[j] = distinct_roots(restrict_line(G, x0, ys, unit_point(j)));
      if (cand[j].empty()) return false;
    }
    std::vector<size_t> idx(n, 0);
    for (;;) {
      Poly H = Poly::var(R, x0);
      for (size_t j = 0; j < n; ++j) H += Poly::var(R, ys[j]).scaled(-cand[j][idx[j]]);
      if (divides(H, G, nullptr)) {
        *out = H;
        return true;
      }
      size_t j = 0;
      while (j < n && ++idx[j] == cand[j].size()) idx[j++] = 0;
      if (j == n) return false;
    }
  }
  // e == 2
  std::vector<std::vector<Quad>> diag(n);
  for (size_t j = 0; j < n; ++j) {
    diag[j] = monic_quadratic_divisors(restrict_line(G, x0, ys, unit_point(j)));
    if (diag[j].empty()) return false;
  }
  std::vector<std::pair<size_t, size_t>> pairs;
  std::vector<std::vector<Quad>> cross;
  for (size_t j = 0; j < n; ++j)
    for (size_t k = j + 1; k < n; ++k) {
      std::vector<Scalar> p(n, K.zero());
      p[j] = K.one();
      p[k] = K.one();
      pairs.push_back({j, k});
      cross.push_back(monic_quadratic_divisors(restrict_line(G, x0, ys, p)));
    }
  std::vector<size_t> idx(n, 0);
  for (;;) {
    // for this diagonal choice, enumerate consistent cross choices
    std::vector<std::vector<Scalar>> qcross(pairs.size());
    bool ok = true;
    for (size_t pi = 0; pi < pairs.size() && ok; ++pi) {
      auto [j, k] = pairs[pi];
      Scalar bsum = diag[j][idx[j]].b + diag[k][idx[k]].b;
      for (auto& c : cross[pi])
        if (c.b == bsum) qcross[pi].push_back(c.q - diag[j][idx[j]].q - diag[k][idx[k]].q);
      if (qcross[pi].empty()) ok = false;
    }
    if (ok) {
      std::vector<size_t> cidx(pairs.size(), 0);
      for (;;) {
        Poly X = Poly::var(R, x0);
        Poly H = X * X;
        for (size_t j = 0; j < n; ++j) {
          Poly Y = Poly::var(R, ys[j]);
          H += (X * Y).scaled(diag[j][idx[j]].b) + (Y * Y).scaled(diag[j][idx[j]].q);
        }
        for (size_t pi = 0; pi < pairs.size(); ++pi)
          H += (Poly::var(R, ys[pairs[pi].first]) * Poly::var(R, ys[pairs[pi].second])).scaled(qcross[pi][cidx[pi]]);
        if (divides(H, G, nullptr)) {
          *out = H;
          return true;
        }
        size_t pi = 0;
        while (pi < pairs.size() && ++cidx[pi] == qcross[pi].size()) cidx[pi++] = 0;
        if (pi == pairs.size()) break;
      }
    }
    size_t j = 0;
    while (j < n && ++idx[j] == diag[j].size()) idx[j++] = 0;
    if (j == n) return false;
  }
}

void factor_rec(const Poly& G, int x0, const std::vector<int>& ys, std::vector<Poly>& out) {
  int d = G.total_degree();
  if (d <= 1) {
    if (d == 1) out.push_back(G);
    return;
  }
  if (ys.empty()) {
    for (int i = 0; i < d; ++i) out.push_back(Poly::var(G.ring(), x0));
    return;
  }
  Poly H;
  for (int e = 1; 2 * e <= d; ++e) {
    if (find_factor(G, x0, ys, e, &H)) {
      Poly Q;
      divides(H, G, &Q);
      out.push_back(H);
      factor_rec(Q, x0, ys, out);
      return;
    }
  }
  out.push_back(G);
}

std::vector<PolyFactor> collect(std::vector<Poly> fs) {
  std::vector<PolyFactor> out;
  for (auto& f : fs) {
    Poly m = f.monic();
    bool found = false;
    for (auto& o : out)
      if (o.poly == m) {
        ++o.mult;
        found = true;
      }
    if (!found) out.push_back({m, 1});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    int da = a.poly.total_degree(), db = b.poly.total_degree();
    if (da != db) return da < db;
    return a.poly.to_string() < b.poly.to_string();
  });
  return out;
}

std::vector<PolyFactor> factor_ordinary(const Poly& F) {
  auto vars = used_slots(F);
  if (vars.empty()) return {};
  RingPtr R = F.ring();
  Field K = F.field();
  int d = F.total_degree();
  if (F.min_geo_degree() != d) throw DomainError("factor_over_k: form is not homogeneous");
  int x0 = vars[0];
  std::vector<int> ys(vars.begin() + 1, vars.end());
  // shear y_j -> y_j + r_j x0 so that the x0^d coefficient is nonzero
  std::vector<long> r(ys.size(), 0);
  auto eval_at = [&](const std::vector<long>& rv) {
    Scalar s = K.zero();
    for (auto& [e, c] : F.terms()) {
      Scalar m = c;
      for (size_t j = 0; j < ys.size(); ++j)
        if (e[ys[j]]) m *= K.from_int(rv[j]).pow(e[ys[j]]);
      s += m;
    }
    return s;
  };
  bool found = eval_at(r).is_zero() == false;
  for (long box = 1; !found && box <= 6; ++box) {
    // enumerate tuples in [-box, box]^n
    std::vector<long> cur(ys.size(), -box);
    for (;;) {
      if (eval_at(cur).is_zero() == false) {
        r = cur;
        found = true;
        break;
      }
      size_t j = 0;
      while (j < cur.size() && ++cur[j] > box) cur[j++] = -box;
      if (j == cur.size()) break;
    }
  }
  if (!found) throw Error("factor_over_k: no admissible shear found");
  std::vector<Poly> fwd(R->nvars()), back(R->nvars());
  for (int s = 0; s < R->nvars(); ++s) fwd[s] = back[s] = Poly::var(R, s);
  for (size_t j = 0; j < ys.size(); ++j) {
    fwd[ys[j]] = Poly::var(R, ys[j]) + Poly::var(R, x0).scaled(K.from_int(r[j]));
    back[ys[j]] = Poly::var(R, ys[j]) - Poly::var(R, x0).scaled(K.from_int(r[j]));
  }
  Poly G = F.compose(fwd);
  std::vector<Poly> parts;
  factor_rec(G, x0, ys, parts);
  for (auto& p : parts) p = p.compose(back);
  return collect(parts);
}

Scalar unit_of(const Poly& F, const std::vector<PolyFactor>& fs) {
  Poly prod = Poly::constant(F.ring(), 1);
  for (auto& f : fs) prod = prod * f.poly.pow(f.mult);
  return F.lead_coeff() / prod.coeff(F.lead_exps());
}

}  // namespace

std::vector<PolyFactor> factor_over_k(const Poly& F, Scalar* unit) {
  if (F.is_zero()) throw DomainError("factor_over_k: zero polynomial");
  if (F.uses(kT)) throw DomainError("factor_over_k: polynomial involves t");
  auto vars = used_slots(F);
  if (vars.size() > 4) throw DomainError("factor_over_k: more than 4 variables");
  RingPtr R = F.ring();
  int heavy = -1;
  for (int s : vars)
    if (R->weight(s) != 1) {
      if (R->weight(s) != 2 || heavy >= 0) throw DomainError("factor_over_k: unsupported weights");
      heavy = s;
    }
  std::vector<PolyFactor> out;
  if (heavy < 0) {
    if (F.total_degree() > 4) throw DomainError("factor_over_k: degree exceeds 4");
    out = factor_ordinary(F);
  } else {
    // F = a u^2 + u Q + G in P(2,1,1,1)
    if (F.weighted_degree() > 4) throw DomainError("factor_over_k: weighted degree exceeds 4");
    Field K = F.field();
    Poly Q(R), G(R);
    Scalar a = K.zero();
    for (auto& [e, c] : F.terms()) {
      Exps n = e;
      n[heavy] = 0;
      if (e[heavy] == 2) a = c;
      else if (e[heavy] == 1) Q.add_term(n, c);
      else G.add_term(n, c);
    }
    Poly u = Poly::var(R, heavy);
    if (!a.is_zero()) {
      Poly disc = Q * Q - G.scaled(a * K.from_int(4));
      Scalar inv2a = (a * K.from_int(2)).inverse();
      if (disc.is_zero()) {
        out = {{(u + Q.scaled(inv2a)).monic(), 2}};
      } else {
        Scalar du;
        auto dfs = factor_ordinary(disc);
        bool square = true;
        for (auto& f : dfs) square = square && f.mult % 2 == 0;
        Scalar root;
        if (square && sqrt_in_field(unit_of(disc, dfs), &root)) {
          Poly S = Poly::constant(R, root);
          for (auto& f : dfs) S = S * f.poly.pow(f.mult / 2);
          out = collect({u + (Q - S).scaled(inv2a), u + (Q + S).scaled(inv2a)});
        } else {
          out = {{F.monic(), 1}};
        }
      }
    } else if (Q.is_zero()) {
      out = factor_ordinary(G);
    } else {
      auto qf = factor_ordinary(Q);
      Poly h = Poly::constant(R, 1);
      if (G.is_zero()) {
        h = Q;
      } else {
        for (auto& f : qf) {
          Poly rest = G;
          for (int m = 0; m < f.mult; ++m) {
            Poly q;
            if (!divides(f.poly, rest, &q)) break;
            rest = q;
            h = h * f.poly;
          }
        }
      }
      Poly co;
      divides(h, F, &co);
      std::vector<PolyFactor> hf = h.total_degree() > 0 ? factor_ordinary(h) : std::vector<PolyFactor>{};
      hf.push_back({co.monic(), 1});
      std::vector<Poly> flat;
      for (auto& f : hf)
        for (int m = 0; m < f.mult; ++m) flat.push_back(f.poly);
      out = collect(flat);
    }
  }
  if (unit) *unit = unit_of(F, out);
  return out;
}

std::vector<PolyFactor> linear_factors(const Poly& F) {
  std::vector<PolyFactor> out;
  for (auto& f : factor_over_k(F))
    if (f.poly.total_degree() == 1 && f.poly.weighted_degree() == 1) out.push_back(f);
  return out;
}

}  // namespace dvr
