#include "dvr/ambient.hpp"

#include <algorithm>
#include <set>

#include "dvr/groebner.hpp"

namespace dvr {

namespace {

std::vector<std::string> names_for(AmbientKind k) {
  switch (k) {
    case AmbientKind::P3: return {"x0", "x1", "x2", "x3"};
    case AmbientKind::WP2111: return {"u", "x1", "x2", "x3"};
    case AmbientKind::WP3211: return {"u", "v", "x1", "x2"};
    case AmbientKind::DeterminantalP6: return {"u", "z1", "z2", "z3", "z4", "z5", "z6"};
  }
  return {};
}

std::vector<int> weights_for(AmbientKind k) {
  switch (k) {
    case AmbientKind::P3: return {1, 1, 1, 1};
    case AmbientKind::WP2111: return {2, 1, 1, 1};
    case AmbientKind::WP3211: return {3, 2, 1, 1};
    case AmbientKind::DeterminantalP6: return {1, 1, 1, 1, 1, 1, 1};
  }
  return {};
}

Poly var(const RingPtr& r, int s) { return Poly::var(r, s); }

bool is_wp2111(const RingPtr& r) { return r->weights() == std::vector<int>{2, 1, 1, 1}; }

}  // namespace

AmbientSpace AmbientSpace::make(AmbientKind kind, Field f) {
  AmbientSpace a;
  a.kind = kind;
  a.ring = Ring::make(f, names_for(kind), weights_for(kind));
  if (kind == AmbientKind::DeterminantalP6) {
    auto z = [&](int i) { return var(a.ring, i); };
    Poly t = Poly::t(a.ring);
    a.matrix = {{t * z(1) + z(5), z(2), z(4)}, {z(2), z(3), z(5)}, {z(4), z(5), z(6)}};
  }
  return a;
}

int AmbientSpace::degree() const {
  switch (kind) {
    case AmbientKind::P3: return 3;
    case AmbientKind::WP2111: return 4;
    case AmbientKind::WP3211: return 6;
    case AmbientKind::DeterminantalP6: return 2;
  }
  return 0;
}

std::string AmbientSpace::tag() const {
  switch (kind) {
    case AmbientKind::P3: return "P3";
    case AmbientKind::WP2111: return "WP2111";
    case AmbientKind::WP3211: return "WP3211";
    case AmbientKind::DeterminantalP6: return "P6";
  }
  return "";
}

std::vector<int> AmbientSpace::weight_one_slots() const {
  std::vector<int> s;
  for (int i = 0; i < ring->nvars(); ++i)
    if (ring->weight(i) == 1) s.push_back(i);
  return s;
}

std::vector<Poly> AmbientSpace::minors() const {
  std::vector<Poly> out;
  std::set<std::string> seen;
  for (int r1 = 0; r1 < 3; ++r1)
    for (int r2 = r1 + 1; r2 < 3; ++r2)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = c1 + 1; c2 < 3; ++c2) {
          Poly m = matrix[r1][c1] * matrix[r2][c2] - matrix[r1][c2] * matrix[r2][c1];
          if (m.is_zero()) continue;
          if (seen.insert(m.monic().to_string()).second) out.push_back(m);
        }
  return out;
}

AmbientKind parse_ambient_kind(const std::string& tag) {
  if (tag == "P3") return AmbientKind::P3;
  if (tag == "WP2111" || tag == "P2111") return AmbientKind::WP2111;
  if (tag == "WP3211" || tag == "P3211") return AmbientKind::WP3211;
  if (tag == "P6" || tag == "DeterminantalP6") return AmbientKind::DeterminantalP6;
  throw DomainError("unknown ambient '" + tag + "'");
}

CoordinateChange CoordinateChange::identity(const RingPtr& r) {
  CoordinateChange c;
  c.ring = r;
  for (int i = 0; i < r->nvars(); ++i) {
    c.images.push_back(var(r, i));
    c.inverse.push_back(var(r, i));
  }
  return c;
}

CoordinateChange CoordinateChange::linear(const RingPtr& r, const std::vector<int>& slots, const Matrix& A) {
  auto inv = dvr::inverse(A);
  if (!inv) throw DomainError("coordinate change is not invertible");
  CoordinateChange c = identity(r);
  for (size_t i = 0; i < slots.size(); ++i) {
    Poly a(r), b(r);
    for (size_t j = 0; j < slots.size(); ++j) {
      a += var(r, slots[j]).scaled(A[i][j]);
      b += var(r, slots[j]).scaled((*inv)[i][j]);
    }
    c.images[slots[i]] = a;
    c.inverse[slots[i]] = b;
  }
  return c;
}

CoordinateChange CoordinateChange::from_images(const RingPtr& r, std::vector<Poly> images, std::vector<Poly> inverse) {
  CoordinateChange c;
  c.ring = r;
  c.images = std::move(images);
  c.inverse = std::move(inverse);
  if (static_cast<int>(c.images.size()) != r->nvars() || static_cast<int>(c.inverse.size()) != r->nvars())
    throw DomainError("coordinate change: wrong number of images");
  for (int i = 0; i < r->nvars(); ++i)
    for (auto* v : {&c.images[i], &c.inverse[i]}) {
      if (v->is_zero() || v->weighted_degree() != r->weight(i))
        throw DomainError("coordinate change does not respect weights");
    }
  if (!c.is_consistent()) throw DomainError("coordinate change: inverse does not match");
  return c;
}

Poly CoordinateChange::apply(const Poly& F) const { return F.compose(images); }
Poly CoordinateChange::apply_inverse(const Poly& F) const { return F.compose(inverse); }

CoordinateChange CoordinateChange::then(const CoordinateChange& next) const {
  CoordinateChange c;
  c.ring = ring;
  for (size_t i = 0; i < images.size(); ++i) {
    c.images.push_back(images[i].compose(next.images));
    c.inverse.push_back(next.inverse[i].compose(inverse));
  }
  return c;
}

bool CoordinateChange::is_identity() const {
  for (size_t i = 0; i < images.size(); ++i)
    if (images[i] != var(ring, static_cast<int>(i))) return false;
  return true;
}

bool CoordinateChange::is_consistent() const {
  for (size_t i = 0; i < images.size(); ++i) {
    if (images[i].compose(inverse) != var(ring, static_cast<int>(i))) return false;
    if (inverse[i].compose(images) != var(ring, static_cast<int>(i))) return false;
  }
  return true;
}

std::string CoordinateChange::to_string() const {
  std::string s;
  for (size_t i = 0; i < images.size(); ++i) {
    if (images[i] == var(ring, static_cast<int>(i))) continue;
    if (!s.empty()) s += ", ";
    s += ring->name(static_cast<int>(i)) + " -> " + images[i].to_string();
  }
  return s.empty() ? "identity" : s;
}

Center Center::plane(const Poly& l) { return {CenterKind::Plane, {l}}; }
Center Center::line(const Poly& l1, const Poly& l2) { return {CenterKind::Line, {l1, l2}}; }

Center Center::point(const RingPtr& r, const std::vector<Scalar>& p) {
  for (int i = 0; i < r->nvars(); ++i)
    if (r->weight(i) != 1) throw DomainError("point centers need an ambient with unit weights");
  if (static_cast<int>(p.size()) != r->nvars()) throw DomainError("point has the wrong number of coordinates");
  int j = -1;
  for (int i = 0; i < r->nvars(); ++i)
    if (!p[i].is_zero()) j = i;
  if (j < 0) throw DomainError("the zero vector is not a point");
  Center c;
  c.kind = CenterKind::Point;
  for (int i = 0; i < r->nvars(); ++i)
    if (i != j) c.forms.push_back(var(r, i) - var(r, j).scaled(p[i] / p[j]));
  return c;
}

Center Center::from_forms(std::vector<Poly> forms) {
  Center c;
  c.forms = std::move(forms);
  if (c.forms.size() == 1) c.kind = CenterKind::Plane;
  else if (c.forms.size() == 2) c.kind = CenterKind::Line;
  else if (c.forms.size() == 3) c.kind = CenterKind::Point;
  else throw DomainError("a center is cut by 1, 2 or 3 linear forms");
  return c;
}

int Center::dim() const { return 3 - static_cast<int>(forms.size()); }

std::string Center::kind_name() const {
  switch (kind) {
    case CenterKind::Plane: return "plane";
    case CenterKind::Line: return "line";
    case CenterKind::Point: return "point";
  }
  return "";
}

std::string Center::to_string() const {
  std::string s = kind_name() + "(";
  for (size_t i = 0; i < forms.size(); ++i) s += (i ? ", " : "") + forms[i].to_string();
  return s + ")";
}

StandardCenter move_center_to_standard(const Center& c, const AmbientSpace& A) {
  const RingPtr& r = A.ring;
  size_t expected = c.kind == CenterKind::Plane ? 1 : c.kind == CenterKind::Line ? 2 : 3;
  if (c.forms.size() != expected) throw DomainError("center kind does not match its number of forms");
  auto slots = A.weight_one_slots();
  size_t m = slots.size();
  Matrix M = zero_matrix(r->field(), c.forms.size(), m);
  for (size_t i = 0; i < c.forms.size(); ++i) {
    check_same_ring(c.forms[i], Poly(r));
    for (auto& [e, v] : c.forms[i].terms()) {
      if (e[kT] || geo_degree(e) != 1) throw DomainError("center forms must be t-free and linear");
      int s = -1;
      for (int k = 0; k < kT; ++k)
        if (e[k]) s = k;
      auto it = std::find(slots.begin(), slots.end(), s);
      if (it == slots.end()) throw DomainError("center forms must involve only the weight-one variables");
      M[i][m - 1 - static_cast<size_t>(it - slots.begin())] = v;
    }
  }
  auto piv = rref(M);
  if (piv.size() != c.forms.size()) throw DomainError("dependent center forms");
  Matrix T = zero_matrix(r->field(), m, m);
  for (size_t i = 0; i < m; ++i) T[i][i] = r->field().one();
  StandardCenter out;
  for (size_t i = 0; i < piv.size(); ++i) {
    size_t pc = m - 1 - piv[i];
    for (size_t j = 0; j < m; ++j) T[pc][j] = M[i][m - 1 - j];
    out.slots.push_back(slots[pc]);
  }
  std::sort(out.slots.begin(), out.slots.end());
  // x' = T x, so x = T^{-1} x'
  auto Ti = dvr::inverse(T);
  out.change = CoordinateChange::linear(r, slots, *Ti);
  return out;
}

int axial_multiplicity(const Poly& F, int truncation) {
  int best = kAxialInfinite;
  for (auto& [e, c] : F.terms()) {
    if (e[0] != 2 || geo_degree(e) != 2) continue;
    best = std::min(best, static_cast<int>(e[kT]));
  }
  return best > truncation ? kAxialInfinite : best;
}

std::pair<Poly, TransformStep> elementary_transform(const Poly& F, const Center& c, const AmbientSpace& A) {
  if (A.kind != AmbientKind::P3) throw DomainError("elementary transforms act on P3; use weighted_transform");
  check_same_ring(F, Poly(A.ring));
  if (F.is_zero()) throw DomainError("zero equation");
  F.weighted_degree();
  StandardCenter st = move_center_to_standard(c, A);
  const RingPtr& r = A.ring;
  Poly Fp = st.change.apply(F);
  TransformStep s;
  s.center = c.to_string();
  s.change = st.change;
  s.weights.assign(r->nvars(), 0);
  int mu = INT_MAX;
  for (auto& [e, v] : Fp.terms()) {
    int d = e[kT];
    for (int sl : st.slots) d += e[sl];
    mu = std::min(mu, d);
  }
  Poly G = Fp;
  std::vector<Poly> scale;
  for (int i = 0; i < r->nvars(); ++i) scale.push_back(var(r, i));
  for (int sl : st.slots) {
    G = G.substitute_scale(sl, 1);
    s.weights[sl] = 1;
    scale[sl] = Poly::t(r) * var(r, sl);
  }
  int cc = G.t_content();
  Poly Fplus = G.div_t(cc);
  if (Fplus.is_zero()) throw Error("transform produced the zero equation");
  for (auto& im : st.change.images) s.substitution.push_back(im.compose(scale));
  s.t_removed = cc;
  s.mu_before = mu;
  s.trivial = cc == 0;
  int n = 3, d = c.dim();
  s.discrepancy = {{"K_A:F", n - d}, {"K_A:G", d + 1}, {"f*(K+X):F", mu - 1}, {"g*X+:G", 3 - mu}};
  s.before = F;
  s.after = Fplus;
  return {Fplus, s};
}

std::pair<Poly, TransformStep> weighted_transform(const Poly& F, const std::vector<int>& weights) {
  const RingPtr& r = F.ring();
  if (static_cast<int>(weights.size()) != r->nvars()) throw DomainError("one weight per variable is required");
  for (int w : weights)
    if (w < 0) throw DomainError("negative weights");
  if (F.is_zero()) throw DomainError("zero equation");
  F.weighted_degree();
  TransformStep s;
  s.weights = weights;
  s.change = CoordinateChange::identity(r);
  std::string wl = "weights(";
  Poly G = F;
  int total = 0;
  for (int i = 0; i < r->nvars(); ++i) {
    G = G.substitute_scale(i, weights[i]);
    total += weights[i];
    s.substitution.push_back(var(r, i) * Poly::t(r).pow(weights[i]));
    wl += (i ? "," : "") + std::to_string(weights[i]);
  }
  s.center = wl + ")";
  int cc = G.t_content();
  Poly Fplus = G.div_t(cc);
  s.t_removed = cc;
  s.trivial = cc == 0;
  s.criterion_ok = cc >= total;
  int mu = INT_MAX;
  for (auto& [e, v] : F.terms()) {
    int d = e[kT];
    for (int i = 0; i < r->nvars(); ++i) d += weights[i] * e[i];
    mu = std::min(mu, d);
  }
  s.mu_before = mu;
  if (is_wp2111(r)) {
    s.k_before = axial_multiplicity(F);
    s.k_after = axial_multiplicity(Fplus);
  }
  s.before = F;
  s.after = Fplus;
  return {Fplus, s};
}

bool check_generic_fiber_identity(const Poly& F, const TransformStep& s) {
  Poly lhs = F.compose(s.substitution);
  Poly rhs = s.after * Poly::t(s.after.ring()).pow(s.t_removed);
  return lhs == rhs;
}

std::vector<Poly> veronese_images(const RingPtr& wp, const RingPtr& p6) {
  (void)p6;
  auto x = [&](int i) { return var(wp, i); };
  return {x(0), x(1) * x(1) - x(2) * x(3), x(1) * x(2), x(2) * x(2), x(1) * x(3), x(2) * x(3), x(3) * x(3)};
}

namespace {

Matrix quad_matrix(const Poly& S) {
  Field K = S.field();
  Scalar half = K.from_int(2).inverse();
  Matrix B = zero_matrix(K, 3, 3);
  for (auto& [e, c] : S.terms()) {
    std::vector<int> idx;
    for (int i = 1; i <= 3; ++i)
      for (int k = 0; k < e[i]; ++k) idx.push_back(i - 1);
    if (idx.size() != 2 || e[0] || e[kT]) throw DomainError("shape mismatch: S1 is not a ternary quadric");
    if (idx[0] == idx[1]) B[idx[0]][idx[0]] += c;
    else {
      B[idx[0]][idx[1]] += c * half;
      B[idx[1]][idx[0]] += c * half;
    }
  }
  return B;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  Field K = a[0][0].field();
  Matrix r = zero_matrix(K, a.size(), b[0].size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b[0].size(); ++j)
      for (size_t k = 0; k < b.size(); ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Matrix transpose(const Matrix& a) {
  Matrix r = zero_matrix(a[0][0].field(), a[0].size(), a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

std::optional<std::vector<Scalar>> conic_point(const Matrix& B) {
  Field K = B[0][0].field();
  auto value = [&](const std::vector<Scalar>& p) {
    Scalar v = K.zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v += B[i][j] * p[i] * p[j];
    return v;
  };
  long box = 24;
  if (K.is_prime() && K.is_finite() && K.characteristic() < 200) box = K.characteristic();
  for (long h = 1; h <= box; ++h)
    for (long a = -h; a <= h; ++a)
      for (long b = -h; b <= h; ++b)
        for (long c = 0; c <= h; ++c) {
          if (std::max({std::labs(a), std::labs(b), c}) != h) continue;
          std::vector<Scalar> p = {K.from_int(a), K.from_int(b), K.from_int(c)};
          if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero()) continue;
          if (value(p).is_zero()) return p;
        }
  return std::nullopt;
}

// Linear T with S(T y) = alpha (y1^2 - y2 y3).
std::optional<std::pair<Matrix, Scalar>> normalize_conic(const Poly& S) {
  Matrix B = quad_matrix(S);
  if (determinant(B).is_zero()) throw DomainError("shape mismatch: S1 has rank at most 2");
  auto P = conic_point(B);
  if (!P) return std::nullopt;
  Field K = S.field();
  int k = 0;
  while ((*P)[k].is_zero()) ++k;
  Matrix T1 = zero_matrix(K, 3, 3);
  int col = 0;
  for (int i = 0; i < 3; ++i)
    if (i != k) T1[i][col++] = K.one();
  for (int i = 0; i < 3; ++i) T1[i][2] = (*P)[i];
  Matrix B1 = mat_mul(transpose(T1), mat_mul(B, T1));
  Scalar a = B1[0][2] + B1[0][2], b = B1[1][2] + B1[1][2];
  // w1 = y1 or y2, w2 = -(a y1 + b y2), w3 = y3
  Matrix Mw = zero_matrix(K, 3, 3);
  if (!b.is_zero()) Mw[0][0] = K.one();
  else Mw[0][1] = K.one();
  Mw[1][0] = -a;
  Mw[1][1] = -b;
  Mw[2][2] = K.one();
  Matrix T2 = *dvr::inverse(Mw);
  Matrix B2 = mat_mul(transpose(T2), mat_mul(B1, T2));
  Scalar alpha = B2[0][0], beta = B2[0][1] + B2[0][1], gamma = B2[1][1];
  Matrix T3 = zero_matrix(K, 3, 3);
  T3[0][0] = T3[1][1] = T3[2][2] = K.one();
  T3[2][0] = beta;
  T3[2][1] = gamma;
  Matrix T4 = zero_matrix(K, 3, 3);
  T4[0][0] = T4[1][1] = K.one();
  T4[2][2] = alpha;
  return std::make_pair(mat_mul(mat_mul(T1, T2), mat_mul(T3, T4)), alpha);
}

// degree-2 monomials of P(2,1,1,1) in z-coordinates
Poly z_of_quadratic(const Exps& e, const RingPtr& p6) {
  auto z = [&](int i) { return Poly::var(p6, i); };
  int a = e[1], b = e[2], c = e[3];
  if (a == 2) return z(1) + z(5);
  if (a == 1 && b == 1) return z(2);
  if (b == 2) return z(3);
  if (a == 1 && c == 1) return z(4);
  if (b == 1 && c == 1) return z(5);
  if (c == 2) return z(6);
  throw Error("z_of_quadratic: not a quadratic monomial");
}

// degree-4 monomial split into two quadratic monomials, avoiding x1^2 when possible
Poly z_of_quartic(const Exps& e, const RingPtr& p6) {
  static const std::vector<std::array<int, 3>> order = {{1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}, {2, 0, 0}};
  for (auto& m1 : order)
    for (auto& m2 : order) {
      bool ok = true;
      Exps a{}, b{};
      for (int i = 0; i < 3; ++i) {
        if (m1[i] + m2[i] != e[i + 1]) ok = false;
        a[i + 1] = static_cast<uint16_t>(m1[i]);
        b[i + 1] = static_cast<uint16_t>(m2[i]);
      }
      if (ok) return z_of_quadratic(a, p6) * z_of_quadratic(b, p6);
    }
  throw Error("z_of_quartic: not a quartic monomial");
}

}  // namespace

DeterminantalModel construct_determinantal_model(const Poly& F) {
  const RingPtr& r = F.ring();
  if (!is_wp2111(r)) throw DomainError("construct_determinantal_model needs an equation in P(2,1,1,1)");
  if (F.weighted_degree() != 4) throw DomainError("shape mismatch: weighted degree must be 4");
  Field K = r->field();
  Poly F0 = F.special_fiber();
  if (F0.is_zero() || F0.uses(0)) throw DomainError("shape mismatch: special fiber must be a u-free S1*S2");
  Poly H = (F - F0).div_t(1);
  Scalar a = K.zero();
  Poly q(r);
  for (auto& [e, c] : H.terms()) {
    if (e[0] == 2) {
      if (e[kT]) throw DomainError("shape mismatch: u^2 must appear exactly with t^1");
      a = c;
    } else if (e[0] == 1) {
      Exps g = e;
      g[0] = 0;
      q.add_term(g, c);
    }
  }
  if (a.is_zero()) throw DomainError("shape mismatch: no t*u^2 term (axial multiplicity is not 1)");
  auto fs = factor_over_k(F0);
  std::vector<Poly> cands;
  for (auto& f : fs)
    if (f.poly.total_degree() == 2) cands.push_back(f.poly);
  if (cands.empty() || !(fs.size() == 2 || (fs.size() == 1 && fs[0].mult == 2)))
    throw DomainError("shape mismatch: special fiber is not a product of two conics");
  std::optional<std::pair<Matrix, Scalar>> norm;
  bool had_rank3 = false;
  Poly std_form = var(r, 1) * var(r, 1) - var(r, 2) * var(r, 3);
  for (auto& S : cands) {
    if (S.monic() == std_form.monic()) {
      Matrix I = zero_matrix(K, 3, 3);
      I[0][0] = I[1][1] = I[2][2] = K.one();
      norm = std::make_pair(I, S.lead_coeff() / std_form.lead_coeff());
      had_rank3 = true;
      break;
    }
  }
  for (auto& S : cands) {
    if (norm) break;
    try {
      norm = normalize_conic(S);
      had_rank3 = true;
    } catch (const DomainError&) {
      continue;
    }
    if (norm) break;
  }
  if (!had_rank3) throw DomainError("shape mismatch: S1 has rank at most 2");
  if (!norm) throw DomainError("shape mismatch: no k-rational point found on S1");
  DeterminantalModel M;
  CoordinateChange lin = CoordinateChange::linear(r, {1, 2, 3}, norm->first);
  Poly qn = lin.apply(q).scaled((a + a).inverse());
  std::vector<Poly> im, inv;
  for (int i = 0; i < 4; ++i) {
    im.push_back(var(r, i));
    inv.push_back(var(r, i));
  }
  im[0] = var(r, 0) - qn;
  inv[0] = var(r, 0) + qn;
  CoordinateChange shift;
  shift.ring = r;
  shift.images = im;
  shift.inverse = inv;
  M.change = lin.then(shift);
  Poly Fn = M.change.apply(F);
  Poly S1 = var(r, 1) * var(r, 1) - var(r, 2) * var(r, 3);
  Poly F0n = Fn.special_fiber();
  Poly S2(r);
  if (!divides(S1, F0n, &S2)) throw Error("construct_determinantal_model: normalization failed");
  Poly Hn = (Fn - F0n).div_t(1);
  Poly G = Hn - Poly::monomial(r, exps_of({{0, 2}}), a);
  if (G.uses(0)) throw Error("construct_determinantal_model: completing the square failed");
  M.S1 = S1;
  M.S2 = S2;
  M.G = G;
  M.u2_coeff = a;
  M.ambient = AmbientSpace::make(AmbientKind::DeterminantalP6, K);
  RingPtr p6 = M.ambient.ring;
  Poly Lfull(p6), Qfull(p6);
  for (auto& [e, c] : S2.terms()) Lfull += z_of_quadratic(e, p6).scaled(c);
  for (auto& [e, c] : G.terms()) {
    Exps g = e;
    g[kT] = 0;
    Qfull += z_of_quartic(g, p6).scaled(c) * Poly::t(p6).pow(e[kT]);
  }
  Poly z1 = var(p6, 1), u = var(p6, 0), t = Poly::t(p6);
  M.FA = z1 * Lfull + t * (u * u).scaled(a) + t * Qfull;
  if (M.FA.compose(veronese_images(r, p6)) != Fn) throw Error("construct_determinantal_model: z-rewrite mismatch");
  Poly Fs = M.FA.substitute_scale(1, 1);
  M.Fplus = Fs.div_t(Fs.t_content());
  auto drop_z1 = [&](const Poly& p) {
    Poly o(p6);
    for (auto& [e, c] : p.terms())
      if (!e[1]) o.add_term(e, c);
    return o;
  };
  M.L = drop_z1(Lfull);
  M.Q = drop_z1(Qfull);
  Poly rest = M.Fplus - z1 * M.L - (u * u).scaled(a) - M.Q;
  if (!rest.is_zero() && rest.t_content() < 1) throw Error("construct_determinantal_model: residual not divisible by t");
  M.R = rest.is_zero() ? rest : rest.div_t(1);
  std::vector<Poly> fib;
  for (auto& m : M.ambient.minors()) fib.push_back(m.special_fiber());
  bool ok = true;
  for (auto& f : fib)
    if (f.uses(0) || f.uses(1)) ok = false;
  if (ok) {
    auto GB = groebner(fib, {2, 3, 4, 5, 6});
    for (int n = 0; n <= 6; ++n)
      if (GB.hilbert_function(n) != 4 * n + 1) ok = false;
  }
  M.special_fiber_ok = ok;
  return M;
}

}  // namespace dvr
