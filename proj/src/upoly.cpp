#include "dvr/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "dvr/linalg.hpp"

namespace dvr {

std::mt19937_64& factor_rng() {
  thread_local std::mt19937_64 rng(0x5eed2026ull);
  return rng;
}

UPoly::UPoly(Field f, std::vector<Scalar> c) : f_(f), c_(std::move(c)) { trim(); }

UPoly UPoly::constant(const Scalar& c) { return UPoly(c.field(), {c}); }

UPoly UPoly::monomial(Field f, const Scalar& c, int deg) {
  std::vector<Scalar> v(deg + 1, f.zero());
  v[deg] = c;
  return UPoly(f, std::move(v));
}

UPoly UPoly::from_ints(Field f, const std::vector<long>& c) {
  std::vector<Scalar> v;
  for (long x : c) v.push_back(f.from_int(x));
  return UPoly(f, std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  Field f = a.f_.data() ? a.f_ : b.f_;
  std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), f.zero());
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(f, std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  Field f = a.f_.data() ? a.f_ : b.f_;
  if (a.is_zero() || b.is_zero()) return UPoly(f);
  std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, f.zero());
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(f, std::move(r));
}

UPoly UPoly::scaled(const Scalar& s) const {
  UPoly r = *this;
  for (auto& x : r.c_) x *= s;
  r.trim();
  return r;
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inverse());
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly(f_);
  std::vector<Scalar> r;
  for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * f_.from_int(static_cast<long>(i)));
  return UPoly(f_, std::move(r));
}

Scalar UPoly::eval(const Scalar& x) const {
  Scalar r = f_.zero();
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

UPoly UPoly::compose(const UPoly& g) const {
  UPoly r(f_);
  for (size_t i = c_.size(); i-- > 0;) r = r * g + UPoly::constant(c_[i]);
  return r;
}

UPoly UPoly::shift(const Scalar& s) const {
  return compose(UPoly(f_, {s, f_.one()}));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].to_string();
    if (i > 0) os << "*" << var << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  Field f = b.field();
  if (a.degree() < b.degree()) return {UPoly(f), a};
  std::vector<Scalar> r = a.coeffs();
  std::vector<Scalar> q(a.degree() - b.degree() + 1, f.zero());
  Scalar il = b.lead().inverse();
  const auto& bc = b.coeffs();
  for (int i = a.degree(); i >= b.degree(); --i) {
    if (r[i].is_zero()) continue;
    Scalar c = r[i] * il;
    int sh = i - b.degree();
    q[sh] = c;
    for (int j = 0; j <= b.degree(); ++j)
      if (!bc[j].is_zero()) r[sh + j] -= c * bc[j];
  }
  r.resize(b.degree());
  return {UPoly(f, std::move(q)), UPoly(f, std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divrem(a, b).second; }

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw Error("inexact polynomial division");
  return q;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

void xgcd(const UPoly& a, const UPoly& b, UPoly& g, UPoly& s, UPoly& t) {
  Field f = a.field().data() ? a.field() : b.field();
  UPoly r0 = a, r1 = b, s0 = UPoly::constant(f.one()), s1(f), t0(f), t1 = UPoly::constant(f.one());
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    g = r0;
    s = s0;
    t = t0;
    return;
  }
  Scalar il = r0.lead().inverse();
  g = r0.scaled(il);
  s = s0.scaled(il);
  t = t0.scaled(il);
}

UPoly powmod(const UPoly& base, const mpz_class& e, const UPoly& m) {
  Field f = m.field();
  UPoly r = UPoly::constant(f.one()) % m, b = base % m;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = (r * r) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % m;
  }
  return r;
}

Scalar resultant(UPoly a, UPoly b) {
  Field f = a.field();
  if (a.is_zero() || b.is_zero()) return f.zero();
  Scalar res = f.one();
  while (b.degree() > 0) {
    UPoly r = a % b;
    if (r.is_zero()) return f.zero();
    int m = a.degree(), n = b.degree();
    if ((m * n) % 2) res = -res;
    res *= b.lead().pow(m - r.degree());
    a = std::move(b);
    b = std::move(r);
  }
  return res * b.lead().pow(a.degree());
}

namespace {

bool poly_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    int c = a.coeff(i).compare(b.coeff(i));
    if (c) return c < 0;
  }
  return false;
}

// p-th root of a polynomial whose exponents are all divisible by p (finite field).
UPoly pth_root(const UPoly& c) {
  Field f = c.field();
  long p = f.characteristic();
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(f.degree() - 1));
  std::vector<Scalar> r;
  for (int i = 0; i <= c.degree(); i += static_cast<int>(p)) r.push_back(c.coeff(i).pow(e));
  return UPoly(f, std::move(r));
}

std::vector<UFactor> merge(std::vector<UFactor> v) {
  std::sort(v.begin(), v.end(), [](const UFactor& a, const UFactor& b) {
    if (a.poly != b.poly) return poly_less(a.poly, b.poly);
    return a.mult < b.mult;
  });
  std::vector<UFactor> out;
  for (auto& x : v) {
    if (!out.empty() && out.back().poly == x.poly) out.back().mult += x.mult;
    else out.push_back(x);
  }
  return out;
}

UPoly random_poly(Field f, int deg) {
  auto& rng = factor_rng();
  long p = f.characteristic();
  std::vector<Scalar> c;
  for (int i = 0; i <= deg; ++i) {
    std::vector<mpq_class> v(f.degree());
    for (auto& x : v) x = mpq_class(static_cast<long>(rng() % static_cast<unsigned long>(p)));
    c.push_back(f.from_coeffs(v));
  }
  return UPoly(f, std::move(c));
}

// ---- finite fields: Cantor-Zassenhaus ----

void edf(const UPoly& g, int d, std::vector<UPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  Field f = g.field();
  mpz_class q = f.order(), e;
  mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  for (;;) {
    UPoly a = random_poly(f, g.degree() - 1);
    if (a.degree() < 1) continue;
    UPoly b = powmod(a, e, g) - UPoly::constant(f.one());
    UPoly u = gcd(g, b);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      edf(u, d, out);
      edf(exact_div(g, u), d, out);
      return;
    }
  }
}

std::vector<UPoly> factor_finite_sqfree(const UPoly& f) {
  Field K = f.field();
  mpz_class q = K.order();
  std::vector<UPoly> out;
  UPoly fs = f, x = UPoly::x(K), h = x % f;
  int i = 0;
  while (fs.degree() >= 2 * (i + 1)) {
    ++i;
    h = powmod(h, q, fs);
    UPoly g = gcd(fs, h - x);
    if (g.degree() > 0) {
      edf(g, i, out);
      fs = exact_div(fs, g);
      h = h % fs;
    }
  }
  if (fs.degree() > 0) out.push_back(fs.monic());
  return out;
}

// ---- integers: Zassenhaus with Hensel lifting ----

using ZPoly = std::vector<mpz_class>;  // low to high

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void zmod(ZPoly& a, const mpz_class& m) {
  for (auto& x : a) {
    x %= m;
    if (x < 0) x += m;
  }
  ztrim(a);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  zmod(r, m);
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zmod(r, m);
  return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  if (m != 0) zmod(r, m);
  else ztrim(r);
  return r;
}

// Division by a monic polynomial modulo m.
void zdivrem(const ZPoly& a, const ZPoly& b, const mpz_class& m, ZPoly& q, ZPoly& r) {
  r = a;
  ztrim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  for (size_t i = r.size() - 1;; --i) {
    mpz_class c = r[i];
    if (m != 0) {
      c %= m;
      if (c < 0) c += m;
    }
    size_t sh = i - (b.size() - 1);
    q[sh] = c;
    if (c != 0)
      for (size_t j = 0; j < b.size(); ++j) r[sh + j] -= c * b[j];
    if (i == b.size() - 1) break;
  }
  r.resize(b.size() - 1);
  if (m != 0) {
    zmod(r, m);
    zmod(q, m);
  } else {
    ztrim(r);
    ztrim(q);
  }
}

ZPoly from_fp(const UPoly& a) {
  ZPoly r;
  for (auto& c : a.coeffs()) r.push_back(c.coeff(0).get_num());
  return r;
}

UPoly to_fp(const ZPoly& a, Field f) {
  std::vector<Scalar> c;
  for (auto& x : a) c.push_back(f.from_mpq(mpq_class(x)));
  return UPoly(f, std::move(c));
}

struct Lift {
  ZPoly g, h, s, t;
};

// One quadratic Hensel step from modulus m to m^2.
Lift hensel_step(const ZPoly& f, const Lift& in, const mpz_class& m) {
  mpz_class M = m * m;
  ZPoly e = zsub(f, zmul(in.g, in.h, M), M);
  ZPoly q, r;
  zdivrem(zmul(in.s, e, M), in.h, M, q, r);
  Lift o;
  o.g = zadd(zadd(in.g, zmul(in.t, e, M), M), zmul(q, in.g, M), M);
  o.h = zadd(in.h, r, M);
  ZPoly b = zsub(zadd(zmul(in.s, o.g, M), zmul(in.t, o.h, M), M), ZPoly{1}, M);
  ZPoly c, d;
  zdivrem(zmul(in.s, b, M), o.h, M, c, d);
  o.s = zsub(in.s, d, M);
  o.t = zsub(zsub(in.t, zmul(in.t, b, M), M), zmul(c, o.g, M), M);
  return o;
}

// Lift the monic factorization f = prod(fs) mod p to modulus pk.
void hensel_multi(const ZPoly& f, const std::vector<ZPoly>& fs, long p, const mpz_class& pk,
                  std::vector<ZPoly>& out) {
  if (fs.size() == 1) {
    ZPoly r = f;
    zmod(r, pk);
    out.push_back(r);
    return;
  }
  Field Fp = Field::prime(p);
  size_t k = fs.size() / 2;
  std::vector<ZPoly> A(fs.begin(), fs.begin() + k), B(fs.begin() + k, fs.end());
  mpz_class P = p;
  ZPoly g{1}, h{1};
  for (auto& a : A) g = zmul(g, a, P);
  for (auto& b : B) h = zmul(h, b, P);
  UPoly G, S, T;
  xgcd(to_fp(g, Fp), to_fp(h, Fp), G, S, T);
  Lift L{g, h, from_fp(S), from_fp(T)};
  mpz_class m = P;
  while (m < pk) {
    L = hensel_step(f, L, m);
    m = m * m;
  }
  zmod(L.g, pk);
  zmod(L.h, pk);
  hensel_multi(L.g, A, p, pk, out);
  hensel_multi(L.h, B, p, pk, out);
}

ZPoly symmetric(ZPoly a, const mpz_class& m) {
  mpz_class half = m / 2;
  for (auto& x : a) {
    x %= m;
    if (x < 0) x += m;
    if (x > half) x -= m;
  }
  ztrim(a);
  return a;
}

bool zdivides(const ZPoly& g, const ZPoly& f, ZPoly& q) {
  // g monic
  if (!f.empty() && !g.empty() && g[0] != 0 && f[0] % g[0] != 0) return false;
  ZPoly r;
  zdivrem(f, g, 0, q, r);
  return r.empty();
}

std::vector<UPoly> factor_rational_sqfree(const UPoly& f) {
  Field Q = f.field();
  int n = f.degree();
  if (n <= 1) return {f.monic()};
  // primitive integer polynomial
  mpz_class den = 1;
  for (auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.coeff(0).get_den_mpz_t());
  ZPoly F;
  for (auto& c : f.coeffs()) F.push_back(mpq_class(c.coeff(0) * den).get_num());
  mpz_class cont = 0;
  for (auto& x : F) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), x.get_mpz_t());
  for (auto& x : F) x /= cont;
  mpz_class lc = F.back();
  if (lc < 0) {
    for (auto& x : F) x = -x;
    lc = -lc;
  }
  // monic transform: Ft(x) = lc^{n-1} F(x / lc)
  ZPoly Ft(n + 1);
  mpz_class pw = 1;
  for (int i = n - 1; i >= 0; --i) {
    Ft[i] = F[i] * pw;
    pw *= lc;
  }
  Ft[n] = 1;
  // choose a prime
  long best_p = 0;
  std::vector<UPoly> best;
  int tried = 0;
  for (long p = 5; tried < 6; p += 2) {
    if (!is_prime_number(p)) continue;
    Field Fp = Field::prime(p);
    UPoly fp = to_fp(Ft, Fp);
    if (fp.degree() != n) continue;
    if (gcd(fp, fp.derivative()).degree() > 0) continue;
    ++tried;
    auto fac = factor_finite_sqfree(fp);
    if (best_p == 0 || fac.size() < best.size()) {
      best_p = p;
      best = fac;
    }
    if (best.size() == 1) break;
  }
  if (best.size() == 1) return {f.monic()};
  // Mignotte-style bound
  mpz_class norm2 = 0;
  for (auto& x : Ft) norm2 += x * x;
  mpz_class rt;
  mpz_sqrt(rt.get_mpz_t(), norm2.get_mpz_t());
  rt += 1;
  mpz_class B = rt << n;
  mpz_class pk = best_p;
  while (pk <= 2 * B) pk *= best_p;
  std::vector<ZPoly> modf;
  for (auto& u : best) modf.push_back(from_fp(u));
  std::vector<ZPoly> lifted;
  hensel_multi(Ft, modf, best_p, pk, lifted);
  // recombination
  std::vector<ZPoly> found;
  ZPoly rest = Ft;
  std::vector<ZPoly> pool = lifted;
  size_t s = 1;
  while (2 * s <= pool.size()) {
    bool hit = false;
    std::vector<int> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = static_cast<int>(i);
    for (;;) {
      ZPoly g{1};
      for (int i : idx) g = zmul(g, pool[i], pk);
      g = symmetric(g, pk);
      ZPoly q;
      if (zdivides(g, rest, q)) {
        found.push_back(g);
        rest = q;
        std::vector<ZPoly> np;
        for (size_t i = 0; i < pool.size(); ++i)
          if (std::find(idx.begin(), idx.end(), static_cast<int>(i)) == idx.end()) np.push_back(pool[i]);
        pool = np;
        hit = true;
        break;
      }
      // next combination
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && idx[i] == static_cast<int>(pool.size() - s + i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  if (rest.size() > 1) found.push_back(rest);
  // undo the monic transform: G(x) = pp(Gt(lc x))
  std::vector<UPoly> out;
  for (auto& g : found) {
    std::vector<Scalar> c;
    mpz_class w = 1;
    for (auto& x : g) {
      c.push_back(Q.from_mpq(mpq_class(x * w)));
      w *= lc;
    }
    out.push_back(UPoly(Q, std::move(c)).monic());
  }
  return out;
}

// ---- number fields: Trager ----

UPoly newton_interpolate(Field Q, const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  size_t n = xs.size();
  std::vector<Scalar> c = ys;
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
  UPoly r = UPoly::constant(c[n - 1]);
  for (size_t i = n - 1; i-- > 0;) r = r * UPoly(Q, {-xs[i], Q.one()}) + UPoly::constant(c[i]);
  return r;
}

Scalar element_norm(const Scalar& e) {
  const FieldData* d = e.field_data();
  Field Q = Field(d).prime_field();
  std::vector<Scalar> m, a;
  for (auto& x : d->minpoly) m.push_back(Q.from_mpq(x));
  for (size_t i = 0; i < e.size(); ++i) a.push_back(Q.from_mpq(e.coeff(i)));
  UPoly A(Q, a);
  if (A.is_zero()) return Q.zero();
  return resultant(UPoly(Q, m), A);
}

UPoly poly_norm(const UPoly& g) {
  Field K = g.field(), Q = K.prime_field();
  int D = K.degree() * g.degree();
  std::vector<Scalar> xs, ys;
  for (int i = 0; i <= D; ++i) {
    xs.push_back(Q.from_int(i));
    ys.push_back(element_norm(g.eval(K.from_int(i))));
  }
  return newton_interpolate(Q, xs, ys);
}

std::vector<UPoly> factor_numberfield_sqfree(const UPoly& f) {
  Field K = f.field(), Q = K.prime_field();
  if (f.degree() <= 1) return {f.monic()};
  Scalar a = K.generator();
  for (long s = 0; s < 50; ++s) {
    long sv = (s % 2 == 0) ? s / 2 : -(s + 1) / 2;
    Scalar sh = a * K.from_int(sv);
    UPoly g = f.shift(-sh);
    UPoly N = poly_norm(g);
    if (gcd(N, N.derivative()).degree() > 0) continue;
    std::vector<UPoly> out;
    for (auto& nf : factor_rational_sqfree(N)) {
      std::vector<Scalar> c;
      for (auto& x : nf.coeffs()) c.push_back(K.from_mpq(x.coeff(0)));
      UPoly h = gcd(g, UPoly(K, c));
      if (h.degree() > 0) out.push_back(h.shift(sh).monic());
    }
    return out;
  }
  throw Error("number field factorization: no squarefree norm found");
}

}  // namespace

std::vector<UFactor> squarefree(const UPoly& f0) {
  UPoly f = f0.monic();
  std::vector<UFactor> out;
  if (f.degree() <= 0) return out;
  Field K = f.field();
  if (!K.is_finite()) {
    // Yun
    UPoly fp = f.derivative();
    UPoly a = gcd(f, fp);
    UPoly b = exact_div(f, a), c = exact_div(fp, a);
    UPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
      UPoly g = gcd(b, d);
      if (g.degree() > 0) out.push_back({g, i});
      b = exact_div(b, g);
      c = exact_div(d, g);
      d = c - b.derivative();
      ++i;
    }
    return out;
  }
  long p = K.characteristic();
  UPoly c = gcd(f, f.derivative());
  UPoly w = exact_div(f, c);
  int i = 1;
  while (w.degree() > 0) {
    UPoly y = gcd(w, c);
    UPoly z = exact_div(w, y);
    if (z.degree() > 0) out.push_back({z.monic(), i});
    ++i;
    w = y;
    c = exact_div(c, y);
  }
  if (c.degree() > 0) {
    for (auto& sub : squarefree(pth_root(c))) out.push_back({sub.poly, sub.mult * static_cast<int>(p)});
  }
  return out;
}

std::vector<UFactor> factor(const UPoly& f) {
  if (f.is_zero()) throw Error("factor of zero polynomial");
  std::vector<UFactor> out;
  Field K = f.field();
  for (auto& sq : squarefree(f)) {
    std::vector<UPoly> parts;
    if (sq.poly.degree() == 1) parts = {sq.poly};
    else if (K.is_finite()) parts = factor_finite_sqfree(sq.poly);
    else if (K.is_prime()) parts = factor_rational_sqfree(sq.poly);
    else parts = factor_numberfield_sqfree(sq.poly);
    for (auto& p : parts) out.push_back({p.monic(), sq.mult});
  }
  return merge(out);
}

std::vector<Scalar> roots(const UPoly& f) {
  std::vector<Scalar> r;
  if (f.degree() <= 0) return r;
  for (auto& fa : factor(f))
    if (fa.poly.degree() == 1) r.push_back(-fa.poly.coeff(0));
  return r;
}

bool is_irreducible(const UPoly& f) {
  if (f.degree() <= 0) return false;
  auto fa = factor(f);
  return fa.size() == 1 && fa[0].mult == 1;
}

bool sqrt_in_field(const Scalar& a, Scalar* root) {
  Field K = a.field();
  if (a.is_zero()) {
    if (root) *root = K.zero();
    return true;
  }
  if (K.is_finite()) {
    mpz_class e = (K.order() - 1) / 2;
    if (!a.pow(e).is_one()) return false;
    if (!root) return true;
  }
  auto r = roots(UPoly(K, {-a, K.zero(), K.one()}));
  if (r.empty()) return false;
  if (root) {
    // canonical choice: the smaller of the two roots
    Scalar x = r[0];
    if (r.size() > 1 && r[1].compare(x) < 0) x = r[1];
    *root = x;
  }
  return true;
}

UPoly prime_minpoly(const Scalar& a) {
  Field K = a.field(), P = K.prime_field();
  int n = K.degree();
  std::vector<std::vector<mpq_class>> pw;
  Scalar cur = K.one();
  for (int i = 0; i <= n; ++i) {
    std::vector<mpq_class> v;
    for (size_t j = 0; j < cur.size(); ++j) v.push_back(cur.coeff(j));
    pw.push_back(v);
    // check dependency of pw[0..i]
    Matrix M = zero_matrix(P, n, i + 1);
    for (int c = 0; c <= i; ++c)
      for (int r = 0; r < n; ++r) M[r][c] = P.from_mpq(pw[c][r]);
    auto ns = nullspace(M, i + 1);
    if (!ns.empty()) {
      Row v = ns[0];
      return UPoly(P, v).monic();
    }
    cur *= a;
  }
  throw Error("minimal polynomial not found");
}

Scalar Embedding::map(const Scalar& a) const {
  if (from == to) return a;
  if (from.is_prime()) return to.from_mpq(a.coeff(0));
  Scalar r = to.zero(), pw = to.one();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a.coeff(i) != 0) r += pw * to.from_mpq(a.coeff(i));
    pw *= gen_image;
  }
  return r;
}

UPoly Embedding::map(const UPoly& f) const {
  std::vector<Scalar> c;
  for (auto& x : f.coeffs()) c.push_back(map(x));
  return UPoly(to, std::move(c));
}

Embedding Embedding::identity(Field f) { return Embedding{f, f, f.is_prime() ? f.one() : f.generator()}; }

Embedding Embedding::then(const Embedding& next) const {
  Embedding e;
  e.from = from;
  e.to = next.to;
  e.gen_image = from.is_prime() ? next.to.one() : next.map(gen_image);
  return e;
}

Adjoined adjoin_root(const UPoly& g0) {
  UPoly g = g0.monic();
  Field K = g.field();
  if (g.degree() < 1) throw Error("adjoin_root: constant polynomial");
  if (g.degree() == 1) return {Embedding::identity(K), -g.coeff(0)};
  Field P = K.prime_field();
  if (K.is_prime()) {
    std::vector<mpq_class> m;
    for (auto& c : g.coeffs()) m.push_back(c.coeff(0));
    Field L = Field::extension(P, m);
    return {Embedding{K, L, L.one()}, L.generator()};
  }
  int n = K.degree(), e = g.degree(), N = n * e;
  // Elements of A = K[b]/(g) as UPoly over K of degree < e; flatten to prime coords.
  auto flat = [&](const UPoly& a) {
    Row v(N, P.zero());
    for (int j = 0; j < e; ++j) {
      Scalar c = a.coeff(j);
      for (int i = 0; i < n; ++i) v[j * n + i] = P.from_mpq(c.coeff(i));
    }
    return v;
  };
  UPoly beta = UPoly::x(K);
  for (long c = 1; c < 64; ++c) {
    UPoly gamma = beta + UPoly::constant(K.generator() * K.from_int(c));
    std::vector<Row> pw;
    UPoly cur = UPoly::constant(K.one());
    for (int i = 0; i <= N; ++i) {
      pw.push_back(flat(cur));
      cur = (cur * gamma) % g;
    }
    Matrix M = zero_matrix(P, N, N);
    for (int col = 0; col < N; ++col)
      for (int r = 0; r < N; ++r) M[r][col] = pw[col][r];
    if (rank(M) < static_cast<size_t>(N)) continue;
    // minimal polynomial: gamma^N = sum x_i gamma^i
    auto x = solve(M, pw[N]);
    std::vector<mpq_class> mp(N + 1);
    for (int i = 0; i < N; ++i) mp[i] = -(*x)[i].coeff(0);
    mp[N] = 1;
    Field L = Field::extension(P, mp);
    auto express = [&](const UPoly& a) {
      auto y = solve(M, flat(a));
      std::vector<mpq_class> cc;
      for (auto& s : *y) cc.push_back(s.coeff(0));
      return L.from_coeffs(cc);
    };
    Scalar alpha_img = express(UPoly::constant(K.generator()));
    Scalar beta_img = express(beta);
    return {Embedding{K, L, alpha_img}, beta_img};
  }
  throw Error("adjoin_root: no primitive element found");
}

}  // namespace dvr
