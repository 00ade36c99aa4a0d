#include "dvr/field.hpp"

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace dvr {

namespace {

std::mutex g_mu;
std::deque<std::unique_ptr<FieldData>>& registry() {
  static std::deque<std::unique_ptr<FieldData>> r;
  return r;
}

const FieldData* intern(FieldData d) {
  std::lock_guard<std::mutex> lk(g_mu);
  auto& r = registry();
  for (auto& e : r) {
    if (e->p == d.p && e->degree == d.degree && e->minpoly == d.minpoly) return e.get();
  }
  d.id = static_cast<int>(r.size());
  if (d.degree > 1 && d.gen.empty()) d.gen = "a" + std::to_string(d.id);
  r.push_back(std::make_unique<FieldData>(std::move(d)));
  return r.back().get();
}

// Prime field helpers on raw coefficient vectors.
using Vec = std::vector<mpq_class>;

mpq_class pnorm(const mpq_class& v, long p) { return p ? reduce_mod(v, p) : v; }

mpq_class pinv(const mpq_class& v, long p) {
  if (!p) return 1 / v;
  mpz_class a = v.get_num(), m = p, r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) throw Error("inverse of zero in F_p");
  return mpq_class(r);
}

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b over the prime field
Vec pmod(Vec a, const Vec& b, long p) {
  trim(a);
  mpq_class il = pinv(b.back(), p);
  while (a.size() >= b.size()) {
    mpq_class q = pnorm(a.back() * il, p);
    size_t sh = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[sh + i] = pnorm(a[sh + i] - q * b[i], p);
    trim(a);
  }
  return a;
}

Vec pmul(const Vec& a, const Vec& b, long p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto& x : r) x = pnorm(x, p);
  trim(r);
  return r;
}

Vec psub(const Vec& a, const Vec& b, long p) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  for (auto& x : r) x = pnorm(x, p);
  trim(r);
  return r;
}

// Inverse of a modulo m by extended Euclid.
Vec pinvmod(const Vec& a, const Vec& m, long p) {
  Vec r0 = m, r1 = pmod(a, m, p);
  Vec s0, s1{1};
  if (r1.empty()) throw Error("division by zero in field extension");
  while (!r1.empty()) {
    // q = r0 / r1
    Vec q, r = r0;
    mpq_class il = pinv(r1.back(), p);
    if (r.size() >= r1.size()) q.assign(r.size() - r1.size() + 1, 0);
    while (r.size() >= r1.size() && !r.empty()) {
      mpq_class c = pnorm(r.back() * il, p);
      size_t sh = r.size() - r1.size();
      q[sh] = c;
      for (size_t i = 0; i < r1.size(); ++i) r[sh + i] = pnorm(r[sh + i] - c * r1[i], p);
      trim(r);
    }
    trim(q);
    Vec s2 = psub(s0, pmul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw Error("element not invertible: modulus reducible");
  mpq_class il = pinv(r0[0], p);
  for (auto& x : s0) x = pnorm(x * il, p);
  return pmod(s0, m, p);
}

}  // namespace

bool is_prime_number(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

mpq_class reduce_mod(const mpq_class& v, long p) {
  mpz_class m = p;
  mpz_class n = v.get_num() % m;
  if (n < 0) n += m;
  if (v.get_den() == 1) return mpq_class(n);
  mpz_class d = v.get_den() % m, di;
  if (mpz_invert(di.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("denominator divisible by the characteristic");
  mpz_class r = (n * di) % m;
  return mpq_class(r);
}

Scalar::Scalar(const FieldData* f, mpq_class v) : f_(f) {
  c_.assign(f->degree, mpq_class(0));
  c_[0] = std::move(v);
  normalize();
}

Scalar::Scalar(const FieldData* f, std::vector<mpq_class> coeffs) : f_(f) {
  if (f->degree > 1 && coeffs.size() > static_cast<size_t>(f->degree)) {
    coeffs = pmod(coeffs, f->minpoly, f->p);
  }
  c_.assign(f->degree, mpq_class(0));
  for (size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = coeffs[i];
  normalize();
}

void Scalar::normalize() {
  if (f_->p)
    for (auto& x : c_) x = reduce_mod(x, f_->p);
}

Field Scalar::field() const { return Field(f_); }

bool Scalar::is_zero() const {
  for (auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Scalar::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Scalar::is_prime_element() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& x : r.c_) x = -x;
  r.normalize();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& b) {
  if (f_ != b.f_) throw Error("field mismatch in scalar addition");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& b) {
  if (f_ != b.f_) throw Error("field mismatch in scalar subtraction");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& b) {
  if (f_ != b.f_) throw Error("field mismatch in scalar multiplication");
  if (f_->degree == 1) {
    c_[0] *= b.c_[0];
    normalize();
    return *this;
  }
  Vec a(c_.begin(), c_.end()), bb(b.c_.begin(), b.c_.end());
  trim(a);
  trim(bb);
  Vec r = pmod(pmul(a, bb, f_->p), f_->minpoly, f_->p);
  c_.assign(f_->degree, mpq_class(0));
  for (size_t i = 0; i < r.size(); ++i) c_[i] = r[i];
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  if (f_->degree == 1) return Scalar(f_, pinv(c_[0], f_->p));
  Vec a(c_.begin(), c_.end());
  trim(a);
  return Scalar(f_, pinvmod(a, f_->minpoly, f_->p));
}

Scalar Scalar::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(f_, mpq_class(1)), b = *this;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r *= b;
    k >>= 1;
    if (k > 0) b *= b;
  }
  return r;
}

bool Scalar::operator==(const Scalar& b) const {
  if (f_ != b.f_) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != b.c_[i]) return false;
  return true;
}

int Scalar::compare(const Scalar& b) const {
  for (size_t i = c_.size(); i-- > 0;) {
    int s = cmp(c_[i], b.c_[i]);
    if (s) return s < 0 ? -1 : 1;
  }
  return 0;
}

std::string Scalar::to_string() const {
  if (f_->degree == 1) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    mpq_class v = c_[i];
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    if (v < 0) v = -v;
    first = false;
    if (i == 0) {
      os << v.get_str();
    } else {
      if (v != 1) os << v.get_str() << "*";
      os << f_->gen;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) return "0";
  return "(" + os.str() + ")";
}

size_t Scalar::hash() const {
  size_t h = static_cast<size_t>(f_->id) * 1469598103934665603ull;
  for (auto& x : c_) {
    h ^= std::hash<std::string>()(x.get_str()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

Field Field::rationals() {
  static const FieldData* q = intern(FieldData{});
  return Field(q);
}

Field Field::prime(long p) {
  if (!is_prime_number(p) || p < 5) throw DomainError("residue characteristic must be a prime >= 5, got " + std::to_string(p));
  FieldData d;
  d.p = p;
  return Field(intern(std::move(d)));
}

Field Field::extension(Field base, std::vector<mpq_class> minpoly, const std::string& gen) {
  FieldData d;
  d.p = base.characteristic();
  for (auto& x : minpoly) x = pnorm(x, d.p);
  trim(minpoly);
  if (minpoly.size() < 2) throw Error("extension polynomial must have degree >= 1");
  mpq_class il = pinv(minpoly.back(), d.p);
  for (auto& x : minpoly) x = pnorm(x * il, d.p);
  d.degree = static_cast<int>(minpoly.size()) - 1;
  if (d.degree == 1) return base.prime_field();
  d.minpoly = std::move(minpoly);
  d.gen = gen;
  return Field(intern(std::move(d)));
}

mpz_class Field::order() const {
  if (!d_->p) throw Error("order of an infinite field");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d_->p), static_cast<unsigned long>(d_->degree));
  return r;
}

Field Field::prime_field() const { return d_->p ? prime(d_->p) : rationals(); }

Scalar Field::zero() const { return Scalar(d_, mpq_class(0)); }
Scalar Field::one() const { return Scalar(d_, mpq_class(1)); }
Scalar Field::from_int(long v) const { return Scalar(d_, mpq_class(v)); }
Scalar Field::from_mpq(const mpq_class& v) const { return Scalar(d_, v); }
Scalar Field::from_coeffs(std::vector<mpq_class> c) const { return Scalar(d_, std::move(c)); }

Scalar Field::generator() const {
  if (d_->degree == 1) throw Error("prime field has no generator");
  std::vector<mpq_class> c(2);
  c[1] = 1;
  return Scalar(d_, c);
}

std::string Field::to_string() const {
  std::string base = d_->p ? "GF(" + std::to_string(d_->p) + ")" : "QQ";
  if (d_->degree == 1) return base;
  std::ostringstream os;
  os << base << "[" << d_->gen << "]/(";
  bool first = true;
  for (size_t i = d_->minpoly.size(); i-- > 0;) {
    const mpq_class& c = d_->minpoly[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    mpq_class a = abs(c);
    first = false;
    if (i == 0) os << a.get_str();
    else {
      if (a != 1) os << a.get_str() << "*";
      os << d_->gen;
      if (i > 1) os << "^" << i;
    }
  }
  os << ")";
  return os.str();
}

}  // namespace dvr
