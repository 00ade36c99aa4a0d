#include "dvr/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dvr {

int geo_degree(const Exps& e) {
  int d = 0;
  for (int i = 0; i < kT; ++i) d += e[i];
  return d;
}

int full_degree(const Exps& e) { return geo_degree(e) + e[kT]; }

bool CanonicalOrder::operator()(const Exps& a, const Exps& b) const {
  int da = geo_degree(a), db = geo_degree(b);
  if (da != db) return da > db;
  for (int i = 0; i < kT; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return a[kT] < b[kT];
}

Exps exps_of(std::initializer_list<std::pair<int, int>> slot_pow) {
  Exps e{};
  for (auto [s, p] : slot_pow) e[s] = static_cast<uint16_t>(e[s] + p);
  return e;
}

Ring::Ring(Field f, std::vector<std::string> names, std::vector<int> weights)
    : field_(f), names_(std::move(names)), weights_(std::move(weights)) {
  if (names_.size() > static_cast<size_t>(kT)) throw Error("too many variables");
  if (weights_.empty()) weights_.assign(names_.size(), 1);
  if (weights_.size() != names_.size()) throw Error("weights/names size mismatch");
}

RingPtr Ring::make(Field f, std::vector<std::string> names, std::vector<int> weights) {
  return std::make_shared<const Ring>(f, std::move(names), std::move(weights));
}

const std::string& Ring::name(int slot) const {
  static const std::string t = "t";
  if (slot == kT) return t;
  return names_.at(slot);
}

int Ring::index(const std::string& n) const {
  if (n == "t") return kT;
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == n) return static_cast<int>(i);
  return -1;
}

bool Ring::same_as(const Ring& o) const {
  return field_ == o.field_ && names_ == o.names_ && weights_ == o.weights_;
}

RingPtr Ring::with_field(Field f) const { return make(f, names_, weights_); }

void check_same_ring(const Poly& a, const Poly& b) {
  if (a.ring().get() == b.ring().get()) return;
  if (!a.ring() || !b.ring() || !a.ring()->same_as(*b.ring()))
    throw DomainError("ambient mismatch between polynomials");
}

Poly Poly::constant(RingPtr r, const Scalar& c) {
  Poly p(std::move(r));
  p.add_term(Exps{}, c);
  return p;
}

Poly Poly::constant(RingPtr r, long c) {
  Scalar s = r->field().from_int(c);
  return constant(std::move(r), s);
}

Poly Poly::var(RingPtr r, int slot) {
  Exps e{};
  e[slot] = 1;
  Scalar one = r->field().one();
  return monomial(std::move(r), e, one);
}

Poly Poly::monomial(RingPtr r, const Exps& e, const Scalar& c) {
  Poly p(std::move(r));
  p.add_term(e, c);
  return p;
}

Scalar Poly::coeff(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field().zero() : it->second;
}

void Poly::add_term(const Exps& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(r_);
  for (auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& b) {
  if (!r_) r_ = b.r_;
  check_same_ring(*this, b);
  for (auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& b) {
  if (!r_) r_ = b.r_;
  check_same_ring(*this, b);
  for (auto& [e, c] : b.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_ring(a, b);
  Poly r(a.r_);
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) {
      Exps e;
      for (int i = 0; i < kSlots; ++i) e[i] = static_cast<uint16_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::scaled(const Scalar& s) const {
  Poly r(r_);
  if (s.is_zero()) return r;
  for (auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
  return r;
}

Poly Poly::pow(int e) const {
  Poly r = constant(r_, 1), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool Poly::operator==(const Poly& b) const {
  if (r_ && b.r_ && !r_->same_as(*b.r_)) return false;
  if (terms_.size() != b.terms_.size()) return false;
  auto i = terms_.begin();
  auto j = b.terms_.begin();
  for (; i != terms_.end(); ++i, ++j)
    if (i->first != j->first || i->second != j->second) return false;
  return true;
}

int Poly::total_degree() const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, geo_degree(e));
  return d;
}

int Poly::min_geo_degree() const {
  int d = 1 << 30;
  for (auto& [e, c] : terms_) d = std::min(d, geo_degree(e));
  return d;
}

int Poly::degree_in(int slot) const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[slot]));
  return d;
}

int Poly::t_degree() const { return degree_in(kT); }

bool Poly::uses(int slot) const {
  for (auto& [e, c] : terms_)
    if (e[slot]) return true;
  return false;
}

Poly Poly::substitute_scale(int slot, int e) const {
  if (slot == kT) throw DomainError("substitute_scale: variable must not be t");
  if (e < 0) throw DomainError("substitute_scale: negative exponent");
  Poly r(r_);
  for (auto& [ex, c] : terms_) {
    Exps n = ex;
    n[kT] = static_cast<uint16_t>(n[kT] + e * ex[slot]);
    r.terms_.emplace(n, c);
  }
  return r;
}

int Poly::t_content() const {
  if (is_zero()) throw DomainError("t_content of the zero polynomial");
  int m = 1 << 30;
  for (auto& [e, c] : terms_) m = std::min(m, static_cast<int>(e[kT]));
  return m;
}

Poly Poly::div_t(int c) const {
  Poly r(r_);
  for (auto& [e, v] : terms_) {
    if (e[kT] < c) throw Error("div_t: not divisible by t^" + std::to_string(c));
    Exps n = e;
    n[kT] = static_cast<uint16_t>(n[kT] - c);
    r.terms_.emplace(n, v);
  }
  return r;
}

Poly Poly::special_fiber() const { return t_coefficient(0); }

Poly Poly::t_coefficient(int m) const {
  Poly r(r_);
  for (auto& [e, v] : terms_)
    if (e[kT] == m) {
      Exps n = e;
      n[kT] = 0;
      r.terms_.emplace(n, v);
    }
  return r;
}

Poly Poly::truncate_t(int n) const {
  Poly r(r_);
  for (auto& [e, v] : terms_)
    if (e[kT] <= n) r.terms_.emplace(e, v);
  return r;
}

int Poly::order_at_origin() const {
  if (is_zero()) throw DomainError("order_at_origin of the zero polynomial");
  int m = 1 << 30;
  for (auto& [e, c] : terms_) m = std::min(m, full_degree(e));
  return m;
}

Poly Poly::initial_part(int d) const {
  if (d != order_at_origin()) throw DomainError("initial_part: degree does not match the order");
  Poly r(r_);
  for (auto& [e, v] : terms_)
    if (full_degree(e) == d) r.terms_.emplace(e, v);
  return r;
}

int Poly::weighted_degree() const {
  if (is_zero()) throw DomainError("weighted_degree of the zero polynomial");
  int d = -1;
  for (auto& [e, c] : terms_) {
    int w = 0;
    for (int i = 0; i < r_->nvars(); ++i) w += e[i] * r_->weights()[i];
    if (d >= 0 && w != d) throw DomainError("inhomogeneous polynomial: weights " + std::to_string(d) + " and " + std::to_string(w));
    d = w;
  }
  return d;
}

bool Poly::is_homogeneous() const {
  try {
    weighted_degree();
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

Poly Poly::derivative(int slot) const {
  Poly r(r_);
  for (auto& [e, c] : terms_) {
    if (!e[slot]) continue;
    Exps n = e;
    n[slot] = static_cast<uint16_t>(n[slot] - 1);
    r.add_term(n, c * field().from_int(e[slot]));
  }
  return r;
}

Poly Poly::compose(const std::vector<Poly>& images, const Poly& t_image) const {
  RingPtr target = t_image.ring();
  Poly r(target);
  // cache of powers per slot
  std::vector<std::vector<Poly>> pw(kSlots);
  auto power = [&](int slot, int k) -> const Poly& {
    const Poly& base = slot == kT ? t_image : images[slot];
    auto& v = pw[slot];
    if (v.empty()) v.push_back(Poly::constant(target, 1));
    while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * base);
    return v[k];
  };
  for (auto& [e, c] : terms_) {
    Poly m = Poly::constant(target, c);
    for (int s = 0; s < kSlots; ++s)
      if (e[s]) m = m * power(s, e[s]);
    r += m;
  }
  return r;
}

Poly Poly::compose(const std::vector<Poly>& images) const { return compose(images, Poly::t(images.at(0).ring())); }

Poly Poly::evaluate_t(const Scalar& v) const {
  Poly r(r_);
  for (auto& [e, c] : terms_) {
    Exps n = e;
    n[kT] = 0;
    r.add_term(n, c * v.pow(e[kT]));
  }
  return r;
}

Poly Poly::map_field(const Embedding& emb, RingPtr target) const {
  Poly r(std::move(target));
  for (auto& [e, c] : terms_) r.add_term(e, emb.map(c));
  return r;
}

Poly Poly::change_ring(RingPtr target) const {
  if (target->field() != field()) throw Error("change_ring: field mismatch");
  Poly r(std::move(target));
  r.terms_ = terms_;
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead_coeff().inverse());
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms_) {
    std::string coef;
    bool neg = false;
    if (c.field().is_prime()) {
      mpq_class v = c.coeff(0);
      if (c.field().is_finite() && v > c.field().characteristic() / 2) v -= c.field().characteristic();
      if (v < 0) {
        neg = true;
        v = -v;
      }
      coef = v.get_str();
    } else {
      coef = c.to_string();
    }
    std::string mono;
    for (int k = 0; k < kSlots; ++k) {
      int s = (k + kT) % kSlots;  // t first
      if (!e[s]) continue;
      if (!mono.empty()) mono += "*";
      mono += r_->name(s);
      if (e[s] > 1) mono += "^" + std::to_string(e[s]);
    }
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    if (mono.empty()) os << coef;
    else if (coef == "1") os << mono;
    else os << coef << "*" << mono;
  }
  return os.str();
}

size_t Poly::hash() const {
  size_t h = 0xcbf29ce484222325ull;
  for (auto& [e, c] : terms_) {
    for (auto x : e) h = (h ^ x) * 0x100000001b3ull;
    h = (h ^ c.hash()) * 0x100000001b3ull;
  }
  return h;
}

namespace {

// Degree-compatible well-order including t, used for division.
bool div_greater(const Exps& a, const Exps& b) {
  int da = full_degree(a), db = full_degree(b);
  if (da != db) return da > db;
  for (int i = 0; i < kSlots; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

Exps div_lead(const Poly& p) {
  Exps best{};
  bool have = false;
  for (auto& [e, c] : p.terms())
    if (!have || div_greater(e, best)) {
      best = e;
      have = true;
    }
  return best;
}

}  // namespace

bool divides(const Poly& b, const Poly& a, Poly* quotient) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  Poly r = a, q(a.ring());
  Exps lb = div_lead(b);
  Scalar lbc_inv = b.coeff(lb).inverse();
  while (!r.is_zero()) {
    Exps lr = div_lead(r);
    Exps m;
    for (int i = 0; i < kSlots; ++i) {
      if (lr[i] < lb[i]) return false;
      m[i] = static_cast<uint16_t>(lr[i] - lb[i]);
    }
    Poly term = Poly::monomial(a.ring(), m, r.coeff(lr) * lbc_inv);
    q += term;
    r -= term * b;
  }
  if (quotient) *quotient = q;
  return true;
}

Poly tangent_cone(const Poly& f) {
  const Ring& R = *f.ring();
  if (R.nvars() >= kT) throw DomainError("tangent_cone: no free slot for tau");
  auto names = R.names();
  auto w = R.weights();
  names.push_back("tau");
  w.push_back(1);
  RingPtr S = Ring::make(R.field(), names, w);
  int tau = R.nvars();
  Poly in = f.initial_part(f.order_at_origin());
  Poly out(S);
  for (auto& [e, c] : in.terms()) {
    Exps g = e;
    g[tau] = e[kT];
    g[kT] = 0;
    out.add_term(g, c);
  }
  return out;
}

}  // namespace dvr
