#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dvr/field.hpp"
#include "dvr/upoly.hpp"

namespace dvr {

constexpr int kSlots = 8;  // geometric variables occupy slots 0..6, t is slot 7
constexpr int kT = 7;
using Exps = std::array<uint16_t, kSlots>;

int geo_degree(const Exps& e);
int full_degree(const Exps& e);  // geometric degree plus t exponent

// Canonical order: larger geometric degree first, then lexicographically
// larger geometric exponents, then smaller t exponent.
struct CanonicalOrder {
  bool operator()(const Exps& a, const Exps& b) const;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  Ring(Field f, std::vector<std::string> names, std::vector<int> weights);
  static RingPtr make(Field f, std::vector<std::string> names, std::vector<int> weights = {});

  Field field() const { return field_; }
  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }
  int weight(int slot) const { return slot == kT ? 0 : weights_[slot]; }
  const std::string& name(int slot) const;
  int index(const std::string& n) const;  // -1 when absent; kT for "t"
  bool same_as(const Ring& o) const;
  RingPtr with_field(Field f) const;

 private:
  Field field_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

class Poly {
 public:
  using Terms = std::map<Exps, Scalar, CanonicalOrder>;

  Poly() = default;
  explicit Poly(RingPtr r) : r_(std::move(r)) {}
  static Poly constant(RingPtr r, const Scalar& c);
  static Poly constant(RingPtr r, long c);
  static Poly var(RingPtr r, int slot);
  static Poly t(RingPtr r) { return var(std::move(r), kT); }
  static Poly monomial(RingPtr r, const Exps& e, const Scalar& c);

  const RingPtr& ring() const { return r_; }
  Field field() const { return r_->field(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  Scalar coeff(const Exps& e) const;
  void add_term(const Exps& e, const Scalar& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& b);
  Poly& operator-=(const Poly& b);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Scalar& s) const;
  Poly pow(int e) const;
  bool operator==(const Poly& b) const;
  bool operator!=(const Poly& b) const { return !(*this == b); }

  // Degree data
  int total_degree() const;  // geometric, max over terms
  int min_geo_degree() const;
  int degree_in(int slot) const;
  int t_degree() const;
  bool uses(int slot) const;

  // t-adic utilities
  Poly substitute_scale(int slot, int e) const;
  int t_content() const;
  Poly div_t(int c) const;          // exact division by t^c
  Poly special_fiber() const;       // F mod t
  Poly t_coefficient(int m) const;  // F_m, the coefficient of t^m
  Poly truncate_t(int n) const;     // drop t^m with m > n
  int order_at_origin() const;
  Poly initial_part(int d) const;
  int weighted_degree() const;      // throws on inhomogeneous input
  bool is_homogeneous() const;

  Poly derivative(int slot) const;
  // Substitute images for each geometric slot (images.size() == nvars) and for t.
  Poly compose(const std::vector<Poly>& images, const Poly& t_image) const;
  Poly compose(const std::vector<Poly>& images) const;  // t kept as t
  Poly evaluate_t(const Scalar& v) const;
  Poly map_field(const Embedding& e, RingPtr target) const;
  Poly change_ring(RingPtr target) const;  // same slots, new names/field must match
  Scalar lead_coeff() const { return terms_.begin()->second; }
  Exps lead_exps() const { return terms_.begin()->first; }
  Poly monic() const;  // canonical leading coefficient 1

  std::string to_string() const;
  size_t hash() const;

 private:
  RingPtr r_;
  Terms terms_;
};

Exps exps_of(std::initializer_list<std::pair<int, int>> slot_pow);

// Exact multivariate division; returns false when b does not divide a.
bool divides(const Poly& b, const Poly& a, Poly* quotient);

void check_same_ring(const Poly& a, const Poly& b);

struct PolyFactor {
  Poly poly;
  int mult;
};

// Initial part with t promoted to a geometric variable "tau" (appended after the others).
Poly tangent_cone(const Poly& f);

// Factorization of a t-free form (total degree <= 4, at most 4 variables) into
// k-irreducibles. Factors are normalized with leading coefficient 1; `unit`
// receives the leftover constant.
std::vector<PolyFactor> factor_over_k(const Poly& F, Scalar* unit = nullptr);
// Linear factors of a form over its coefficient field (all of them, with multiplicity).
std::vector<PolyFactor> linear_factors(const Poly& F);

}  // namespace dvr
