#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dvr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or domain violation (bad input).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The computation could not reach a verdict within its limits.
class Unresolved : public Error {
 public:
  using Error::Error;
};

struct FieldData;
class Field;

// Element of a field k or of a simple extension k(a) = k[z]/(m).
// Coefficients are stored on the power basis 1, a, ..., a^{n-1}; for F_p the
// entries are integers in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(const FieldData* f, mpq_class v);
  Scalar(const FieldData* f, std::vector<mpq_class> coeffs);

  const FieldData* field_data() const { return f_; }
  Field field() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_prime_element() const;  // lies in the prime field
  const mpq_class& coeff(size_t i) const { return c_[i]; }
  size_t size() const { return c_.size(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b);
  Scalar inverse() const;
  Scalar pow(const mpz_class& e) const;
  Scalar pow(long e) const { return pow(mpz_class(e)); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  bool operator==(const Scalar& b) const;
  bool operator!=(const Scalar& b) const { return !(*this == b); }
  // Total order used only for canonical sorting.
  int compare(const Scalar& b) const;

  std::string to_string() const;
  size_t hash() const;

 private:
  void normalize();
  const FieldData* f_ = nullptr;
  boost::container::small_vector<mpq_class, 1> c_;
};

struct FieldData {
  long p = 0;                       // characteristic; 0 means Q
  int degree = 1;                   // over the prime field
  std::vector<mpq_class> minpoly;   // monic, low to high, size degree+1
  std::string gen = "a";
  int id = 0;
};

// Lightweight handle; field data is interned and lives for the process.
class Field {
 public:
  Field() = default;
  explicit Field(const FieldData* d) : d_(d) {}

  static Field rationals();
  static Field prime(long p);
  // Simple extension of the prime field of `base` by a root of `minpoly`
  // (monic, irreducible over the prime field; not checked here).
  static Field extension(Field base_prime, std::vector<mpq_class> minpoly, const std::string& gen = "");

  const FieldData* data() const { return d_; }
  long characteristic() const { return d_->p; }
  int degree() const { return d_->degree; }
  bool is_prime() const { return d_->degree == 1; }
  bool is_finite() const { return d_->p != 0; }
  mpz_class order() const;  // p^degree for finite fields
  Field prime_field() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  Scalar from_mpq(const mpq_class& v) const;
  Scalar generator() const;
  Scalar from_coeffs(std::vector<mpq_class> c) const;

  bool operator==(const Field& o) const { return d_ == o.d_; }
  bool operator!=(const Field& o) const { return d_ != o.d_; }
  std::string to_string() const;

 private:
  const FieldData* d_ = nullptr;
};

bool is_prime_number(long p);

// Reduce a rational to the canonical representative in F_p.
mpq_class reduce_mod(const mpq_class& v, long p);

}  // namespace dvr
