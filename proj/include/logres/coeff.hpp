#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace logres {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

// Characteristic 0 (the rationals) or a prime p < 2^31.
class FieldSpec {
 public:
  FieldSpec() = default;
  explicit FieldSpec(std::uint64_t characteristic);

  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  bool operator==(const FieldSpec&) const = default;
  std::string name() const;

 private:
  std::uint64_t p_ = 0;
};

class Scalar {
 public:
  Scalar() = default;
  Scalar(const FieldSpec& f, long v);
  Scalar(const FieldSpec& f, const mpz_class& v);
  Scalar(const FieldSpec& f, mpq_class v);  // canonicalized on entry

  static Scalar zero(const FieldSpec& f) { return Scalar(f, 0L); }
  static Scalar one(const FieldSpec& f) { return Scalar(f, 1L); }
  // "a", "-a", "a/b" (char 0) or an integer reduced mod p.
  static Scalar parse(const FieldSpec& f, const std::string& s);

  const FieldSpec& field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;
  Scalar inverse() const;
  Scalar pow(long e) const;
  std::string to_string() const;
  // Residue in char p; numerator/denominator pair in char 0.
  std::uint64_t residue() const { return r_; }
  const mpq_class& rational() const { return q_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Arbitrary but fixed total order, for use as map keys.
  bool operator<(const Scalar& o) const;

 private:
  void check(const Scalar& o) const;
  FieldSpec f_;
  std::uint64_t r_ = 0;
  mpq_class q_;
};

mpz_class binomial_z(unsigned long n, unsigned long k);
// (pq)!/(p! (q!)^p), exact.
mpz_class pd_composition_z(unsigned long p, unsigned long q);

Scalar binomial(const FieldSpec& f, unsigned long n, unsigned long k);
Scalar pd_composition_coeff(const FieldSpec& f, unsigned long p, unsigned long q);

}  // namespace logres
