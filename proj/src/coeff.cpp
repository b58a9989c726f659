#include "logres/coeff.hpp"

namespace logres {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec::FieldSpec(std::uint64_t characteristic) : p_(characteristic) {
  if (p_ != 0 && (!is_prime(p_) || p_ >= (1ULL << 31)))
    throw InputError("characteristic must be 0 or a prime below 2^31, got " + std::to_string(p_));
}

std::string FieldSpec::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

static std::uint64_t reduce_z(const mpz_class& v, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

static std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

Scalar::Scalar(const FieldSpec& f, long v) : f_(f) {
  if (f_.is_rational()) {
    q_ = v;
  } else {
    long p = static_cast<long>(f_.characteristic());
    long r = v % p;
    if (r < 0) r += p;
    r_ = static_cast<std::uint64_t>(r);
  }
}

Scalar::Scalar(const FieldSpec& f, const mpz_class& v) : f_(f) {
  if (f_.is_rational())
    q_ = v;
  else
    r_ = reduce_z(v, f_.characteristic());
}

Scalar::Scalar(const FieldSpec& f, mpq_class v) : f_(f) {
  if (v.get_den() == 0) throw InputError("zero denominator");
  v.canonicalize();
  if (f_.is_rational()) {
    q_ = v;
  } else {
    std::uint64_t p = f_.characteristic();
    std::uint64_t d = reduce_z(v.get_den(), p);
    if (d == 0) throw InputError("denominator divisible by the characteristic");
    r_ = reduce_z(v.get_num(), p) * powmod(d, p - 2, p) % p;
  }
}

Scalar Scalar::parse(const FieldSpec& f, const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw InputError("bad scalar '" + s + "'");
  q.canonicalize();
  return Scalar(f, q);
}

bool Scalar::is_zero() const { return f_.is_rational() ? sgn(q_) == 0 : r_ == 0; }

bool Scalar::is_one() const { return f_.is_rational() ? q_ == 1 : r_ == 1; }

void Scalar::check(const Scalar& o) const {
  if (!(f_ == o.f_)) throw std::logic_error("scalars from different fields");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar s = *this;
  if (f_.is_rational())
    s.q_ = 1 / q_;
  else
    s.r_ = powmod(r_, f_.characteristic() - 2, f_.characteristic());
  return s;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r = one(f_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string Scalar::to_string() const {
  return f_.is_rational() ? q_.get_str() : std::to_string(r_);
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (f_.is_rational())
    s.q_ = -q_;
  else if (r_)
    s.r_ = f_.characteristic() - r_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check(o);
  if (f_.is_rational())
    q_ += o.q_;
  else
    r_ = (r_ + o.r_) % f_.characteristic();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check(o);
  if (f_.is_rational())
    q_ -= o.q_;
  else
    r_ = (r_ + f_.characteristic() - o.r_) % f_.characteristic();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check(o);
  if (f_.is_rational())
    q_ *= o.q_;
  else
    r_ = r_ * o.r_ % f_.characteristic();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  check(o);
  return f_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

bool Scalar::operator<(const Scalar& o) const {
  check(o);
  return f_.is_rational() ? q_ < o.q_ : r_ < o.r_;
}

mpz_class binomial_z(unsigned long n, unsigned long k) {
  mpz_class r;
  if (k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class pd_composition_z(unsigned long p, unsigned long q) {
  mpz_class num, pf, qf;
  mpz_fac_ui(num.get_mpz_t(), p * q);
  mpz_fac_ui(pf.get_mpz_t(), p);
  mpz_fac_ui(qf.get_mpz_t(), q);
  mpz_class den = pf;
  for (unsigned long i = 0; i < p; ++i) den *= qf;
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw std::logic_error("pd composition coefficient is not integral");
  mpz_class r;
  mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

Scalar binomial(const FieldSpec& f, unsigned long n, unsigned long k) {
  return Scalar(f, binomial_z(n, k));
}

Scalar pd_composition_coeff(const FieldSpec& f, unsigned long p, unsigned long q) {
  return Scalar(f, pd_composition_z(p, q));
}

}  // namespace logres
