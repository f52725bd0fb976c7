#include "mustafin/scalar.hpp"

#include "mustafin/errors.hpp"

namespace mustafin {

namespace {

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t e, std::uint32_t p) {
  std::uint32_t result = 1 % p;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

std::uint32_t mpz_mod_u(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw InvalidArgumentError("field characteristic " + std::to_string(p) +
                               " is not a prime below 2^31");
  }
  return Field(p);
}

Scalar Field::zero() const { return from_integer(0); }
Scalar Field::one() const { return from_integer(1); }

Scalar Field::from_integer(long value) const {
  if (p_ == 0) return Scalar::rational(mpq_class(value));
  return Scalar::modular_signed(value, p_);
}

Scalar Field::from_rational(const mpq_class& value) const {
  Scalar q = Scalar::rational(value);
  return p_ == 0 ? q : q.reduce_mod(p_);
}

Scalar Field::from_integer_string(const std::string& decimal) const {
  return from_rational(mpq_class(mpz_class(decimal, 10)));
}

std::string Field::name() const { return p_ == 0 ? "QQ" : "GF(" + std::to_string(p_) + ")"; }

Scalar Scalar::rational(mpq_class q) {
  q.canonicalize();
  Scalar s;
  s.modulus_ = 0;
  s.value_ = std::move(q);
  return s;
}

Scalar Scalar::modular(std::uint64_t residue, std::uint32_t p) {
  Scalar s;
  s.modulus_ = p;
  s.value_ = static_cast<std::uint32_t>(residue % p);
  return s;
}

Scalar Scalar::modular_signed(long value, std::uint32_t p) {
  long r = value % static_cast<long>(p);
  if (r < 0) r += p;
  return modular(static_cast<std::uint64_t>(r), p);
}

Field Scalar::field() const { return modulus_ == 0 ? Field::rationals() : Field::prime(modulus_); }

bool Scalar::is_zero() const {
  if (modulus_ == 0) return std::get<mpq_class>(value_) == 0;
  return std::get<std::uint32_t>(value_) == 0;
}

bool Scalar::is_one() const {
  if (modulus_ == 0) return std::get<mpq_class>(value_) == 1;
  return std::get<std::uint32_t>(value_) == 1 % modulus_;
}

const mpq_class& Scalar::rational_value() const {
  if (modulus_ != 0) throw InvalidArgumentError("scalar is not rational");
  return std::get<mpq_class>(value_);
}

std::uint32_t Scalar::residue() const {
  if (modulus_ == 0) throw InvalidArgumentError("scalar is not a residue");
  return std::get<std::uint32_t>(value_);
}

Scalar Scalar::reduce_mod(std::uint32_t p) const {
  if (modulus_ == p) return *this;
  if (modulus_ != 0) throw RingMismatchError("cannot reduce a residue mod a different prime");
  const auto& q = std::get<mpq_class>(value_);
  std::uint32_t den = mpz_mod_u(q.get_den(), p);
  if (den == 0) {
    throw DivisionByZeroError("denominator of " + to_string() + " is divisible by " +
                              std::to_string(p));
  }
  std::uint32_t num = mpz_mod_u(q.get_num(), p);
  return modular(mul_mod(num, pow_mod(den, p - 2, p), p), p);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZeroError("inverse of zero");
  if (modulus_ == 0) return rational(1 / std::get<mpq_class>(value_));
  return modular(pow_mod(std::get<std::uint32_t>(value_), modulus_ - 2, modulus_), modulus_);
}

Scalar Scalar::pow(unsigned e) const {
  if (modulus_ != 0) return modular(pow_mod(residue(), e, modulus_), modulus_);
  mpq_class r(1);
  const auto& q = std::get<mpq_class>(value_);
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return rational(r);
}

void Scalar::require_same_field(const Scalar& o) const {
  if (modulus_ != o.modulus_) {
    throw RingMismatchError("scalar field mismatch: " + field().name() + " vs " + o.field().name());
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_field(o);
  if (modulus_ == 0) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  } else {
    std::uint32_t a = std::get<std::uint32_t>(value_);
    std::uint32_t b = std::get<std::uint32_t>(o.value_);
    std::uint32_t s = a + b;
    value_ = s >= modulus_ ? s - modulus_ : s;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_field(o);
  if (modulus_ == 0) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  } else {
    std::uint32_t a = std::get<std::uint32_t>(value_);
    std::uint32_t b = std::get<std::uint32_t>(o.value_);
    value_ = a >= b ? a - b : a + modulus_ - b;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_field(o);
  if (modulus_ == 0) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  } else {
    value_ = mul_mod(std::get<std::uint32_t>(value_), std::get<std::uint32_t>(o.value_), modulus_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_field(o);
  return *this *= o.inverse();
}

Scalar Scalar::operator-() const {
  if (modulus_ == 0) return rational(-std::get<mpq_class>(value_));
  std::uint32_t a = std::get<std::uint32_t>(value_);
  return modular(a == 0 ? 0 : modulus_ - a, modulus_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.modulus_ != b.modulus_) return false;
  if (a.modulus_ == 0) return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
  return std::get<std::uint32_t>(a.value_) == std::get<std::uint32_t>(b.value_);
}

std::string Scalar::to_string() const {
  if (modulus_ == 0) return std::get<mpq_class>(value_).get_str();
  return std::to_string(std::get<std::uint32_t>(value_));
}

}  // namespace mustafin
