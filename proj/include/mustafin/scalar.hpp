#ifndef MUSTAFIN_SCALAR_HPP
#define MUSTAFIN_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

namespace mustafin {

class Scalar;

/// Coefficient field: the rationals (characteristic 0) or a prime field F_p.
class Field {
 public:
  static Field rationals() { return Field(0); }
  /// Throws InvalidArgumentError unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_integer(long value) const;
  /// Throws DivisionByZeroError if the denominator vanishes mod p.
  Scalar from_rational(const mpq_class& value) const;
  Scalar from_integer_string(const std::string& decimal) const;

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Exact element of Q (lowest terms, positive denominator) or of F_p.
class Scalar {
 public:
  Scalar() : modulus_(0), value_(mpq_class(0)) {}

  static Scalar rational(mpq_class q);
  static Scalar modular(std::uint64_t residue, std::uint32_t p);
  static Scalar modular_signed(long value, std::uint32_t p);

  Field field() const;
  std::uint32_t modulus() const { return modulus_; }
  bool is_rational() const { return modulus_ == 0; }

  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational_value() const;
  std::uint32_t residue() const;

  /// Image in F_p; throws DivisionByZeroError when p divides the denominator.
  Scalar reduce_mod(std::uint32_t p) const;
  Scalar inverse() const;
  Scalar pow(unsigned e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Integer or a/b; residues are printed in [0, p).
  std::string to_string() const;

 private:
  void require_same_field(const Scalar& o) const;

  std::uint32_t modulus_;
  std::variant<std::uint32_t, mpq_class> value_;
};

}  // namespace mustafin

#endif  // MUSTAFIN_SCALAR_HPP
