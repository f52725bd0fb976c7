#ifndef MUSTAFIN_SCALED_POLYNOMIAL_HPP
#define MUSTAFIN_SCALED_POLYNOMIAL_HPP

#include <string>

#include "mustafin/polynomial.hpp"

namespace mustafin {

/// t^offset * body with a possibly negative offset; stands in for elements
/// of K[x] whose t-denominators are bounded. The ring of body must contain t.
class ScaledPolynomial {
 public:
  explicit ScaledPolynomial(Polynomial body, long offset = 0);

  const Polynomial& body() const { return body_; }
  long offset() const { return offset_; }
  const RingPtr& ring() const { return body_.ring(); }
  bool is_zero() const { return body_.is_zero(); }

  /// Moves every power of t out of body into the offset. Zero stays at
  /// offset 0.
  ScaledPolynomial normalized() const;
  /// Exponent of t in the normalized form; nullopt for zero.
  std::optional<long> valuation() const;
  bool is_integral() const;
  /// The element as an honest polynomial; throws InvalidArgumentError
  /// unless integral.
  Polynomial to_polynomial() const;

  ScaledPolynomial& operator+=(const ScaledPolynomial& o);
  ScaledPolynomial& operator*=(const ScaledPolynomial& o);
  friend ScaledPolynomial operator+(ScaledPolynomial a, const ScaledPolynomial& b) { return a += b; }
  friend ScaledPolynomial operator-(ScaledPolynomial a, const ScaledPolynomial& b) {
    return a += b.negated();
  }
  friend ScaledPolynomial operator*(ScaledPolynomial a, const ScaledPolynomial& b) { return a *= b; }
  ScaledPolynomial negated() const { return ScaledPolynomial(-body_, offset_); }
  ScaledPolynomial pow(unsigned e) const;
  ScaledPolynomial shifted(long k) const { return ScaledPolynomial(body_, offset_ + k); }

  /// Equality of the represented elements.
  friend bool operator==(const ScaledPolynomial& a, const ScaledPolynomial& b);

  std::string to_string() const;

 private:
  Polynomial body_;
  long offset_;
};

}  // namespace mustafin

#endif  // MUSTAFIN_SCALED_POLYNOMIAL_HPP
