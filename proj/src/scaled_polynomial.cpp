#include "mustafin/scaled_polynomial.hpp"

#include "mustafin/errors.hpp"

namespace mustafin {

namespace {

Polynomial t_power(const RingPtr& ring, unsigned k) {
  return Polynomial::monomial(ring, Monomial::variable(uniformizer_index(*ring), k), ring->field().one());
}

}  // namespace

ScaledPolynomial::ScaledPolynomial(Polynomial body, long offset) : body_(std::move(body)), offset_(offset) {
  uniformizer_index(*body_.ring());
  if (body_.is_zero()) offset_ = 0;
}

ScaledPolynomial ScaledPolynomial::normalized() const {
  if (body_.is_zero()) return *this;
  unsigned v = *t_valuation(body_);
  if (v == 0) return *this;
  return ScaledPolynomial(divide_by_variable_power(body_, uniformizer_index(*ring()), v), offset_ + v);
}

std::optional<long> ScaledPolynomial::valuation() const {
  if (body_.is_zero()) return std::nullopt;
  return offset_ + static_cast<long>(*t_valuation(body_));
}

bool ScaledPolynomial::is_integral() const { return body_.is_zero() || *valuation() >= 0; }

Polynomial ScaledPolynomial::to_polynomial() const {
  if (!is_integral()) throw InvalidArgumentError("t^" + std::to_string(offset_) + " * (...) is not t-integral");
  if (body_.is_zero()) return body_;
  if (offset_ >= 0) return body_ * t_power(ring(), static_cast<unsigned>(offset_));
  return divide_by_variable_power(body_, uniformizer_index(*ring()), static_cast<unsigned>(-offset_));
}

ScaledPolynomial& ScaledPolynomial::operator+=(const ScaledPolynomial& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  long low = std::min(offset_, o.offset_);
  Polynomial a = offset_ > low ? body_ * t_power(ring(), static_cast<unsigned>(offset_ - low)) : body_;
  Polynomial b = o.offset_ > low ? o.body_ * t_power(ring(), static_cast<unsigned>(o.offset_ - low)) : o.body_;
  *this = ScaledPolynomial(a + b, low);
  return *this;
}

ScaledPolynomial& ScaledPolynomial::operator*=(const ScaledPolynomial& o) {
  *this = ScaledPolynomial(body_ * o.body_, offset_ + o.offset_);
  return *this;
}

ScaledPolynomial ScaledPolynomial::pow(unsigned e) const {
  return ScaledPolynomial(body_.pow(e), offset_ * static_cast<long>(e));
}

bool operator==(const ScaledPolynomial& a, const ScaledPolynomial& b) {
  ScaledPolynomial x = a.normalized();
  ScaledPolynomial y = b.normalized();
  return x.offset_ == y.offset_ && x.body_ == y.body_;
}

std::string ScaledPolynomial::to_string() const {
  if (offset_ == 0) return body_.to_string();
  return "t^(" + std::to_string(offset_) + ")*(" + body_.to_string() + ")";
}

}  // namespace mustafin
