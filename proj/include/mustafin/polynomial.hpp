#ifndef MUSTAFIN_POLYNOMIAL_HPP
#define MUSTAFIN_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mustafin/ring.hpp"
#include "mustafin/scalar.hpp"

namespace mustafin {

struct Term {
  Monomial monomial;
  Scalar coefficient;
};

/// Exact multivariate polynomial. Terms are nonzero, have distinct
/// monomials and are sorted decreasingly in graded reverse lex order over
/// the ring's variable list, so equal polynomials have equal term lists.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, const Scalar& c);
  static Polynomial constant(RingPtr ring, long c);
  static Polynomial variable(RingPtr ring, std::size_t var);
  static Polynomial variable(RingPtr ring, const std::string& name);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Scalar& c);
  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Largest total degree of a term; 0 for the zero polynomial.
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  const Term& leading_term() const;
  Scalar coefficient_of(const Monomial& m) const;
  /// The constant coefficient (zero if absent).
  Scalar constant_term() const;
  bool involves(std::size_t var) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);
  Polynomial pow(unsigned e) const;
  Polynomial times_monomial(const Monomial& m, const Scalar& c) const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Polynomial(RingPtr ring, std::vector<Term> sorted_terms);
  void require_same_ring(const Polynomial& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Per-block total degree of a polynomial.
struct MultiDegree {
  std::vector<unsigned> degrees;

  friend MultiDegree operator+(const MultiDegree& a, const MultiDegree& b);
  friend bool operator==(const MultiDegree& a, const MultiDegree& b) = default;
};

MultiDegree multidegree_of(const Ring& ring, const Monomial& m);
/// Throws InvalidArgumentError for the zero polynomial or when the terms
/// do not share one multidegree.
MultiDegree multidegree(const Polynomial& p);
bool is_multihomogeneous(const Polynomial& p);
/// Every term has the same weighted degree (weights indexed by variable).
bool is_weighted_homogeneous(const Polynomial& p, const std::vector<int>& weights);
/// Homogeneous with respect to the total degree in the given variables.
bool is_homogeneous_in(const Polynomial& p, const std::vector<std::size_t>& vars);

/// Ring homomorphism sending source variable v to images[v]; every image
/// must live in `target`. Variables without an image are an error if they
/// occur in p.
Polynomial substitute(const Polynomial& p, const RingPtr& target,
                      const std::vector<std::optional<Polynomial>>& images);

/// Substitution by variable name. Unassigned variables are sent to the
/// target variable of the same name unless `total` is set, in which case
/// any unassigned variable occurring in p is an error.
Polynomial substitute(const Polynomial& p, const RingPtr& target,
                      const std::map<std::string, Polynomial>& assignment, bool total = false);

/// Moves p into a ring containing all variables of p (matched by name);
/// coefficients are mapped into the target field.
Polynomial embed(const Polynomial& p, const RingPtr& target);

/// Replaces variable `var` by the constant c.
Polynomial specialize(const Polynomial& p, std::size_t var, const Scalar& c);
Polynomial derivative(const Polynomial& p, std::size_t var);

/// Coefficient reduction into a prime field (same variables).
Polynomial reduce_coefficients(const Polynomial& p, const Field& target);

/// Largest power of variable `var` dividing p; nullopt stands for +infinity
/// (p = 0).
std::optional<unsigned> variable_valuation(const Polynomial& p, std::size_t var);
/// p / var^k; requires var^k | p.
Polynomial divide_by_variable_power(const Polynomial& p, std::size_t var, unsigned k);

/// Index of the uniformizer variable "t"; throws if the ring has none.
std::size_t uniformizer_index(const Ring& ring);
/// Largest v with t^v | p; nullopt for p = 0.
std::optional<unsigned> t_valuation(const Polynomial& p);
/// p / t^{t_valuation(p)}; throws InvalidArgumentError for p = 0.
Polynomial t_saturate_poly(const Polynomial& p);
/// Image under t -> 0, coefficients mapped into the residue field
/// (defaults to the coefficient field of p).
Polynomial reduce_mod_t(const Polynomial& p, std::optional<Field> residue_field = std::nullopt);

using PolynomialMatrix = std::vector<std::vector<Polynomial>>;

/// All 2x2 minors, ordered by row pair (outer) then column pair (inner).
std::vector<Polynomial> minors_2x2(const PolynomialMatrix& rows);

}  // namespace mustafin

#endif  // MUSTAFIN_POLYNOMIAL_HPP
