#include "mustafin/polynomial.hpp"

#include <algorithm>

#include "mustafin/errors.hpp"

namespace mustafin {

namespace {

bool term_greater(const Term& a, const Term& b, std::size_t nv) {
  return compare_grevlex(a.monomial, b.monomial, nv) > 0;
}

}  // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw InvalidArgumentError("polynomial needs a ring");
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> sorted_terms)
    : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c) {
  return monomial(std::move(ring), Monomial(), c);
}

Polynomial Polynomial::constant(RingPtr ring, long c) {
  Scalar s = ring->field().from_integer(c);
  return constant(std::move(ring), s);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t var) {
  if (var >= ring->num_variables()) throw InvalidArgumentError("variable index out of range");
  Scalar one = ring->field().one();
  return monomial(std::move(ring), Monomial::variable(var), one);
}

Polynomial Polynomial::variable(RingPtr ring, const std::string& name) {
  std::size_t v = ring->variable(name);
  return variable(std::move(ring), v);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Scalar& c) {
  if (c.modulus() != ring->field().characteristic()) {
    throw RingMismatchError("coefficient field does not match ring " + ring->describe());
  }
  Polynomial p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const std::size_t nv = ring->num_variables();
  const std::uint32_t ch = ring->field().characteristic();
  for (const auto& t : terms) {
    if (t.coefficient.modulus() != ch) throw RingMismatchError("coefficient field mismatch");
    for (std::size_t v = nv; v < kMaxVariables; ++v) {
      if (t.monomial[v]) throw InvalidArgumentError("monomial uses a variable outside the ring");
    }
  }
  std::sort(terms.begin(), terms.end(),
            [nv](const Term& a, const Term& b) { return term_greater(a, b, nv); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coefficient += t.coefficient;
    } else {
      if (!out.empty() && out.back().coefficient.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coefficient.is_zero()) out.pop_back();
  return Polynomial(std::move(ring), std::move(out));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

unsigned Polynomial::total_degree() const {
  // grevlex sorts by total degree first
  return terms_.empty() ? 0 : terms_.front().monomial.total_degree();
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.monomial[var]);
  return d;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw InvalidArgumentError("zero polynomial has no leading term");
  return terms_.front();
}

Scalar Polynomial::coefficient_of(const Monomial& m) const {
  const std::size_t nv = ring_->num_variables();
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [nv](const Term& t, const Monomial& x) {
    return compare_grevlex(t.monomial, x, nv) > 0;
  });
  if (it != terms_.end() && it->monomial == m) return it->coefficient;
  return ring_->field().zero();
}

Scalar Polynomial::constant_term() const { return coefficient_of(Monomial()); }

bool Polynomial::involves(std::size_t var) const {
  for (const auto& t : terms_) {
    if (t.monomial[var]) return true;
  }
  return false;
}

void Polynomial::require_same_ring(const Polynomial& o) const {
  if (!ring_->same_as(*o.ring_)) {
    throw RingMismatchError("ring mismatch: " + ring_->describe() + " vs " + o.ring_->describe());
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_ring(o);
  const std::size_t nv = ring_->num_variables();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) {
      c = -1;
    } else if (j == o.terms_.size()) {
      c = 1;
    } else {
      c = compare_grevlex(terms_[i].monomial, o.terms_[j].monomial, nv);
    }
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Scalar s = terms_[i].coefficient + o.terms_[j].coefficient;
      if (!s.is_zero()) out.push_back({terms_[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ring(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) prod.push_back({x.monomial * y.monomial, x.coefficient * y.coefficient});
  }
  return Polynomial::from_terms(a.ring_, std::move(prod));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.modulus() != ring_->field().characteristic()) throw RingMismatchError("scalar field mismatch");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Scalar& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  Polynomial r = *this;
  // multiplication by a monomial preserves the grevlex order
  for (auto& t : r.terms_) {
    t.monomial *= m;
    t.coefficient *= c;
  }
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!a.ring_->same_as(*b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].monomial != b.terms_[i].monomial ||
        a.terms_[i].coefficient != b.terms_[i].coefficient) {
      return false;
    }
  }
  return true;
}

MultiDegree operator+(const MultiDegree& a, const MultiDegree& b) {
  if (a.degrees.size() != b.degrees.size()) throw InvalidArgumentError("multidegree size mismatch");
  MultiDegree r = a;
  for (std::size_t i = 0; i < r.degrees.size(); ++i) r.degrees[i] += b.degrees[i];
  return r;
}

MultiDegree multidegree_of(const Ring& ring, const Monomial& m) {
  MultiDegree d;
  d.degrees.assign(ring.num_blocks(), 0);
  for (std::size_t v = 0; v < ring.num_variables(); ++v) d.degrees[ring.block_of(v)] += m[v];
  return d;
}

MultiDegree multidegree(const Polynomial& p) {
  if (p.is_zero()) throw InvalidArgumentError("multidegree of the zero polynomial is undefined");
  MultiDegree d = multidegree_of(*p.ring(), p.terms().front().monomial);
  for (const auto& t : p.terms()) {
    if (!(multidegree_of(*p.ring(), t.monomial) == d)) {
      throw InvalidArgumentError("polynomial is not multihomogeneous");
    }
  }
  return d;
}

bool is_multihomogeneous(const Polynomial& p) {
  if (p.is_zero()) return true;
  MultiDegree d = multidegree_of(*p.ring(), p.terms().front().monomial);
  for (const auto& t : p.terms()) {
    if (!(multidegree_of(*p.ring(), t.monomial) == d)) return false;
  }
  return true;
}

bool is_weighted_homogeneous(const Polynomial& p, const std::vector<int>& weights) {
  std::optional<long> deg;
  for (const auto& t : p.terms()) {
    long d = 0;
    for (std::size_t v = 0; v < weights.size(); ++v) d += static_cast<long>(weights[v]) * t.monomial[v];
    if (deg && *deg != d) return false;
    deg = d;
  }
  return true;
}

bool is_homogeneous_in(const Polynomial& p, const std::vector<std::size_t>& vars) {
  std::optional<unsigned> deg;
  for (const auto& t : p.terms()) {
    unsigned d = 0;
    for (auto v : vars) d += t.monomial[v];
    if (deg && *deg != d) return false;
    deg = d;
  }
  return true;
}

Polynomial substitute(const Polynomial& p, const RingPtr& target,
                      const std::vector<std::optional<Polynomial>>& images) {
  const Ring& src = *p.ring();
  for (const auto& img : images) {
    if (img && !img->ring()->same_as(*target)) {
      throw RingMismatchError("substitution images must live in the target ring");
    }
  }
  // powers of each image, computed lazily
  std::vector<std::vector<Polynomial>> powers(src.num_variables());
  auto power_of = [&](std::size_t v, unsigned e) -> const Polynomial& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(Polynomial::constant(target, 1));
    while (list.size() <= e) list.push_back(list.back() * *images[v]);
    return list[e];
  };
  std::vector<Term> acc;
  for (const auto& term : p.terms()) {
    Polynomial prod = Polynomial::constant(target, target->field().from_rational(
                                                       term.coefficient.is_rational()
                                                           ? term.coefficient.rational_value()
                                                           : mpq_class(term.coefficient.residue())));
    if (!term.coefficient.is_rational() &&
        term.coefficient.modulus() != target->field().characteristic()) {
      throw RingMismatchError("cannot map residues into a different field");
    }
    for (std::size_t v = 0; v < src.num_variables(); ++v) {
      unsigned e = term.monomial[v];
      if (e == 0) continue;
      if (v >= images.size() || !images[v]) {
        throw InvalidArgumentError("variable '" + src.variable_name(v) + "' has no image");
      }
      prod *= power_of(v, e);
    }
    for (auto& t : prod.terms()) acc.push_back(t);
  }
  return Polynomial::from_terms(target, std::move(acc));
}

Polynomial substitute(const Polynomial& p, const RingPtr& target,
                      const std::map<std::string, Polynomial>& assignment, bool total) {
  const Ring& src = *p.ring();
  std::vector<std::optional<Polynomial>> images(src.num_variables());
  for (std::size_t v = 0; v < src.num_variables(); ++v) {
    auto it = assignment.find(src.variable_name(v));
    if (it != assignment.end()) {
      images[v] = it->second;
    } else if (!total) {
      if (auto tv = target->find_variable(src.variable_name(v))) {
        images[v] = Polynomial::variable(target, *tv);
      }
    }
  }
  for (const auto& [name, _] : assignment) {
    if (!src.find_variable(name)) throw InvalidArgumentError("assignment to unknown variable '" + name + "'");
  }
  return substitute(p, target, images);
}

Polynomial embed(const Polynomial& p, const RingPtr& target) {
  const Ring& src = *p.ring();
  std::vector<std::size_t> index(src.num_variables());
  for (std::size_t v = 0; v < src.num_variables(); ++v) {
    auto tv = target->find_variable(src.variable_name(v));
    if (!tv) {
      if (p.involves(v)) {
        throw InvalidArgumentError("variable '" + src.variable_name(v) + "' missing in target ring");
      }
      index[v] = kMaxVariables;
    } else {
      index[v] = *tv;
    }
  }
  std::vector<Term> terms;
  terms.reserve(p.num_terms());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < src.num_variables(); ++v) {
      if (t.monomial[v]) m.set(index[v], t.monomial[v]);
    }
    Scalar c = t.coefficient;
    if (c.modulus() != target->field().characteristic()) {
      if (!c.is_rational()) throw RingMismatchError("cannot map residues into a different field");
      c = c.reduce_mod(target->field().characteristic());
    }
    terms.push_back({m, std::move(c)});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

Polynomial specialize(const Polynomial& p, std::size_t var, const Scalar& c) {
  std::vector<Term> terms;
  terms.reserve(p.num_terms());
  for (const auto& t : p.terms()) {
    Monomial m = t.monomial;
    unsigned e = m[var];
    m.set(var, 0);
    terms.push_back({m, t.coefficient * c.pow(e)});
  }
  return Polynomial::from_terms(p.ring(), std::move(terms));
}

Polynomial derivative(const Polynomial& p, std::size_t var) {
  std::vector<Term> terms;
  const Field& f = p.ring()->field();
  for (const auto& t : p.terms()) {
    unsigned e = t.monomial[var];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    terms.push_back({m, t.coefficient * f.from_integer(e)});
  }
  return Polynomial::from_terms(p.ring(), std::move(terms));
}

Polynomial reduce_coefficients(const Polynomial& p, const Field& target) {
  if (p.ring()->field() == target) return p;
  return embed(p, p.ring()->with_field(target));
}

std::optional<unsigned> variable_valuation(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return std::nullopt;
  unsigned v = ~0u;
  for (const auto& t : p.terms()) v = std::min<unsigned>(v, t.monomial[var]);
  return v;
}

Polynomial divide_by_variable_power(const Polynomial& p, std::size_t var, unsigned k) {
  if (k == 0) return p;
  std::vector<Term> terms = p.terms();
  for (auto& t : terms) {
    if (t.monomial[var] < k) throw InvalidArgumentError("variable power does not divide polynomial");
    t.monomial.set(var, t.monomial[var] - k);
  }
  return Polynomial::from_terms(p.ring(), std::move(terms));
}

std::size_t uniformizer_index(const Ring& ring) {
  auto v = ring.find_variable("t");
  if (!v) throw InvalidArgumentError("ring " + ring.describe() + " has no uniformizer t");
  return *v;
}

std::optional<unsigned> t_valuation(const Polynomial& p) {
  return variable_valuation(p, uniformizer_index(*p.ring()));
}

Polynomial t_saturate_poly(const Polynomial& p) {
  if (p.is_zero()) throw InvalidArgumentError("cannot t-saturate the zero polynomial");
  std::size_t t = uniformizer_index(*p.ring());
  return divide_by_variable_power(p, t, *variable_valuation(p, t));
}

Polynomial reduce_mod_t(const Polynomial& p, std::optional<Field> residue_field) {
  std::size_t t = uniformizer_index(*p.ring());
  Field target = residue_field.value_or(p.ring()->field());
  RingPtr ring = target == p.ring()->field() ? p.ring() : p.ring()->with_field(target);
  std::vector<Term> terms;
  for (const auto& term : p.terms()) {
    if (term.monomial[t]) continue;
    Scalar c = term.coefficient;
    if (c.modulus() != target.characteristic()) {
      if (!c.is_rational()) throw RingMismatchError("cannot map residues into a different field");
      c = c.reduce_mod(target.characteristic());
    }
    terms.push_back({term.monomial, std::move(c)});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

std::vector<Polynomial> minors_2x2(const PolynomialMatrix& rows) {
  if (rows.size() < 2) throw InvalidArgumentError("minors_2x2 needs at least two rows");
  const std::size_t cols = rows.front().size();
  if (cols < 2) throw InvalidArgumentError("minors_2x2 needs at least two columns");
  for (const auto& r : rows) {
    if (r.size() != cols) throw InvalidArgumentError("ragged matrix");
  }
  std::vector<Polynomial> out;
  for (std::size_t r1 = 0; r1 < rows.size(); ++r1) {
    for (std::size_t r2 = r1 + 1; r2 < rows.size(); ++r2) {
      for (std::size_t c1 = 0; c1 < cols; ++c1) {
        for (std::size_t c2 = c1 + 1; c2 < cols; ++c2) {
          out.push_back(rows[r1][c1] * rows[r2][c2] - rows[r2][c1] * rows[r1][c2]);
        }
      }
    }
  }
  return out;
}

}  // namespace mustafin
