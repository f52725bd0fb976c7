#ifndef MUSTAFIN_IDEAL_HPP
#define MUSTAFIN_IDEAL_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mustafin/monomial_order.hpp"
#include "mustafin/polynomial.hpp"

namespace mustafin {

/// Generators plus a lazily computed reduced Groebner basis for one order.
/// Copies share the cache; modifying the generators detaches it.
class IdealHandle {
 public:
  explicit IdealHandle(RingPtr ring, std::vector<Polynomial> generators = {});

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  void add_generator(Polynomial p);

  /// Reduced basis under the canonical grevlex order.
  const std::vector<Polynomial>& groebner_basis() const;
  const std::vector<Polynomial>& groebner_basis(const MonomialOrder& order) const;
  /// Installs a basis known to be the reduced basis for `order`.
  void seed_cache(const MonomialOrder& order, std::vector<Polynomial> basis) const;

  bool is_zero_ideal() const;
  bool is_unit_ideal() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::optional<MonomialOrder> order;
    std::vector<Polynomial> basis;
  };

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Reduced Groebner basis of the generators.
std::vector<Polynomial> groebner_basis(const IdealHandle& ideal, const MonomialOrder& order);

/// Remainder and cofactors of p against the reduced basis of I:
/// p = sum cofactors[k] * basis[k] + remainder.
struct NormalForm {
  Polynomial remainder;
  std::vector<Polynomial> basis;
  std::vector<Polynomial> cofactors;
};
NormalForm normal_form(const Polynomial& p, const IdealHandle& ideal, const MonomialOrder& order);
Polynomial normal_form(const Polynomial& p, const IdealHandle& ideal);

bool ideal_membership(const Polynomial& p, const IdealHandle& ideal);
/// Generator-wise containment I <= J.
bool ideal_contained(const IdealHandle& inner, const IdealHandle& outer);
bool ideal_equal(const IdealHandle& a, const IdealHandle& b);

/// Every S-polynomial of `basis` reduces to zero modulo `basis`.
bool satisfies_buchberger_criterion(const std::vector<Polynomial>& basis, const MonomialOrder& order);

/// I intersected with the subring of the variables outside `variables`.
/// The result lives in the same ring.
IdealHandle eliminate(const IdealHandle& ideal, const std::vector<std::size_t>& variables);
/// Removes whole named blocks.
IdealHandle eliminate_blocks(const IdealHandle& ideal, const std::vector<std::string>& blocks);

/// I : f^infinity by adjoining y with 1 - y*f and eliminating y.
IdealHandle saturate(const IdealHandle& ideal, const Polynomial& f);

/// I : v^infinity for a variable v. When every generator is homogeneous for
/// the positive weights `weights`, uses a weighted grevlex basis with v
/// smallest and divides out powers of v. Inhomogeneous generators are first
/// homogenized with an extra variable; zero weights fall back to saturate.
IdealHandle saturate_variable(const IdealHandle& ideal, std::size_t var,
                              const std::optional<std::vector<unsigned>>& weights = std::nullopt);

/// I intersected with J via w*I + (1-w)*J, eliminating w.
IdealHandle intersect(const IdealHandle& a, const IdealHandle& b);

/// f lies in the radical of I: 1 in I + <1 - y*f>.
bool radical_membership(const Polynomial& f, const IdealHandle& ideal);

/// Some power f^k with k <= max_power lies in I. A true answer certifies
/// radical membership without a new basis computation.
bool power_membership(const Polynomial& f, const IdealHandle& ideal, unsigned max_power);

/// Relations s with sum s_j * row_j = 0.
struct SyzygyBasis {
  RingPtr ring;
  std::vector<std::vector<Polynomial>> relations;
};

/// Generators of the syzygy module of a nonempty row, from a position-over-
/// term Groebner basis with tag variables.
SyzygyBasis syzygies(const std::vector<Polynomial>& row);
/// Sum_j s_j * row_j.
Polynomial apply_relation(const std::vector<Polynomial>& relation, const std::vector<Polynomial>& row);
/// Membership of the vector s in the submodule generated by `generators`.
bool module_membership(const std::vector<Polynomial>& s, const std::vector<std::vector<Polynomial>>& generators);

/// True iff the polynomials have no common zero in projective space over
/// the algebraic closure of the fraction field of the remaining variables
/// (those not listed in `coordinates`). Decided from a basis for the block
/// order coordinates >> parameters: every coordinate needs a pure-power
/// leading monomial.
bool projectively_empty(const std::vector<Polynomial>& polys, const std::vector<std::size_t>& coordinates);

/// One-sided version of projectively_empty: substitutes random nonzero
/// values for the parameters and decides the specialized system exactly.
/// The parameter values with a common zero form a closed set, so one empty
/// specialization proves emptiness; false means every attempt had a zero.
bool projectively_empty_specialized(const std::vector<Polynomial>& polys, const std::vector<std::size_t>& coordinates,
                                    unsigned attempts = 8, std::uint64_t seed = 0x5eed);

}  // namespace mustafin

#endif  // MUSTAFIN_IDEAL_HPP
