#ifndef MUSTAFIN_DETAIL_GB_ENGINE_HPP
#define MUSTAFIN_DETAIL_GB_ENGINE_HPP

#include <cstddef>
#include <vector>

#include "mustafin/monomial_order.hpp"
#include "mustafin/polynomial.hpp"

namespace mustafin::detail {

struct EngineStats {
  std::size_t pairs_processed = 0;
  std::size_t zero_reductions = 0;
  std::size_t basis_size = 0;
};

/// Reduced Groebner basis (monic, sorted by increasing leading monomial).
/// Sugar selection with the Gebauer-Moeller criteria. Honors the step cap
/// from MUSTAFIN_GB_STEP_LIMIT.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& generators, const MonomialOrder& order,
                                   EngineStats* stats = nullptr);

/// Full reduction of p modulo `basis` (any generating list, not necessarily
/// a Groebner basis). quotients[i] multiplies basis[i]; p = sum + remainder.
struct Division {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};
Division divide(const Polynomial& p, const std::vector<Polynomial>& basis, const MonomialOrder& order);

/// Remainder only; cheaper than divide.
Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& basis, const MonomialOrder& order);

/// Leading monomial of a nonzero polynomial under `order`.
Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order);

/// Step cap read from the environment; 0 means unlimited.
std::size_t step_limit_from_environment();

}  // namespace mustafin::detail

#endif  // MUSTAFIN_DETAIL_GB_ENGINE_HPP
