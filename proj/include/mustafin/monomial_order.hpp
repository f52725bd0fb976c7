#ifndef MUSTAFIN_MONOMIAL_ORDER_HPP
#define MUSTAFIN_MONOMIAL_ORDER_HPP

#include <string>
#include <vector>

#include "mustafin/ring.hpp"

namespace mustafin {

/// One block of a product order. Grevlex blocks compare the weighted degree
/// first and break ties reverse-lexicographically from the last listed
/// variable; lex blocks compare exponents in listed order.
struct OrderBlock {
  enum class Kind { lex, grevlex };
  Kind kind = Kind::grevlex;
  std::vector<std::size_t> variables;
  std::vector<unsigned> weights;  // empty means all ones
};

/// Product of blocks, compared block by block. Every ring variable occurs in
/// exactly one block, which makes the order total, multiplicative and a
/// well-order.
class MonomialOrder {
 public:
  MonomialOrder(std::size_t num_variables, std::vector<OrderBlock> blocks);

  static MonomialOrder grevlex(const Ring& ring);
  static MonomialOrder lex(const Ring& ring);
  /// Eliminated variables in a grevlex block ranked above a grevlex block of
  /// the remaining variables.
  static MonomialOrder elimination(const Ring& ring, const std::vector<std::size_t>& eliminated);
  /// Weighted grevlex on all variables with `last` moved to the end of the
  /// tie-break list (the smallest variable).
  static MonomialOrder weighted_grevlex(const Ring& ring, const std::vector<unsigned>& weights,
                                        std::size_t last);

  std::size_t num_variables() const { return num_vars_; }
  const std::vector<OrderBlock>& blocks() const { return blocks_; }
  int compare(const Monomial& a, const Monomial& b) const;
  bool is_elimination_for(const std::vector<std::size_t>& vars) const;
  /// Degree used by the sugar strategy: weights of the first block's kind
  /// applied to all variables.
  unsigned sugar_degree(const Monomial& m) const;

  /// The same order after renaming variable v to perm[v].
  MonomialOrder permuted(const std::vector<std::size_t>& perm) const;

  std::string describe() const;
  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b);

 private:
  std::size_t num_vars_;
  std::vector<OrderBlock> blocks_;
  std::vector<unsigned> sugar_weights_;
};

}  // namespace mustafin

#endif  // MUSTAFIN_MONOMIAL_ORDER_HPP
