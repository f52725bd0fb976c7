#ifndef MUSTAFIN_RING_HPP
#define MUSTAFIN_RING_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mustafin/scalar.hpp"

namespace mustafin {

/// Hard cap on the number of variables of a ring; exponent vectors are
/// stored inline.
inline constexpr std::size_t kMaxVariables = 32;

struct VariableBlock {
  std::string name;
  std::vector<std::string> variables;
};

/// Polynomial ring over a field with variables grouped into named blocks.
/// Immutable after construction; shared between polynomials via RingPtr.
class Ring {
 public:
  Ring(Field field, std::vector<VariableBlock> blocks);

  const Field& field() const { return field_; }
  std::size_t num_variables() const { return names_.size(); }
  const std::string& variable_name(std::size_t var) const { return names_.at(var); }
  const std::vector<std::string>& variable_names() const { return names_; }
  std::optional<std::size_t> find_variable(const std::string& name) const;
  /// Throws InvalidArgumentError for unknown names.
  std::size_t variable(const std::string& name) const;

  const std::vector<VariableBlock>& blocks() const { return blocks_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::optional<std::size_t> find_block(const std::string& name) const;
  std::size_t block_of(std::size_t var) const { return block_of_.at(var); }
  /// Global variable indices of a block, in block order.
  const std::vector<std::size_t>& block_variables(std::size_t block) const {
    return block_vars_.at(block);
  }

  /// Same variables over another field.
  std::shared_ptr<const Ring> with_field(const Field& field) const;
  /// Appends a block; existing variable indices are unchanged.
  std::shared_ptr<const Ring> with_block(VariableBlock block) const;
  /// Picks variable names "<prefix><k>" not yet used in this ring.
  std::vector<std::string> fresh_names(const std::string& prefix, std::size_t count) const;

  /// Same field, same blocks, same names.
  bool same_as(const Ring& other) const;
  std::string describe() const;

 private:
  Field field_;
  std::vector<VariableBlock> blocks_;
  std::vector<std::string> names_;
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<std::size_t>> block_vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(Field field, std::vector<VariableBlock> blocks);

/// Exponent vector with overflow-checked arithmetic.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() { exps_.fill(0); }

  static Monomial variable(std::size_t var, unsigned exponent = 1);

  Exponent operator[](std::size_t var) const { return exps_[var]; }
  void set(std::size_t var, unsigned exponent);
  unsigned total_degree() const;
  bool is_one() const;

  bool divides(const Monomial& other) const;
  /// Requires divides(other); returns other / *this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  Monomial& operator*=(const Monomial& other);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.exps_ != b.exps_; }

  const std::array<Exponent, kMaxVariables>& exponents() const { return exps_; }
  std::size_t hash() const;

 private:
  std::array<Exponent, kMaxVariables> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Graded reverse lexicographic comparison over all variables in index
/// order; the canonical storage order of polynomials. Returns <0, 0, >0.
int compare_grevlex(const Monomial& a, const Monomial& b, std::size_t num_vars);

}  // namespace mustafin

#endif  // MUSTAFIN_RING_HPP
