#include "mustafin/ring.hpp"

#include <set>
#include <sstream>

#include "mustafin/errors.hpp"

namespace mustafin {

Ring::Ring(Field field, std::vector<VariableBlock> blocks) : field_(field), blocks_(std::move(blocks)) {
  std::set<std::string> seen_blocks;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (!seen_blocks.insert(blocks_[b].name).second) {
      throw InvalidArgumentError("duplicate block name '" + blocks_[b].name + "'");
    }
    block_vars_.emplace_back();
    for (const auto& name : blocks_[b].variables) {
      if (find_variable(name)) throw InvalidArgumentError("duplicate variable name '" + name + "'");
      block_vars_.back().push_back(names_.size());
      names_.push_back(name);
      block_of_.push_back(b);
    }
  }
  if (names_.size() > kMaxVariables) {
    throw InvalidArgumentError("ring has " + std::to_string(names_.size()) +
                               " variables; at most " + std::to_string(kMaxVariables) +
                               " are supported");
  }
}

std::optional<std::size_t> Ring::find_variable(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Ring::variable(const std::string& name) const {
  auto v = find_variable(name);
  if (!v) throw InvalidArgumentError("unknown variable '" + name + "' in ring " + describe());
  return *v;
}

std::optional<std::size_t> Ring::find_block(const std::string& name) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].name == name) return b;
  }
  return std::nullopt;
}

RingPtr Ring::with_field(const Field& field) const { return make_ring(field, blocks_); }

RingPtr Ring::with_block(VariableBlock block) const {
  auto blocks = blocks_;
  blocks.push_back(std::move(block));
  return make_ring(field_, std::move(blocks));
}

std::vector<std::string> Ring::fresh_names(const std::string& prefix, std::size_t count) const {
  std::vector<std::string> out;
  for (std::size_t k = 1; out.size() < count; ++k) {
    std::string candidate = prefix + std::to_string(k);
    if (!find_variable(candidate)) out.push_back(candidate);
  }
  return out;
}

bool Ring::same_as(const Ring& other) const {
  if (this == &other) return true;
  if (field_ != other.field_ || blocks_.size() != other.blocks_.size()) return false;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].name != other.blocks_[b].name ||
        blocks_[b].variables != other.blocks_[b].variables) {
      return false;
    }
  }
  return true;
}

std::string Ring::describe() const {
  std::ostringstream out;
  out << field_.name() << "[";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out << " | ";
    for (std::size_t k = 0; k < blocks_[b].variables.size(); ++k) {
      if (k) out << ",";
      out << blocks_[b].variables[k];
    }
  }
  out << "]";
  return out.str();
}

RingPtr make_ring(Field field, std::vector<VariableBlock> blocks) {
  return std::make_shared<const Ring>(field, std::move(blocks));
}

namespace {
void check_exponent(unsigned e) {
  if (e > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
}
}  // namespace

Monomial Monomial::variable(std::size_t var, unsigned exponent) {
  Monomial m;
  m.set(var, exponent);
  return m;
}

void Monomial::set(std::size_t var, unsigned exponent) {
  if (var >= kMaxVariables) throw InvalidArgumentError("variable index out of range");
  check_exponent(exponent);
  exps_[var] = static_cast<Exponent>(exponent);
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  for (auto e : exps_) {
    if (e) return false;
  }
  return true;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial q;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    q.exps_[i] = static_cast<Exponent>(other.exps_[i] - exps_[i]);
  }
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial l;
  for (std::size_t i = 0; i < kMaxVariables; ++i) l.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return l;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exps_[i] && other.exps_[i]) return false;
  }
  return true;
}

Monomial& Monomial::operator*=(const Monomial& other) {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned e = static_cast<unsigned>(exps_[i]) + other.exps_[i];
    check_exponent(e);
    exps_[i] = static_cast<Exponent>(e);
  }
  return *this;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

int compare_grevlex(const Monomial& a, const Monomial& b, std::size_t num_vars) {
  unsigned da = 0;
  unsigned db = 0;
  for (std::size_t i = 0; i < num_vars; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = num_vars; i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace mustafin
