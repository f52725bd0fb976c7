#include "mustafin/monomial_order.hpp"

#include <sstream>

#include "mustafin/errors.hpp"

namespace mustafin {

MonomialOrder::MonomialOrder(std::size_t num_variables, std::vector<OrderBlock> blocks)
    : num_vars_(num_variables), blocks_(std::move(blocks)), sugar_weights_(num_variables, 1) {
  std::vector<int> seen(num_vars_, 0);
  for (auto& b : blocks_) {
    if (b.variables.empty()) throw InvalidArgumentError("empty order block");
    if (b.weights.empty()) b.weights.assign(b.variables.size(), 1);
    if (b.weights.size() != b.variables.size()) throw InvalidArgumentError("weight count mismatch");
    for (std::size_t k = 0; k < b.variables.size(); ++k) {
      std::size_t v = b.variables[k];
      if (v >= num_vars_) throw InvalidArgumentError("order references unknown variable");
      if (seen[v]++) throw InvalidArgumentError("variable listed twice in monomial order");
      if (b.weights[k] == 0) throw InvalidArgumentError("order weights must be positive");
      if (b.kind == OrderBlock::Kind::grevlex) sugar_weights_[v] = b.weights[k];
    }
  }
  for (std::size_t v = 0; v < num_vars_; ++v) {
    if (!seen[v]) throw InvalidArgumentError("monomial order does not cover every variable");
  }
}

MonomialOrder MonomialOrder::grevlex(const Ring& ring) {
  OrderBlock b;
  for (std::size_t v = 0; v < ring.num_variables(); ++v) b.variables.push_back(v);
  return MonomialOrder(ring.num_variables(), {b});
}

MonomialOrder MonomialOrder::lex(const Ring& ring) {
  OrderBlock b;
  b.kind = OrderBlock::Kind::lex;
  for (std::size_t v = 0; v < ring.num_variables(); ++v) b.variables.push_back(v);
  return MonomialOrder(ring.num_variables(), {b});
}

MonomialOrder MonomialOrder::elimination(const Ring& ring, const std::vector<std::size_t>& eliminated) {
  OrderBlock top;
  OrderBlock rest;
  std::vector<bool> mark(ring.num_variables(), false);
  for (auto v : eliminated) {
    if (v >= ring.num_variables()) throw InvalidArgumentError("unknown variable to eliminate");
    if (!mark[v]) top.variables.push_back(v);
    mark[v] = true;
  }
  for (std::size_t v = 0; v < ring.num_variables(); ++v) {
    if (!mark[v]) rest.variables.push_back(v);
  }
  std::vector<OrderBlock> blocks;
  if (!top.variables.empty()) blocks.push_back(top);
  if (!rest.variables.empty()) blocks.push_back(rest);
  return MonomialOrder(ring.num_variables(), std::move(blocks));
}

MonomialOrder MonomialOrder::weighted_grevlex(const Ring& ring, const std::vector<unsigned>& weights,
                                              std::size_t last) {
  if (weights.size() != ring.num_variables()) throw InvalidArgumentError("weight count mismatch");
  OrderBlock b;
  for (std::size_t v = 0; v < ring.num_variables(); ++v) {
    if (v != last) {
      b.variables.push_back(v);
      b.weights.push_back(weights[v]);
    }
  }
  b.variables.push_back(last);
  b.weights.push_back(weights[last]);
  return MonomialOrder(ring.num_variables(), {b});
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const auto& blk : blocks_) {
    const std::size_t k = blk.variables.size();
    if (blk.kind == OrderBlock::Kind::lex) {
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t v = blk.variables[i];
        if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
      }
      continue;
    }
    unsigned long da = 0;
    unsigned long db = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t v = blk.variables[i];
      da += static_cast<unsigned long>(blk.weights[i]) * a[v];
      db += static_cast<unsigned long>(blk.weights[i]) * b[v];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = k; i-- > 0;) {
      std::size_t v = blk.variables[i];
      if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
    }
  }
  return 0;
}

bool MonomialOrder::is_elimination_for(const std::vector<std::size_t>& vars) const {
  // every block before the last one touching vars must consist of vars only
  std::vector<bool> in(num_vars_, false);
  for (auto v : vars) in[v] = true;
  bool retained_seen = false;
  for (const auto& blk : blocks_) {
    bool has_elim = false;
    bool has_keep = false;
    for (auto v : blk.variables) (in[v] ? has_elim : has_keep) = true;
    if (has_elim && (retained_seen || has_keep)) {
      if (blk.kind == OrderBlock::Kind::lex && !retained_seen) {
        // lex block: eliminated variables must form a prefix
        bool keep_started = false;
        for (auto v : blk.variables) {
          if (!in[v]) keep_started = true;
          else if (keep_started) return false;
        }
      } else {
        return false;
      }
    }
    if (has_keep) retained_seen = true;
  }
  return true;
}

unsigned MonomialOrder::sugar_degree(const Monomial& m) const {
  unsigned d = 0;
  for (std::size_t v = 0; v < num_vars_; ++v) d += sugar_weights_[v] * m[v];
  return d;
}

MonomialOrder MonomialOrder::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != num_vars_) throw InvalidArgumentError("permutation size mismatch");
  std::vector<OrderBlock> blocks = blocks_;
  for (auto& b : blocks) {
    for (auto& v : b.variables) v = perm[v];
  }
  return MonomialOrder(num_vars_, std::move(blocks));
}

std::string MonomialOrder::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out << " > ";
    out << (blocks_[i].kind == OrderBlock::Kind::lex ? "lex(" : "grevlex(");
    for (std::size_t k = 0; k < blocks_[i].variables.size(); ++k) {
      if (k) out << ",";
      out << blocks_[i].variables[k];
      if (blocks_[i].weights[k] != 1) out << ":" << blocks_[i].weights[k];
    }
    out << ")";
  }
  return out.str();
}

bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
  if (a.num_vars_ != b.num_vars_ || a.blocks_.size() != b.blocks_.size()) return false;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    if (a.blocks_[i].kind != b.blocks_[i].kind || a.blocks_[i].variables != b.blocks_[i].variables ||
        a.blocks_[i].weights != b.blocks_[i].weights) {
      return false;
    }
  }
  return true;
}

}  // namespace mustafin
