#include "mustafin/ideal.hpp"

#include <algorithm>

#include "mustafin/detail/gb_engine.hpp"
#include "mustafin/errors.hpp"
#include "mustafin/rng.hpp"

namespace mustafin {

namespace {

void require_ring(const Polynomial& p, const RingPtr& ring) {
  if (!p.ring()->same_as(*ring)) {
    throw RingMismatchError("polynomial in " + p.ring()->describe() + " used with ideal over " +
                            ring->describe());
  }
}

// Ring with one extra block of fresh variables.
RingPtr extend(const RingPtr& ring, const std::string& prefix, std::size_t count) {
  std::string block = "aux_" + prefix;
  while (ring->find_block(block)) block += "_";
  return ring->with_block({block, ring->fresh_names(prefix, count)});
}

std::vector<Polynomial> embed_all(const std::vector<Polynomial>& ps, const RingPtr& target) {
  std::vector<Polynomial> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(embed(p, target));
  return out;
}

std::vector<Polynomial> bayer_saturation(const std::vector<Polynomial>& basis, std::size_t var) {
  std::vector<Polynomial> out;
  out.reserve(basis.size());
  for (const auto& g : basis) out.push_back(divide_by_variable_power(g, var, *variable_valuation(g, var)));
  return out;
}

Polynomial homogenize(const Polynomial& p, const std::vector<unsigned>& weights, std::size_t h) {
  auto weight = [&](const Monomial& m) {
    unsigned long s = 0;
    for (std::size_t v = 0; v < weights.size(); ++v) s += static_cast<unsigned long>(weights[v]) * m[v];
    return s;
  };
  unsigned long top = 0;
  for (const auto& term : p.terms()) top = std::max(top, weight(term.monomial));
  std::vector<Term> terms;
  for (const auto& term : p.terms()) {
    Monomial m = term.monomial;
    m *= Monomial::variable(h, static_cast<unsigned>(top - weight(term.monomial)));
    terms.push_back({m, term.coefficient});
  }
  return Polynomial::from_terms(p.ring(), std::move(terms));
}

bool free_of(const Polynomial& p, const std::vector<std::size_t>& vars) {
  for (auto v : vars) {
    if (p.involves(v)) return false;
  }
  return true;
}

bool is_unit_basis(const std::vector<Polynomial>& basis) {
  return basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero();
}

}  // namespace

IdealHandle::IdealHandle(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    require_ring(g, ring_);
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

void IdealHandle::add_generator(Polynomial p) {
  require_ring(p, ring_);
  if (p.is_zero()) return;
  generators_.push_back(std::move(p));
  cache_ = std::make_shared<Cache>();
}

const std::vector<Polynomial>& IdealHandle::groebner_basis() const {
  return groebner_basis(MonomialOrder::grevlex(*ring_));
}

const std::vector<Polynomial>& IdealHandle::groebner_basis(const MonomialOrder& order) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (!cache_->order || !(*cache_->order == order)) {
    cache_->basis = detail::buchberger(generators_, order);
    cache_->order = order;
  }
  return cache_->basis;
}

void IdealHandle::seed_cache(const MonomialOrder& order, std::vector<Polynomial> basis) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->order = order;
  cache_->basis = std::move(basis);
}

bool IdealHandle::is_zero_ideal() const { return generators_.empty(); }

bool IdealHandle::is_unit_ideal() const { return is_unit_basis(groebner_basis()); }

std::vector<Polynomial> groebner_basis(const IdealHandle& ideal, const MonomialOrder& order) {
  return ideal.groebner_basis(order);
}

NormalForm normal_form(const Polynomial& p, const IdealHandle& ideal, const MonomialOrder& order) {
  require_ring(p, ideal.ring());
  const auto& basis = ideal.groebner_basis(order);
  detail::Division d = detail::divide(p, basis, order);
  return {d.remainder, basis, d.quotients};
}

Polynomial normal_form(const Polynomial& p, const IdealHandle& ideal) {
  require_ring(p, ideal.ring());
  MonomialOrder order = MonomialOrder::grevlex(*ideal.ring());
  return detail::reduce(p, ideal.groebner_basis(order), order);
}

bool ideal_membership(const Polynomial& p, const IdealHandle& ideal) {
  return normal_form(p, ideal).is_zero();
}

bool ideal_contained(const IdealHandle& inner, const IdealHandle& outer) {
  for (const auto& g : inner.generators()) {
    if (!ideal_membership(g, outer)) return false;
  }
  return true;
}

bool ideal_equal(const IdealHandle& a, const IdealHandle& b) {
  if (!a.ring()->same_as(*b.ring())) throw RingMismatchError("ideal_equal across different rings");
  const auto& ga = a.groebner_basis();
  const auto& gb = b.groebner_basis();
  if (ga.size() != gb.size()) return false;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    if (ga[i] != gb[i]) return false;
  }
  return true;
}

bool satisfies_buchberger_criterion(const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero()) return false;
    Monomial li = detail::leading_monomial(basis[i], order);
    Scalar ci = basis[i].coefficient_of(li);
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Monomial lj = detail::leading_monomial(basis[j], order);
      Scalar cj = basis[j].coefficient_of(lj);
      Monomial l = li.lcm(lj);
      const Field& f = basis[i].ring()->field();
      Polynomial s = basis[i].times_monomial(li.quotient_of(l), f.one() / ci) -
                     basis[j].times_monomial(lj.quotient_of(l), f.one() / cj);
      if (!detail::reduce(s, basis, order).is_zero()) return false;
    }
  }
  return true;
}

IdealHandle eliminate(const IdealHandle& ideal, const std::vector<std::size_t>& variables) {
  MonomialOrder order = MonomialOrder::elimination(*ideal.ring(), variables);
  std::vector<Polynomial> kept;
  for (const auto& g : ideal.groebner_basis(order)) {
    if (free_of(g, variables)) kept.push_back(g);
  }
  return IdealHandle(ideal.ring(), std::move(kept));
}

IdealHandle eliminate_blocks(const IdealHandle& ideal, const std::vector<std::string>& blocks) {
  std::vector<std::size_t> vars;
  for (const auto& name : blocks) {
    auto b = ideal.ring()->find_block(name);
    if (!b) throw InvalidArgumentError("unknown block '" + name + "' in " + ideal.ring()->describe());
    for (auto v : ideal.ring()->block_variables(*b)) vars.push_back(v);
  }
  if (vars.size() == ideal.ring()->num_variables()) {
    throw InvalidArgumentError("cannot eliminate every block");
  }
  return eliminate(ideal, vars);
}

IdealHandle saturate(const IdealHandle& ideal, const Polynomial& f) {
  require_ring(f, ideal.ring());
  if (f.is_zero()) throw InvalidArgumentError("saturation by the zero polynomial");
  RingPtr big = extend(ideal.ring(), "y", 1);
  std::size_t y = ideal.ring()->num_variables();
  std::vector<Polynomial> gens = embed_all(ideal.generators(), big);
  Polynomial fy = embed(f, big) * Polynomial::variable(big, y);
  gens.push_back(Polynomial::constant(big, 1) - fy);
  IdealHandle ext(big, std::move(gens));
  IdealHandle elim = eliminate(ext, {y});
  return IdealHandle(ideal.ring(), embed_all(elim.generators(), ideal.ring()));
}

IdealHandle saturate_variable(const IdealHandle& ideal, std::size_t var,
                              const std::optional<std::vector<unsigned>>& weights) {
  const Ring& ring = *ideal.ring();
  if (var >= ring.num_variables()) throw InvalidArgumentError("variable index out of range");
  std::vector<unsigned> w = weights.value_or(std::vector<unsigned>(ring.num_variables(), 1));
  if (w.size() != ring.num_variables()) throw InvalidArgumentError("weight count mismatch");
  std::vector<int> iw(w.begin(), w.end());
  bool homogeneous = std::all_of(w.begin(), w.end(), [](unsigned x) { return x > 0; });
  for (const auto& g : ideal.generators()) {
    if (!homogeneous) break;
    homogeneous = is_weighted_homogeneous(g, iw);
  }
  if (homogeneous) {
    MonomialOrder order = MonomialOrder::weighted_grevlex(ring, w, var);
    return IdealHandle(ideal.ring(), bayer_saturation(ideal.groebner_basis(order), var));
  }
  if (!std::all_of(w.begin(), w.end(), [](unsigned x) { return x > 0; })) {
    return saturate(ideal, Polynomial::variable(ideal.ring(), var));
  }
  // Homogenize with h of weight 1, saturate by h and then by var, set h = 1.
  RingPtr big = extend(ideal.ring(), "h", 1);
  std::size_t h = ring.num_variables();
  std::vector<unsigned> wb = w;
  wb.push_back(1);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(homogenize(embed(g, big), wb, h));
  gens = bayer_saturation(detail::buchberger(gens, MonomialOrder::weighted_grevlex(*big, wb, h)), h);
  gens = bayer_saturation(detail::buchberger(gens, MonomialOrder::weighted_grevlex(*big, wb, var)), var);
  std::vector<Polynomial> out;
  for (const auto& g : gens) {
    Polynomial p = embed(specialize(g, h, big->field().one()), ideal.ring());
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return IdealHandle(ideal.ring(), std::move(out));
}

IdealHandle intersect(const IdealHandle& a, const IdealHandle& b) {
  if (!a.ring()->same_as(*b.ring())) throw RingMismatchError("intersect across different rings");
  if (a.is_zero_ideal() || b.is_zero_ideal()) return IdealHandle(a.ring());
  RingPtr big = extend(a.ring(), "w", 1);
  std::size_t w = a.ring()->num_variables();
  Polynomial wp = Polynomial::variable(big, w);
  Polynomial one_minus = Polynomial::constant(big, 1) - wp;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(wp * embed(g, big));
  for (const auto& g : b.generators()) gens.push_back(one_minus * embed(g, big));
  IdealHandle elim = eliminate(IdealHandle(big, std::move(gens)), {w});
  return IdealHandle(a.ring(), embed_all(elim.generators(), a.ring()));
}

bool radical_membership(const Polynomial& f, const IdealHandle& ideal) {
  require_ring(f, ideal.ring());
  if (f.is_zero()) return true;
  RingPtr big = extend(ideal.ring(), "y", 1);
  std::size_t y = ideal.ring()->num_variables();
  std::vector<Polynomial> gens = embed_all(ideal.generators(), big);
  gens.push_back(Polynomial::constant(big, 1) - embed(f, big) * Polynomial::variable(big, y));
  return is_unit_basis(detail::buchberger(gens, MonomialOrder::grevlex(*big)));
}

bool power_membership(const Polynomial& f, const IdealHandle& ideal, unsigned max_power) {
  require_ring(f, ideal.ring());
  Polynomial power = f;
  for (unsigned k = 1; k <= max_power; ++k) {
    if (ideal_membership(power, ideal)) return true;
    power *= f;
  }
  return false;
}

namespace {

// Ring with tag variables e_0..e_m prepended as a lex block above the
// original variables; tag products are killed so that only e-degree one
// survives.
struct TaggedRing {
  RingPtr ring;
  std::vector<std::size_t> tags;
  MonomialOrder order;
};

TaggedRing tagged_ring(const RingPtr& base, std::size_t count) {
  RingPtr big = extend(base, "e", count);
  std::vector<std::size_t> tags;
  for (std::size_t k = 0; k < count; ++k) tags.push_back(base->num_variables() + k);
  OrderBlock tag_block;
  tag_block.kind = OrderBlock::Kind::lex;
  tag_block.variables = tags;
  OrderBlock rest;
  for (std::size_t v = 0; v < base->num_variables(); ++v) rest.variables.push_back(v);
  std::vector<OrderBlock> blocks{tag_block};
  if (!rest.variables.empty()) blocks.push_back(rest);
  return {big, tags, MonomialOrder(big->num_variables(), blocks)};
}

void add_tag_products(const TaggedRing& tr, std::vector<Polynomial>& gens) {
  for (std::size_t a = 0; a < tr.tags.size(); ++a) {
    for (std::size_t b = a; b < tr.tags.size(); ++b) {
      gens.push_back(Polynomial::variable(tr.ring, tr.tags[a]) * Polynomial::variable(tr.ring, tr.tags[b]));
    }
  }
}

// Coefficient of tag `tag` in an element of e-degree one.
Polynomial tag_coefficient(const Polynomial& p, std::size_t tag, const RingPtr& base) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    if (t.monomial[tag] == 1) {
      Monomial m = t.monomial;
      m.set(tag, 0);
      terms.push_back({m, t.coefficient});
    }
  }
  return embed(Polynomial::from_terms(p.ring(), std::move(terms)), base);
}

unsigned tag_degree(const Monomial& m, const std::vector<std::size_t>& tags) {
  unsigned d = 0;
  for (auto v : tags) d += m[v];
  return d;
}

}  // namespace

SyzygyBasis syzygies(const std::vector<Polynomial>& row) {
  if (row.empty()) throw InvalidArgumentError("syzygies of an empty row");
  const RingPtr& base = row.front().ring();
  for (const auto& f : row) require_ring(f, base);
  TaggedRing tr = tagged_ring(base, row.size() + 1);
  std::vector<Polynomial> gens;
  Polynomial e0 = Polynomial::variable(tr.ring, tr.tags[0]);
  for (std::size_t j = 0; j < row.size(); ++j) {
    gens.push_back(embed(row[j], tr.ring) * e0 + Polynomial::variable(tr.ring, tr.tags[j + 1]));
  }
  add_tag_products(tr, gens);
  SyzygyBasis out{base, {}};
  for (const auto& g : detail::buchberger(gens, tr.order)) {
    bool module_element = true;
    for (const auto& t : g.terms()) {
      if (tag_degree(t.monomial, tr.tags) != 1 || t.monomial[tr.tags[0]] != 0) {
        module_element = false;
        break;
      }
    }
    if (!module_element) continue;
    std::vector<Polynomial> rel;
    for (std::size_t j = 0; j < row.size(); ++j) rel.push_back(tag_coefficient(g, tr.tags[j + 1], base));
    out.relations.push_back(std::move(rel));
  }
  return out;
}

Polynomial apply_relation(const std::vector<Polynomial>& relation, const std::vector<Polynomial>& row) {
  if (relation.size() != row.size() || row.empty()) throw InvalidArgumentError("relation length mismatch");
  Polynomial acc(row.front().ring());
  for (std::size_t j = 0; j < row.size(); ++j) acc += relation[j] * row[j];
  return acc;
}

bool module_membership(const std::vector<Polynomial>& s, const std::vector<std::vector<Polynomial>>& generators) {
  if (s.empty()) throw InvalidArgumentError("empty module element");
  const RingPtr& base = s.front().ring();
  TaggedRing tr = tagged_ring(base, s.size());
  auto to_tagged = [&](const std::vector<Polynomial>& v) {
    if (v.size() != s.size()) throw InvalidArgumentError("module element length mismatch");
    Polynomial acc(tr.ring);
    for (std::size_t j = 0; j < v.size(); ++j) {
      acc += embed(v[j], tr.ring) * Polynomial::variable(tr.ring, tr.tags[j]);
    }
    return acc;
  };
  std::vector<Polynomial> gens;
  for (const auto& g : generators) gens.push_back(to_tagged(g));
  add_tag_products(tr, gens);
  auto basis = detail::buchberger(gens, tr.order);
  return detail::reduce(to_tagged(s), basis, tr.order).is_zero();
}

bool projectively_empty(const std::vector<Polynomial>& polys, const std::vector<std::size_t>& coordinates) {
  if (coordinates.empty()) throw InvalidArgumentError("projective emptiness needs coordinates");
  if (polys.empty()) return false;
  const RingPtr& ring = polys.front().ring();
  std::vector<bool> is_coord(ring->num_variables(), false);
  OrderBlock top;
  OrderBlock rest;
  for (auto v : coordinates) {
    if (v >= ring->num_variables() || is_coord[v]) throw InvalidArgumentError("bad coordinate list");
    is_coord[v] = true;
    top.variables.push_back(v);
  }
  for (std::size_t v = 0; v < ring->num_variables(); ++v) {
    if (!is_coord[v]) rest.variables.push_back(v);
  }
  std::vector<OrderBlock> blocks{top};
  if (!rest.variables.empty()) blocks.push_back(rest);
  MonomialOrder order(ring->num_variables(), blocks);
  auto basis = detail::buchberger(polys, order);
  for (auto v : coordinates) {
    bool found = false;
    for (const auto& g : basis) {
      Monomial lm = detail::leading_monomial(g, order);
      bool pure = true;
      for (auto u : coordinates) {
        if (u != v && lm[u]) pure = false;
      }
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool projectively_empty_specialized(const std::vector<Polynomial>& polys, const std::vector<std::size_t>& coordinates,
                                    unsigned attempts, std::uint64_t seed) {
  if (coordinates.empty()) throw InvalidArgumentError("projective emptiness needs coordinates");
  if (polys.empty()) return false;
  const RingPtr& ring = polys.front().ring();
  std::vector<std::size_t> params;
  for (std::size_t v = 0; v < ring->num_variables(); ++v) {
    if (std::find(coordinates.begin(), coordinates.end(), v) != coordinates.end()) continue;
    for (const auto& p : polys) {
      if (p.involves(v)) {
        params.push_back(v);
        break;
      }
    }
  }
  if (params.empty()) return projectively_empty(polys, coordinates);
  const Field& field = ring->field();
  std::uint64_t range = field.is_rational() ? 1000003 : field.characteristic();
  SplitMix64 rng(seed);
  for (unsigned k = 0; k < attempts; ++k) {
    std::vector<Polynomial> special = polys;
    for (auto v : params) {
      Scalar value = field.from_integer(static_cast<long>(1 + rng.below(range - 1)));
      for (auto& p : special) p = specialize(p, v, value);
    }
    if (projectively_empty(special, coordinates)) return true;
  }
  return false;
}

}  // namespace mustafin
