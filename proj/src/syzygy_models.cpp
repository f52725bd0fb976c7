#include "mustafin/syzygy_models.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "mustafin/errors.hpp"

namespace mustafin {

namespace {

bool is_x12_variable(const std::string& name) {
  return name.size() > 3 && name[0] == 'x' && (name[1] == '1' || name[1] == '2') && name[2] == '_';
}

std::vector<std::size_t> x_coordinates(const Ring& plane) {
  return {plane.variable("x1"), plane.variable("x2"), plane.variable("x3")};
}

Polynomial t_power(const RingPtr& ring, unsigned k) {
  return Polynomial::monomial(ring, Monomial::variable(uniformizer_index(*ring), k), ring->field().one());
}

void check_block(const DegreeData& data, std::size_t i) {
  if (i < 1 || i > data.n_plus_1()) throw InvalidArgumentError("block index out of range");
}

}  // namespace

void validate(const DegreeData& data) {
  if (data.n < 2) throw InvalidArgumentError("n must be at least 2");
  if (data.rho < 1) throw InvalidArgumentError("rho must be at least 1");
  if (static_cast<int>(data.degrees.size()) != data.n + 1) {
    throw InvalidArgumentError("expected " + std::to_string(data.n + 1) + " degrees, got " +
                               std::to_string(data.degrees.size()));
  }
  long sum = 0;
  for (int d : data.degrees) {
    if (d < 0 || d > data.rho) {
      throw InvalidArgumentError("degree " + std::to_string(d) + " outside [0, rho=" + std::to_string(data.rho) + "]");
    }
    sum += d;
  }
  if (sum != static_cast<long>(data.n) * data.rho) {
    throw InvalidArgumentError("sum of degrees is " + std::to_string(sum) + " but n*rho = " +
                               std::to_string(data.n * data.rho));
  }
}

void check_lift_shape(const SymLift& lift, const DegreeData& data) {
  validate(data);
  check_block(data, lift.index);
  if (lift.F.is_zero()) throw InvalidArgumentError("lift is zero");
  const Ring& ring = *lift.F.ring();
  for (const auto& term : lift.F.terms()) {
    for (std::size_t j = 1; j <= data.n_plus_1(); ++j) {
      unsigned deg = 0;
      for (int k = 1; k <= 3; ++k) deg += term.monomial[model_variable(ring, k, static_cast<int>(j))];
      int want = j == lift.index ? 0 : data.block_degree(j);
      if (static_cast<int>(deg) != want) {
        throw InvalidArgumentError("lift for index " + std::to_string(lift.index) + " has degree " +
                                   std::to_string(deg) + " in block " + std::to_string(j) + ", expected " +
                                   std::to_string(want));
      }
    }
  }
}

ScaledPolynomial upsilon(const SymLift& lift, const DegreeData& data, const LatticeConfiguration& cfg) {
  check_lift_shape(lift, data);
  if (cfg.n_plus_1() != data.n_plus_1()) throw InvalidArgumentError("configuration size does not match degrees");
  RingPtr plane = plane_ring(cfg.field);
  const Ring& model = *lift.F.ring();
  std::vector<std::optional<Polynomial>> images(model.num_variables());
  images[uniformizer_index(model)] = Polynomial::variable(plane, "t");
  auto x = x_coordinates(*plane);
  for (std::size_t j = 1; j <= data.n_plus_1(); ++j) {
    Matrix3 b = inverse(cfg.matrices[j - 1]);
    for (int k = 1; k <= 3; ++k) {
      // t^{3-k} (B_j x)_k; the common t^{-2} per factor goes to the offset
      Polynomial row(plane);
      for (int c = 0; c < 3; ++c) {
        if (!b[k - 1][c].is_zero()) row += b[k - 1][c] * Polynomial::variable(plane, x[c]);
      }
      images[model_variable(model, k, static_cast<int>(j))] = row * t_power(plane, 3 - k);
    }
  }
  Polynomial body = substitute(lift.F, plane, images);
  int d_i = data.degrees[lift.index - 1];
  return ScaledPolynomial(body, -2L * d_i);
}

bool is_admissible_lift(const Polynomial& F) {
  if (F.is_zero()) return false;
  Polynomial reduced = reduce_mod_t(t_saturate_poly(F));
  const Ring& ring = *reduced.ring();
  for (const auto& term : reduced.terms()) {
    bool only_x3 = true;
    for (std::size_t v = 0; v < ring.num_variables(); ++v) {
      if (term.monomial[v] && is_x12_variable(ring.variable_name(v))) {
        only_x3 = false;
        break;
      }
    }
    if (only_x3) return true;
  }
  return false;
}

std::vector<std::size_t> rotated_fill_order(std::size_t n_plus_1) {
  std::vector<std::size_t> order;
  for (std::size_t j = 2; j <= n_plus_1; ++j) order.push_back(j);
  order.push_back(1);
  return order;
}

std::vector<std::array<unsigned, 3>> monomial_factorization(const std::array<unsigned, 3>& exponents,
                                                            const DegreeData& data, std::size_t i,
                                                            const std::vector<std::size_t>& fill_order) {
  validate(data);
  check_block(data, i);
  unsigned total = exponents[0] + exponents[1] + exponents[2];
  if (static_cast<int>(total) != data.degrees[i - 1]) {
    throw InvalidArgumentError("monomial of degree " + std::to_string(total) + " cannot be factored for d_" +
                               std::to_string(i) + " = " + std::to_string(data.degrees[i - 1]));
  }
  std::vector<std::size_t> order = fill_order;
  if (order.empty()) {
    order.resize(data.n_plus_1());
    std::iota(order.begin(), order.end(), 1);
  }
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted.size() != data.n_plus_1() || sorted[k] != k + 1) {
      throw InvalidArgumentError("fill order must be a permutation of the blocks");
    }
  }
  std::vector<std::array<unsigned, 3>> factors(data.n_plus_1() + 1, {0, 0, 0});
  std::array<unsigned, 3> left = exponents;
  std::size_t var = 0;
  for (auto j : order) {
    if (j == i) continue;
    unsigned need = static_cast<unsigned>(data.block_degree(j));
    while (need > 0) {
      while (left[var] == 0) ++var;
      unsigned take = std::min(need, left[var]);
      factors[j][var] += take;
      left[var] -= take;
      need -= take;
    }
  }
  return factors;
}

PolynomialLift lift_polynomial(const Polynomial& h, const DegreeData& data, std::size_t i,
                               const LatticeConfiguration& cfg, const std::vector<std::size_t>& fill_order) {
  validate(data);
  check_block(data, i);
  if (cfg.n_plus_1() != data.n_plus_1()) throw InvalidArgumentError("configuration size does not match degrees");
  RingPtr model = model_ring(cfg.field, cfg.n_plus_1());
  const Ring& plane = *h.ring();
  auto x = x_coordinates(plane);
  std::size_t t_plane = uniformizer_index(plane);
  std::size_t t_model = uniformizer_index(*model);
  std::vector<Term> terms;
  for (const auto& term : h.terms()) {
    for (std::size_t v = 0; v < plane.num_variables(); ++v) {
      if (term.monomial[v] && v != t_plane && v != x[0] && v != x[1] && v != x[2]) {
        throw InvalidArgumentError("h involves a variable other than t, x1, x2, x3");
      }
    }
    std::array<unsigned, 3> e{term.monomial[x[0]], term.monomial[x[1]], term.monomial[x[2]]};
    auto factors = monomial_factorization(e, data, i, fill_order);
    Monomial m = Monomial::variable(t_model, term.monomial[t_plane]);
    for (std::size_t j = 1; j <= data.n_plus_1(); ++j) {
      for (int k = 0; k < 3; ++k) {
        if (factors[j][k]) m.set(model_variable(*model, k + 1, static_cast<int>(j)), factors[j][k]);
      }
    }
    Scalar c = term.coefficient;
    if (c.modulus() != cfg.field.characteristic()) c = c.reduce_mod(cfg.field.characteristic());
    terms.push_back({m, c});
  }
  Polynomial F_tilde = Polynomial::from_terms(model, std::move(terms));
  std::vector<std::optional<Polynomial>> images(model->num_variables());
  images[t_model] = Polynomial::variable(model, t_model);
  for (std::size_t j = 1; j <= data.n_plus_1(); ++j) {
    auto col = lattice_column(cfg, model, j);
    for (int k = 1; k <= 3; ++k) images[model_variable(*model, k, static_cast<int>(j))] = col[k - 1];
  }
  Polynomial F = substitute(F_tilde, model, images);
  return {F_tilde, {i, F}};
}

PolynomialLift lift_polynomial(const ScaledPolynomial& h, const DegreeData& data, std::size_t i,
                               const LatticeConfiguration& cfg, const std::vector<std::size_t>& fill_order) {
  if (!h.is_integral()) throw InvalidArgumentError("h has negative t-valuation: " + h.to_string());
  return lift_polynomial(h.to_polynomial(), data, i, cfg, fill_order);
}

Polynomial x3_monomial(const RingPtr& model, const DegreeData& data, std::size_t i) {
  Monomial m;
  for (std::size_t j = 1; j <= data.n_plus_1(); ++j) {
    if (j != i) m.set(model_variable(*model, 3, static_cast<int>(j)), static_cast<unsigned>(data.block_degree(j)));
  }
  return Polynomial::monomial(model, m, model->field().one());
}

SyzygyTuple example_class(const DegreeData& data, const LatticeConfiguration& cfg, const std::vector<Polynomial>& h) {
  validate(data);
  if (h.size() != data.n_plus_1()) throw InvalidArgumentError("need one h per index");
  RingPtr model = model_ring(cfg.field, cfg.n_plus_1());
  RingPtr plane = plane_ring(cfg.field);
  auto x = x_coordinates(*plane);
  SyzygyTuple tuple{data, {}, {}};
  for (std::size_t i = 1; i <= data.n_plus_1(); ++i) {
    Polynomial hi = h[i - 1].ring()->same_as(*plane) ? h[i - 1] : embed(h[i - 1], plane);
    if (!hi.is_zero()) {
      if (!is_homogeneous_in(hi, x) || static_cast<int>(hi.terms().front().monomial[x[0]] +
                                                        hi.terms().front().monomial[x[1]] +
                                                        hi.terms().front().monomial[x[2]]) != data.degrees[i - 1]) {
        throw InvalidArgumentError("h_" + std::to_string(i) + " is not homogeneous of degree " +
                                   std::to_string(data.degrees[i - 1]));
      }
    }
    SymLift base{i, x3_monomial(model, data, i)};
    ScaledPolynomial f = upsilon(base, data, cfg);
    Polynomial F = base.F;
    if (!hi.is_zero()) F += lift_polynomial(hi, data, i, cfg).lift.F;
    tuple.entries.push_back(f + ScaledPolynomial(hi));
    tuple.lifts.push_back({i, F});
  }
  return tuple;
}

Polynomial random_form(const RingPtr& plane, unsigned degree, SplitMix64& rng, std::uint64_t bound) {
  if (bound == 0) throw InvalidArgumentError("coefficient bound must be positive");
  auto x = x_coordinates(*plane);
  std::vector<Term> terms;
  for (unsigned a = 0; a <= degree; ++a) {
    for (unsigned b = 0; a + b <= degree; ++b) {
      Monomial m;
      m.set(x[0], a);
      m.set(x[1], b);
      m.set(x[2], degree - a - b);
      terms.push_back({m, plane->field().from_integer(static_cast<long>(rng.below(bound)))});
    }
  }
  return Polynomial::from_terms(plane, std::move(terms));
}

std::vector<Polynomial> random_forms(const RingPtr& plane, const DegreeData& data, SplitMix64& rng,
                                     std::uint64_t bound) {
  std::vector<Polynomial> out;
  for (int d : data.degrees) out.push_back(random_form(plane, static_cast<unsigned>(d), rng, bound));
  return out;
}

std::vector<Polynomial> restrict_to_component(const SyzygyTuple& tuple, std::size_t i, const Field& residue) {
  check_block(tuple.data, i);
  if (tuple.lifts.size() != tuple.data.n_plus_1()) throw InvalidArgumentError("tuple has no lifts");
  std::string s = std::to_string(i);
  RingPtr comp = make_ring(residue, {{"x" + s, {"x2_" + s, "x3_" + s}}});
  std::vector<Polynomial> row;
  for (const auto& lift : tuple.lifts) {
    if (lift.F.is_zero()) {
      row.emplace_back(comp);
      continue;
    }
    Polynomial reduced = reduce_mod_t(t_saturate_poly(lift.F), residue);
    const Ring& ring = *reduced.ring();
    std::vector<std::optional<Polynomial>> images(ring.num_variables());
    images[uniformizer_index(ring)] = Polynomial(comp);
    for (std::size_t j = 1; j <= tuple.data.n_plus_1(); ++j) {
      int jj = static_cast<int>(j);
      if (j == i) {
        images[model_variable(ring, 1, jj)] = Polynomial(comp);
        images[model_variable(ring, 2, jj)] = Polynomial::variable(comp, 0);
        images[model_variable(ring, 3, jj)] = Polynomial::variable(comp, 1);
      } else {
        images[model_variable(ring, 1, jj)] = Polynomial(comp);
        images[model_variable(ring, 2, jj)] = Polynomial(comp);
        images[model_variable(ring, 3, jj)] = Polynomial::constant(comp, 1);
      }
    }
    row.push_back(substitute(reduced, comp, images));
  }
  return row;
}

TrivialityCertificate triviality_certificate(const SyzygyTuple& tuple, const LatticeConfiguration& cfg) {
  TrivialityCertificate cert;
  cert.verdict = true;
  for (std::size_t i = 1; i <= tuple.data.n_plus_1(); ++i) {
    ComponentCertificate cc;
    cc.component = i;
    cc.row = restrict_to_component(tuple, i, cfg.residue_field());
    for (const auto& a : cc.row) cc.row_degrees.push_back(a.is_zero() ? -1 : static_cast<int>(a.total_degree()));
    const Polynomial& unit = cc.row[i - 1];
    if (unit.is_zero() || !unit.is_constant()) {
      cc.diagnostic = unit.is_zero() ? "restricted entry A_" + std::to_string(i) + " vanishes"
                                     : "restricted entry A_" + std::to_string(i) + " = " + unit.to_string() +
                                           " is not constant";
      cert.verdict = false;
      cert.components.push_back(std::move(cc));
      continue;
    }
    cc.unit_value = unit.constant_term();
    Scalar inv = cc.unit_value->inverse();
    const RingPtr& ring = unit.ring();
    for (std::size_t j = 1; j <= tuple.data.n_plus_1(); ++j) {
      if (j == i) continue;
      std::vector<Polynomial> rel(tuple.data.n_plus_1(), Polynomial(ring));
      rel[j - 1] = Polynomial::constant(ring, 1);
      rel[i - 1] = -(cc.row[j - 1] * inv);
      cc.kernel_basis.push_back(std::move(rel));
    }
    cc.relations_hold = true;
    for (const auto& rel : cc.kernel_basis) {
      if (!apply_relation(rel, cc.row).is_zero()) cc.relations_hold = false;
    }
    SyzygyBasis syz = syzygies(cc.row);
    cc.syzygies_agree = true;
    for (const auto& rel : syz.relations) {
      if (!apply_relation(rel, cc.row).is_zero() || !module_membership(rel, cc.kernel_basis)) {
        cc.syzygies_agree = false;
      }
    }
    for (const auto& rel : cc.kernel_basis) {
      if (!module_membership(rel, syz.relations)) cc.syzygies_agree = false;
    }
    cc.verdict = cc.relations_hold && cc.syzygies_agree;
    if (!cc.relations_hold) cc.diagnostic = "kernel basis relation failed";
    if (!cc.syzygies_agree) cc.diagnostic = "computed syzygies disagree with the free kernel basis";
    cert.verdict = cert.verdict && cc.verdict;
    cert.components.push_back(std::move(cc));
  }
  return cert;
}

bool coverage_check(const PlaneCurve& curve, const std::vector<ScaledPolynomial>& entries) {
  if (entries.empty()) throw InvalidArgumentError("coverage_check needs sections");
  RingPtr plane = entries.front().ring();
  Polynomial f = curve.f;
  if (f.ring()->field() != plane->field()) f = reduce_coefficients(f, plane->field());
  std::map<std::string, Polynomial> images{{"u1", Polynomial::variable(plane, "x1")},
                                           {"u2", Polynomial::variable(plane, "x2")},
                                           {"u3", Polynomial::variable(plane, "x3")}};
  if (f.ring()->find_variable("t")) images.emplace("t", Polynomial::variable(plane, "t"));
  std::vector<Polynomial> polys{substitute(f, plane, images, true)};
  for (const auto& e : entries) {
    if (!e.ring()->same_as(*plane)) throw RingMismatchError("sections live in different rings");
    polys.push_back(e.body());
  }
  return projectively_empty_specialized(polys, x_coordinates(*plane));
}

}  // namespace mustafin
