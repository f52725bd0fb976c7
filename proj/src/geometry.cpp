#include "mustafin/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "mustafin/errors.hpp"
#include "mustafin/rng.hpp"
#include "mustafin/text_format.hpp"

namespace mustafin {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::vector<std::size_t> u_variables(const Ring& ring) {
  return {ring.variable("u1"), ring.variable("u2"), ring.variable("u3")};
}

// f(g x) for the column images `col` of u1, u2, u3 in `target`.
Polynomial pull_back(const PlaneCurve& curve, const std::vector<Polynomial>& col, const RingPtr& target) {
  Polynomial f = curve.f;
  if (f.ring()->field() != target->field()) f = reduce_coefficients(f, target->field());
  std::map<std::string, Polynomial> images{{"u1", col[0]}, {"u2", col[1]}, {"u3", col[2]}};
  if (f.ring()->find_variable("t")) images.emplace("t", Polynomial::variable(target, uniformizer_index(*target)));
  return substitute(f, target, images, true);
}

PolynomialMatrix column_matrix(const LatticeConfiguration& cfg, const RingPtr& ring) {
  PolynomialMatrix rows(3);
  for (std::size_t l = 1; l <= cfg.n_plus_1(); ++l) {
    auto col = lattice_column(cfg, ring, l);
    for (int r = 0; r < 3; ++r) rows[r].push_back(col[r]);
  }
  return rows;
}

bool vanishes_on(const Polynomial& g, const PrimeComponent& c) {
  for (const auto& term : g.terms()) {
    bool hit = false;
    for (auto v : c.variables) {
      if (term.monomial[v]) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (auto v : a) {
    if (std::find(b.begin(), b.end(), v) == b.end()) return false;
  }
  return true;
}

}  // namespace

PlaneCurve make_plane_curve(const Polynomial& f) {
  if (f.is_zero()) throw InvalidArgumentError("plane curve equation is zero");
  auto u = u_variables(*f.ring());
  if (!is_homogeneous_in(f, u)) throw InvalidArgumentError("plane curve equation is not homogeneous in u");
  if (f.ring()->find_variable("t") && t_valuation(f).value_or(0) > 0) {
    throw InvalidArgumentError("plane curve equation is divisible by t");
  }
  unsigned d = 0;
  for (auto v : u) d += f.terms().front().monomial[v];
  return {f, d};
}

PlaneCurve parse_plane_curve(const std::string& text, const Field& field) {
  return make_plane_curve(parse_polynomial(text, curve_ring(field)));
}

bool is_smooth_plane_curve(const Polynomial& f, const std::vector<std::size_t>& coordinates) {
  std::vector<Polynomial> polys{f};
  for (auto v : coordinates) polys.push_back(derivative(f, v));
  return projectively_empty(polys, coordinates);
}

IdealHandle mustafin_ideal(const LatticeConfiguration& cfg) {
  validate(cfg);
  RingPtr ring = model_ring(cfg.field, cfg.n_plus_1());
  if (cfg.n_plus_1() < 2) return IdealHandle(ring);
  IdealHandle minors(ring, minors_2x2(column_matrix(cfg, ring)));
  return saturate_variable(minors, uniformizer_index(*ring), model_weights(*ring));
}

IdealHandle special_fiber(const IdealHandle& ideal, const Field& residue) {
  const RingPtr& ring = ideal.ring();
  std::size_t t = uniformizer_index(*ring);
  std::vector<VariableBlock> blocks;
  for (const auto& b : ring->blocks()) {
    std::vector<std::string> vars;
    for (const auto& name : b.variables) {
      if (name != "t") vars.push_back(name);
    }
    if (!vars.empty()) blocks.push_back({b.name, vars});
  }
  RingPtr fiber = make_ring(residue, std::move(blocks));
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) {
    unsigned v = t_valuation(g).value_or(0);
    if (v > 0 && !ideal_membership(divide_by_variable_power(g, t, v), ideal)) {
      throw InvalidArgumentError("special_fiber needs a t-saturated ideal; generator " + g.to_string() +
                                 " has t-torsion");
    }
    gens.push_back(embed(reduce_mod_t(g, residue), fiber));
  }
  return IdealHandle(fiber, std::move(gens));
}

IdealHandle curve_model_ideal(const LatticeConfiguration& cfg, const PlaneCurve& curve) {
  validate(cfg);
  RingPtr ring = model_ring(cfg.field, cfg.n_plus_1());
  PolynomialMatrix rows = column_matrix(cfg, ring);
  std::vector<Polynomial> gens;
  if (cfg.n_plus_1() >= 2) gens = minors_2x2(rows);
  for (std::size_t l = 0; l < cfg.n_plus_1(); ++l) {
    gens.push_back(t_saturate_poly(pull_back(curve, {rows[0][l], rows[1][l], rows[2][l]}, ring)));
  }
  IdealHandle raw(ring, std::move(gens));
  return saturate_variable(raw, uniformizer_index(*ring), model_weights(*ring));
}

SingleProjection single_projection_model(const LatticeConfiguration& cfg, const PlaneCurve& curve, std::size_t i) {
  validate(cfg);
  if (i < 1 || i > cfg.n_plus_1()) throw InvalidArgumentError("projection index out of range");
  RingPtr plane = plane_ring(cfg.field);
  Polynomial F = t_saturate_poly(pull_back(curve, plane_column(cfg.matrices[i - 1], plane), plane));
  Polynomial reduced = reduce_mod_t(F, cfg.residue_field());
  SingleProjection out{i, F, reduced, false, reduced.ring()->field().zero()};
  std::size_t x1 = reduced.ring()->variable("x1");
  if (reduced.num_terms() == 1) {
    const Term& term = reduced.terms().front();
    if (term.monomial == Monomial::variable(x1, curve.degree)) {
      out.pure_power = true;
      out.coefficient = term.coefficient;
    }
  }
  return out;
}

ComponentCatalog component_catalog(const RingPtr& fiber, std::size_t n_plus_1) {
  ComponentCatalog cat;
  cat.ring = fiber;
  cat.n_plus_1 = n_plus_1;
  auto x = [&](int i, std::size_t j) { return model_variable(*fiber, i, static_cast<int>(j)); };
  for (std::size_t l = 1; l <= n_plus_1; ++l) {
    PrimeComponent p{"J_" + std::to_string(l), {}};
    for (std::size_t j = 1; j <= n_plus_1; ++j) {
      if (j == l) continue;
      p.variables.push_back(x(1, j));
      p.variables.push_back(x(2, j));
    }
    cat.primary.push_back(p);
  }
  for (std::size_t i = 1; i <= n_plus_1; ++i) {
    for (std::size_t l = i + 1; l <= n_plus_1; ++l) {
      PrimeComponent p{"J_" + std::to_string(i) + "," + std::to_string(l), {x(1, i), x(1, l)}};
      for (std::size_t j = 1; j <= n_plus_1; ++j) {
        if (j == i || j == l) continue;
        p.variables.push_back(x(1, j));
        p.variables.push_back(x(2, j));
      }
      cat.secondary.push_back(p);
    }
  }
  for (std::size_t i = 1; i <= n_plus_1; ++i) {
    PrimeComponent p{"D_" + std::to_string(i), {x(1, i)}};
    for (std::size_t j = 1; j <= n_plus_1; ++j) {
      if (j == i) continue;
      p.variables.push_back(x(1, j));
      p.variables.push_back(x(2, j));
    }
    cat.curve.push_back(p);
  }
  return cat;
}

IdealHandle component_ideal(const RingPtr& ring, const PrimeComponent& c) {
  std::vector<Polynomial> gens;
  for (auto v : c.variables) gens.push_back(Polynomial::variable(ring, v));
  return IdealHandle(ring, std::move(gens));
}

std::vector<Monomial> intersection_generators(const std::vector<PrimeComponent>& components) {
  std::vector<Monomial> cur{Monomial()};
  for (const auto& c : components) {
    if (c.variables.empty()) return {};
    std::vector<Monomial> next;
    for (const auto& m : cur) {
      bool hit = false;
      for (auto v : c.variables) {
        if (m[v]) hit = true;
      }
      if (hit) {
        next.push_back(m);
        continue;
      }
      for (auto v : c.variables) next.push_back(m * Monomial::variable(v));
    }
    std::sort(next.begin(), next.end(), [](const Monomial& a, const Monomial& b) {
      return a.total_degree() != b.total_degree() ? a.total_degree() < b.total_degree()
                                                  : a.exponents() < b.exponents();
    });
    cur.clear();
    for (const auto& m : next) {
      bool redundant = false;
      for (const auto& k : cur) {
        if (k.divides(m)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) cur.push_back(m);
    }
  }
  return cur;
}

ComponentReport verify_component_decomposition(const IdealHandle& fiber, const ComponentCatalog& catalog,
                                               ComponentMode mode) {
  std::vector<PrimeComponent> expected;
  if (mode == ComponentMode::mustafin) {
    expected = catalog.primary;
    expected.insert(expected.end(), catalog.secondary.begin(), catalog.secondary.end());
  } else {
    expected = catalog.curve;
  }
  ComponentReport rep;
  bool all_contained = true;
  for (const auto& c : expected) {
    rep.labels.push_back(c.label);
    bool ok = true;
    for (const auto& g : fiber.generators()) {
      if (!vanishes_on(g, c)) {
        ok = false;
        break;
      }
    }
    rep.fiber_in_component.push_back(ok);
    if (!ok) {
      all_contained = false;
      rep.failed_checks.push_back("fiber not contained in " + c.label);
    }
  }
  auto gens = intersection_generators(expected);
  rep.intersection_generators = gens.size();
  Scalar one = fiber.ring()->field().one();
  for (const auto& m : gens) {
    Polynomial mp = Polynomial::monomial(fiber.ring(), m, one);
    if (power_membership(mp, fiber, 3) || radical_membership(mp, fiber)) continue;
    ++rep.radical_failures;
    rep.failed_checks.push_back(mp.to_string() + " not in the radical of the fiber");
  }
  rep.irredundant = true;
  for (std::size_t a = 0; a < expected.size(); ++a) {
    for (std::size_t b = 0; b < expected.size(); ++b) {
      if (a != b && subset(expected[a].variables, expected[b].variables)) rep.irredundant = false;
    }
  }
  if (!rep.irredundant) rep.failed_checks.push_back("expected components are not irredundant");
  rep.decomposition_holds = all_contained && rep.radical_failures == 0;
  rep.component_count = rep.decomposition_holds && rep.irredundant ? expected.size() : 0;
  rep.star_like = mode == ComponentMode::curve && rep.decomposition_holds && rep.irredundant;
  return rep;
}

StarLikeTrial star_like_trial(const PlaneCurve& curve, const LatticeConfiguration& cfg) {
  StarLikeTrial trial;
  trial.cfg = cfg;
  trial.seed = cfg.seed.value_or(0);
  try {
    auto start = std::chrono::steady_clock::now();
    IdealHandle model = curve_model_ideal(cfg, curve);
    IdealHandle fiber = special_fiber(model, cfg.residue_field());
    trial.model_ms = elapsed_ms(start);
    start = std::chrono::steady_clock::now();
    ComponentCatalog cat = component_catalog(fiber.ring(), cfg.n_plus_1());
    trial.components = verify_component_decomposition(fiber, cat, ComponentMode::curve);
    trial.projections_pure = true;
    for (std::size_t i = 1; i <= cfg.n_plus_1(); ++i) {
      trial.projections.push_back(single_projection_model(cfg, curve, i));
      trial.projections_pure = trial.projections_pure && trial.projections.back().pure_power;
    }
    trial.verify_ms = elapsed_ms(start);
    trial.star_like = trial.components.star_like;
  } catch (const StepLimitError&) {
    throw;
  } catch (const std::exception& e) {
    trial.error = e.what();
    trial.star_like = false;
  }
  return trial;
}

StarLikeExperiment star_like_experiment(const PlaneCurve& curve, std::size_t n_plus_1, std::uint32_t p,
                                        std::size_t trials, std::uint64_t seed, std::uint64_t bound,
                                        unsigned workers) {
  if (trials == 0) throw InvalidArgumentError("star_like_experiment needs at least one trial");
  StarLikeExperiment exp;
  exp.trials = trials;
  exp.reports.resize(trials);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(trials);
  auto work = [&]() {
    for (std::size_t k = next++; k < trials; k = next++) {
      try {
        auto cfg = sample_general_coefficients(n_plus_1, p, trial_seed(seed, k), bound);
        exp.reports[k] = star_like_trial(curve, cfg);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(trials)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& r : exp.reports) exp.successes += r.star_like ? 1 : 0;
  return exp;
}

}  // namespace mustafin
