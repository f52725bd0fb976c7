#include "mustafin/fermat.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <thread>

#include "mustafin/errors.hpp"
#include "mustafin/rng.hpp"

namespace mustafin {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::size_t> xs(const Ring& plane) {
  return {plane.variable("x1"), plane.variable("x2"), plane.variable("x3")};
}

Polynomial linear_form(const RingPtr& plane, const std::array<Scalar, 3>& row) {
  auto x = xs(*plane);
  Polynomial out(plane);
  for (int k = 0; k < 3; ++k) {
    if (!row[k].is_zero()) out += row[k] * Polynomial::variable(plane, x[k]);
  }
  return out;
}

Polynomial t_power(const RingPtr& ring, unsigned k) {
  return Polynomial::monomial(ring, Monomial::variable(uniformizer_index(*ring), k), ring->field().one());
}

/// sum c * prod P_k^{e_k} over the terms of a form in x1, x2, x3.
ScaledPolynomial compose(const Polynomial& form, const std::vector<ScaledPolynomial>& P) {
  const RingPtr& plane = P[0].ring();
  auto x = xs(*form.ring());
  std::size_t t = uniformizer_index(*form.ring());
  ScaledPolynomial out{Polynomial(plane)};
  for (const auto& term : form.terms()) {
    ScaledPolynomial piece{Polynomial::constant(plane, term.coefficient)};
    if (term.monomial[t]) piece *= ScaledPolynomial(t_power(plane, term.monomial[t]));
    for (int k = 0; k < 3; ++k) {
      if (term.monomial[x[k]]) piece *= P[k].pow(term.monomial[x[k]]);
    }
    out += piece;
  }
  return out;
}

/// P(g x) for g = M diag(1, t, t^2).
ScaledPolynomial pull_back_scaled(const ScaledPolynomial& P, const Matrix3& M) {
  const RingPtr& plane = P.ring();
  auto col = plane_column(M, plane);
  auto x = xs(*plane);
  std::vector<std::optional<Polynomial>> images(plane->num_variables());
  images[uniformizer_index(*plane)] = Polynomial::variable(plane, uniformizer_index(*plane));
  for (int k = 0; k < 3; ++k) images[x[k]] = col[k];
  return ScaledPolynomial(substitute(P.body(), plane, images), P.offset());
}

ScaledPolynomial s_poly(const CoveringData& cd, const Matrix3& M) {
  ScaledPolynomial S{Polynomial(cd.plane)};
  for (const auto& P : cd.P) S += pull_back_scaled(P, M).pow(cd.d);
  return S.shifted(4L * cd.d);
}

void check_d(unsigned d) {
  if (d < 1) throw InvalidArgumentError("Fermat degree d must be at least 1");
}

}  // namespace

FermatConfig make_fermat_config(unsigned d, const LatticeConfiguration& cfg) {
  check_d(d);
  if (cfg.n_plus_1() != 3) throw InvalidArgumentError("the Fermat covering uses exactly three lattices");
  validate(cfg);
  FermatConfig fc{d, cfg, {}};
  for (int l = 0; l < 3; ++l) {
    fc.B[l] = inverse(cfg.matrices[l]);
    if (!(multiply(cfg.matrices[l], fc.B[l]) == identity_matrix(cfg.field))) {
      throw InvalidArgumentError("M_" + std::to_string(l + 1) + " B_" + std::to_string(l + 1) + " is not the identity");
    }
  }
  return fc;
}

FermatConfig fermat_config_from_inverses(unsigned d, const std::array<Matrix3, 3>& B, const Field& field,
                                         std::uint32_t residue_prime) {
  LatticeConfiguration cfg;
  cfg.field = field;
  cfg.residue_prime = residue_prime;
  for (const auto& b : B) {
    if (determinant(b).is_zero()) throw InvalidArgumentError("singular B_l");
    cfg.matrices.push_back(inverse(b));
  }
  return make_fermat_config(d, cfg);
}

FermatConfig sample_fermat_config(unsigned d, std::uint32_t p, std::uint64_t seed, std::uint64_t bound) {
  return make_fermat_config(d, sample_general_coefficients(3, p, seed, bound));
}

CoveringData build_covering(const FermatConfig& fc) {
  check_d(fc.d);
  RingPtr plane = plane_ring(fc.cfg.field);
  auto x = xs(*plane);
  auto X = [&](int k) { return Polynomial::variable(plane, x[k - 1]); };
  CoveringData cd{fc.d, plane, {{{2, 3}, {1, 3}, {1, 2}}}, {}, {}, {}, ScaledPolynomial(Polynomial(plane)),
                  PlaneCurve{Polynomial(plane), 0}};
  for (std::size_t l = 1; l <= 3; ++l) {
    auto [i, j] = cd.pairs[l - 1];
    const Matrix3& b = fc.B[l - 1];
    Polynomial pair = linear_form(plane, fc.B[i - 1][2]) * linear_form(plane, fc.B[j - 1][2]);
    cd.P_pair.emplace_back(pair, -4);
    if (!cd.P_pair.back().shifted(4).is_integral()) throw InvalidArgumentError("t^4 P_ij is not integral");
    Polynomial quad = b[0][0] * X(1) * X(1) + b[0][1] * X(1) * X(2) + b[0][2] * X(2) * X(2) +
                      b[1][0] * X(2) * X(3) + b[1][1] * X(3) * X(3) + b[1][2] * X(1) * X(3);
    cd.P_tilde.push_back(quad);
    cd.P.push_back(cd.P_pair.back() + ScaledPolynomial(quad, 4));
    cd.curve_equation += cd.P[l - 1].pow(fc.d);
  }
  if (cd.curve_equation.is_zero()) throw InvalidArgumentError("covered curve equation vanishes");
  Polynomial cleared = cd.curve_equation.shifted(4L * fc.d).to_polynomial();
  cleared = t_saturate_poly(cleared);
  RingPtr curve = curve_ring(fc.cfg.field);
  std::map<std::string, Polynomial> images{{"t", Polynomial::variable(curve, "t")},
                                           {"x1", Polynomial::variable(curve, "u1")},
                                           {"x2", Polynomial::variable(curve, "u2")},
                                           {"x3", Polynomial::variable(curve, "u3")}};
  cd.curve = make_plane_curve(substitute(cleared, curve, images, true));
  return cd;
}

bool base_locus_empty(const std::vector<ScaledPolynomial>& P) {
  if (P.empty()) throw InvalidArgumentError("base_locus_empty needs at least one section");
  std::vector<Polynomial> bodies;
  for (const auto& p : P) bodies.push_back(p.body());
  return projectively_empty(bodies, xs(*P.front().ring()));
}

bool base_locus_empty(const CoveringData& cd) {
  return base_locus_empty(cd.P);
}

bool pullback_identity_check(const CoveringData& cd, const std::vector<Polynomial>& row) {
  if (row.size() != 3) return false;
  for (std::size_t k = 0; k < 3; ++k) {
    if (!(compose(row[k], cd.P) == cd.P[k].pow(2))) return false;
  }
  return true;
}

bool pullback_identity_check(const CoveringData& cd) {
  auto x = xs(*cd.plane);
  std::vector<Polynomial> row;
  for (int k = 0; k < 3; ++k) row.push_back(Polynomial::variable(cd.plane, x[k]).pow(2));
  return pullback_identity_check(cd, row);
}

bool smoothness_check(const CoveringData& cd, unsigned attempts) {
  Polynomial F = t_saturate_poly(cd.curve_equation.shifted(4L * cd.d).to_polynomial());
  auto x = xs(*cd.plane);
  std::vector<Polynomial> polys{F};
  for (auto v : x) polys.push_back(derivative(F, v));
  return projectively_empty_specialized(polys, x, attempts, 0x5eed5eedULL + cd.d);
}

bool characteristic_admissible(unsigned d, std::uint32_t p) { return p != 0 && (2UL * d) % p != 0; }

DegreeData squares_degree_data() { return DegreeData{2, 6, {4, 4, 4}}; }

SquaresReport admissibility_of_squares(const FermatConfig& fc, const CoveringData& cd) {
  DegreeData data = squares_degree_data();
  RingPtr model = model_ring(fc.cfg.field, 3);
  SquaresReport report;
  report.verdict = true;
  for (std::size_t l = 1; l <= 3; ++l) {
    auto [i, j] = cd.pairs[l - 1];
    const ScaledPolynomial& pair = cd.P_pair[l - 1];
    ScaledPolynomial tilde(cd.P_tilde[l - 1]);
    SquareLift sq{l, ScaledPolynomial(Polynomial::constant(cd.plane, 2), 4) * pair * tilde + tilde.pow(2).shifted(8),
                  false, SymLift{l, Polynomial(model)}, false, false};
    sq.remainder_integral = sq.remainder.is_integral();
    Polynomial F = Polynomial::variable(model, model_variable(*model, 3, static_cast<int>(i))).pow(2) *
                   Polynomial::variable(model, model_variable(*model, 3, static_cast<int>(j))).pow(2);
    if (sq.remainder_integral && !sq.remainder.is_zero()) {
      F += lift_polynomial(sq.remainder, data, l, fc.cfg).lift.F;
    }
    sq.lift = SymLift{l, F};
    sq.admissible = is_admissible_lift(F);
    sq.upsilon_matches = sq.remainder_integral && upsilon(sq.lift, data, fc.cfg) == cd.P[l - 1].pow(2);
    report.verdict = report.verdict && sq.remainder_integral && sq.admissible && sq.upsilon_matches;
    report.lifts.push_back(std::move(sq));
  }
  return report;
}

SPolyReport s_poly_checks(const FermatConfig& fc, const CoveringData& cd, std::size_t l) {
  if (l < 1 || l > 3) throw InvalidArgumentError("l must be 1, 2 or 3");
  SPolyReport r{l, Polynomial(cd.plane), false, Polynomial(cd.plane), false, fc.cfg.residue_field().zero(), false};
  ScaledPolynomial S = s_poly(cd, fc.cfg.matrices[l - 1]);
  r.integral = S.is_integral();
  if (!r.integral) return r;
  r.scaled = S.to_polynomial();
  if (r.scaled.is_zero()) return r;
  Polynomial saturated = t_saturate_poly(r.scaled);
  r.fiber = reduce_mod_t(saturated, fc.cfg.residue_field());
  std::size_t x1 = r.fiber.ring()->variable("x1");
  if (r.fiber.num_terms() == 1 && r.fiber.terms().front().monomial == Monomial::variable(x1, 2 * fc.d)) {
    r.fiber_is_power = true;
    r.coefficient = r.fiber.terms().front().coefficient;
  }
  r.agrees_with_projection = single_projection_model(fc.cfg, cd.curve, l).F == saturated;
  return r;
}

Scalar monomial_witness(const FermatConfig& fc, std::size_t l) {
  if (l < 1 || l > 3) throw InvalidArgumentError("l must be 1, 2 or 3");
  CoveringData cd = build_covering(fc);
  ScaledPolynomial S = s_poly(cd, fc.cfg.matrices[l - 1]);
  if (!S.is_integral()) throw InvalidArgumentError("t^{4d} S is not integral");
  Field k = fc.cfg.residue_field();
  Polynomial reduced = reduce_mod_t(S.to_polynomial(), k);
  Scalar c = reduced.coefficient_of(Monomial::variable(reduced.ring()->variable("x1"), 2 * fc.d));
  Scalar det = determinant(fc.B[l - 1]);
  if (det.modulus() != k.characteristic()) det = det.reduce_mod(k.characteristic());
  return det * c;
}

std::size_t FermatExperiment::full_witnesses() const {
  std::size_t n = 0;
  for (const auto& t : trials) n += t.full_witness ? 1 : 0;
  return n;
}

FermatTrial fermat_trial(const FermatConfig& fc) {
  FermatTrial trial;
  trial.fc = fc;
  trial.seed = fc.cfg.seed.value_or(0);
  trial.characteristic_ok = characteristic_admissible(fc.d, fc.cfg.residue_prime);
  try {
    auto start = Clock::now();
    CoveringData cd = build_covering(fc);
    trial.pullback_identity = pullback_identity_check(cd);
    trial.timings_ms.emplace_back("covering", since(start));

    start = Clock::now();
    trial.base_locus_empty = base_locus_empty(cd);
    trial.timings_ms.emplace_back("base_locus", since(start));

    start = Clock::now();
    trial.smooth = smoothness_check(cd);
    trial.timings_ms.emplace_back("smoothness", since(start));

    start = Clock::now();
    trial.squares = admissibility_of_squares(fc, cd);
    trial.timings_ms.emplace_back("squares", since(start));

    start = Clock::now();
    trial.fibers_ok = true;
    for (std::size_t l = 1; l <= 3; ++l) {
      trial.s_poly.push_back(s_poly_checks(fc, cd, l));
      trial.witnesses.push_back(monomial_witness(fc, l));
      const auto& r = trial.s_poly.back();
      trial.fibers_ok = trial.fibers_ok && r.integral && r.fiber_is_power;
    }
    trial.timings_ms.emplace_back("s_poly", since(start));

    start = Clock::now();
    trial.star_like = star_like_trial(cd.curve, fc.cfg);
    trial.timings_ms.emplace_back("star_like", since(start));

    start = Clock::now();
    SyzygyTuple tuple{squares_degree_data(), {}, {}};
    for (std::size_t l = 0; l < 3; ++l) {
      tuple.entries.push_back(cd.P[l].pow(2));
      tuple.lifts.push_back(trial.squares.lifts[l].lift);
    }
    trial.certificate = triviality_certificate(tuple, fc.cfg);
    trial.timings_ms.emplace_back("certificate", since(start));

    trial.full_witness = trial.characteristic_ok && trial.base_locus_empty && trial.pullback_identity &&
                         trial.smooth && trial.squares.verdict && trial.fibers_ok && trial.star_like.star_like &&
                         trial.certificate.verdict;
  } catch (const StepLimitError&) {
    throw;
  } catch (const std::exception& e) {
    trial.error = e.what();
    trial.full_witness = false;
  }
  return trial;
}

FermatExperiment theorem_bren_pipeline(unsigned d, std::uint32_t p, std::size_t trials, std::uint64_t seed,
                                       std::uint64_t bound, unsigned workers) {
  check_d(d);
  if (trials == 0) throw InvalidArgumentError("the Fermat pipeline needs at least one trial");
  FermatExperiment exp{d, p, seed, std::vector<FermatTrial>(trials)};
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(trials);
  auto work = [&]() {
    for (std::size_t k = next++; k < trials; k = next++) {
      try {
        exp.trials[k] = fermat_trial(sample_fermat_config(d, p, trial_seed(seed, k), bound));
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
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return exp;
}

}  // namespace mustafin
