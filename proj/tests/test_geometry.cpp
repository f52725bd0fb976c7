#include <doctest.h>

#include "law_check.hpp"
#include "mustafin/errors.hpp"
#include "mustafin/geometry.hpp"
#include "mustafin/text_format.hpp"
#include "oracles.hpp"

using namespace mustafin;
using namespace mustafin::testing;

namespace {

constexpr std::uint32_t kPrime = 32003;

Polynomial P(const std::string& text, const RingPtr& ring) { return parse_polynomial(text, ring); }

PlaneCurve fermat_cubic() { return parse_plane_curve("u1^3+u2^3+u3^3", Field::prime(kPrime)); }

}  // namespace

TEST_CASE("sampling and validating configurations") {
  auto cfg = sample_general_coefficients(3, kPrime, 1, kPrime);
  REQUIRE(cfg.n_plus_1() == 3);
  for (const auto& m : cfg.matrices) CHECK_FALSE(determinant(m).is_zero());
  CHECK(sample_general_coefficients(3, kPrime, 1, kPrime).matrices == cfg.matrices);
  CHECK_NOTHROW(validate(identity_configuration(3, Field::prime(kPrime), kPrime)));

  LatticeConfiguration bad = identity_configuration(2, Field::prime(kPrime), kPrime);
  bad.matrices[1][1] = bad.matrices[1][0];
  CHECK_THROWS_AS(validate(bad), InvalidArgumentError);
  CHECK_THROWS(sample_general_coefficients(2, kPrime, 3, 1));
}

TEST_CASE("Mustafin ideal of one and two lattices") {
  auto one = mustafin_ideal(identity_configuration(1, Field::rationals(), kPrime));
  CHECK(one.is_zero_ideal());

  auto cfg = identity_configuration(2, Field::rationals(), kPrime);
  auto I = mustafin_ideal(cfg);
  const RingPtr& R = I.ring();
  // the minor is t (x1_1 x2_2 - x2_1 x1_2); saturation removes the factor t
  CHECK(ideal_membership(P("x1_1*x2_2 - x2_1*x1_2", R), I));
  CHECK(ideal_membership(P("t*(x1_1*x2_2 - x2_1*x1_2)", R), I));
  CHECK_FALSE(ideal_membership(P("x1_1*x2_2", R), I));
}

TEST_CASE("special fibers") {
  auto R = make_ring(Field::prime(kPrime), {{"t", {"t"}}, {"x1", {"x1_1", "x2_1", "x3_1"}}});
  IdealHandle I(R, {P("x1_1 - t*x2_1", R)});
  auto F = special_fiber(I, Field::prime(kPrime));
  REQUIRE(F.generators().size() == 1);
  CHECK(F.generators()[0] == P("x1_1", F.ring()));
  CHECK(special_fiber(IdealHandle(R), Field::prime(kPrime)).is_zero_ideal());
  CHECK_THROWS_AS(special_fiber(IdealHandle(R, {P("t*x1_1", R)}), Field::prime(kPrime)), InvalidArgumentError);
}

TEST_CASE("generic Mustafin fiber is cut out by the six catalog ideals") {
  auto cfg = sample_general_coefficients(3, kPrime, 11, kPrime);
  auto fiber = special_fiber(mustafin_ideal(cfg), cfg.residue_field());
  auto cat = component_catalog(fiber.ring(), 3);
  CHECK(cat.primary.size() == 3);
  CHECK(cat.secondary.size() == 3);
  auto rep = verify_component_decomposition(fiber, cat, ComponentMode::mustafin);
  CHECK(rep.decomposition_holds);
  CHECK(rep.component_count == 6);
  CHECK(rep.radical_failures == 0);
}

TEST_CASE("component checks on hand-made fibers") {
  auto fiber_r = fiber_ring(Field::prime(kPrime), 3);
  auto cat = component_catalog(fiber_r, 3);
  std::vector<PrimeComponent> all = cat.primary;
  all.insert(all.end(), cat.secondary.begin(), cat.secondary.end());
  std::vector<Polynomial> gens;
  for (const auto& m : intersection_generators(all)) {
    gens.push_back(Polynomial::monomial(fiber_r, m, fiber_r->field().one()));
  }
  auto good = verify_component_decomposition(IdealHandle(fiber_r, gens), cat, ComponentMode::mustafin);
  CHECK(good.decomposition_holds);
  CHECK(good.irredundant);

  auto bad = verify_component_decomposition(IdealHandle(fiber_r, {P("x1_1", fiber_r)}), cat, ComponentMode::curve);
  CHECK_FALSE(bad.star_like);
  CHECK(bad.radical_failures > 0);
  CHECK_FALSE(bad.failed_checks.empty());
}

TEST_CASE("curve model of a line in one projective plane") {
  auto cfg = sample_general_coefficients(1, kPrime, 5, kPrime);
  auto curve = parse_plane_curve("u1", Field::prime(kPrime));
  auto model = curve_model_ideal(cfg, curve);
  auto sp = single_projection_model(cfg, curve, 1);
  const RingPtr& R = model.ring();
  std::map<std::string, Polynomial> rename{{"t", P("t", R)}, {"x1", P("x1_1", R)}, {"x2", P("x2_1", R)}, {"x3", P("x3_1", R)}};
  Polynomial F = substitute(sp.F, R, rename, true);
  CHECK(ideal_equal(model, IdealHandle(model.ring(), {F})));
  CHECK(sp.F_tilde == P(cfg.matrices[0][0][0].to_string() + "*x1", sp.F_tilde.ring()));
  CHECK(sp.pure_power);
}

TEST_CASE("Fermat cubic model is star-like and contains the Mustafin ideal") {
  auto cfg = sample_general_coefficients(3, kPrime, 2, kPrime);
  auto curve = fermat_cubic();
  auto model = curve_model_ideal(cfg, curve);
  auto mustafin = mustafin_ideal(cfg);
  CHECK(ideal_contained(mustafin, model));
  CHECK_FALSE(ideal_contained(model, mustafin));

  auto trial = star_like_trial(curve, cfg);
  CHECK(trial.error.empty());
  CHECK(trial.star_like);
  CHECK(trial.projections_pure);
  for (const auto& p : trial.projections) {
    CHECK(p.F_tilde.num_terms() == 1);
    CHECK_FALSE(p.coefficient.is_zero());
  }
}

TEST_CASE("single projection through a point of the curve is not a pure power") {
  auto curve = fermat_cubic();
  SplitMix64 rng(77);
  std::array<Scalar, 3> column;
  REQUIRE(solve_on_curve(curve.f, kPrime, rng, column));
  auto cfg = sample_general_coefficients(2, kPrime, 8, kPrime);
  for (int r = 0; r < 3; ++r) cfg.matrices[0][r][0] = column[r];
  REQUIRE_FALSE(determinant(cfg.matrices[0]).is_zero());
  auto sp = single_projection_model(cfg, curve, 1);
  CHECK_FALSE(sp.pure_power);
  CHECK(sp.F_tilde.coefficient_of(Monomial::variable(sp.F_tilde.ring()->variable("x1"), 3)).is_zero());
}

TEST_CASE("star-like experiment edge cases") {
  auto curve = fermat_cubic();
  CHECK_THROWS_AS(star_like_experiment(curve, 3, kPrime, 0, 1), InvalidArgumentError);
  auto trial = star_like_trial(curve, identity_configuration(3, Field::prime(kPrime), kPrime));
  CHECK_FALSE(trial.star_like);

  auto exp = star_like_experiment(curve, 3, kPrime, 3, 7, kPrime, 2);
  auto again = star_like_experiment(curve, 3, kPrime, 3, 7, kPrime, 1);
  REQUIRE(exp.reports.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(exp.reports[k].seed == again.reports[k].seed);
    CHECK(exp.reports[k].star_like == again.reports[k].star_like);
  }
  CHECK(exp.successes == again.successes);
}

TEST_CASE("plane curves") {
  Field f = Field::prime(kPrime);
  auto c = fermat_cubic();
  std::vector<std::size_t> u{c.f.ring()->variable("u1"), c.f.ring()->variable("u2"), c.f.ring()->variable("u3")};
  CHECK(is_smooth_plane_curve(c.f, u));
  CHECK_FALSE(is_smooth_plane_curve(parse_plane_curve("u1^2*u2+u3^3", f).f, u));
  CHECK_THROWS_AS(parse_plane_curve("u1^2+u2", f), InvalidArgumentError);
  CHECK_THROWS_AS(parse_plane_curve("t*u1", f), InvalidArgumentError);
  CHECK_THROWS_AS(parse_plane_curve("0", f), InvalidArgumentError);
}

TEST_CASE("geometry invariants") { check_laws(geometry_laws()); }
