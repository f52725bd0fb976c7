#include <doctest.h>

#include "law_check.hpp"
#include "mustafin/errors.hpp"
#include "mustafin/fermat.hpp"
#include "mustafin/text_format.hpp"
#include "oracles.hpp"

using namespace mustafin;
using namespace mustafin::testing;

namespace {

constexpr std::uint32_t kPrime = 32003;

Polynomial P(const std::string& text, const RingPtr& ring) { return parse_polynomial(text, ring); }

FermatConfig identity_fermat(unsigned d, const Field& field) {
  Matrix3 id = identity_matrix(field);
  return fermat_config_from_inverses(d, {id, id, id}, field, field.characteristic());
}

}  // namespace

TEST_CASE("covering data of the identity configuration") {
  Field f = Field::prime(kPrime);
  auto fc = identity_fermat(2, f);
  auto cd = build_covering(fc);
  for (std::size_t l = 0; l < 3; ++l) {
    CHECK(cd.P_pair[l] == ScaledPolynomial(P("x3^2", cd.plane), -4));
    CHECK(cd.P_tilde[l] == P("x1^2 + x3^2", cd.plane));
  }
  CHECK_FALSE(base_locus_empty(cd));
  CHECK_FALSE(smoothness_check(cd));
  CHECK(pullback_identity_check(cd));

  // every P_l is the same conic; its zeros at t = 2 over F_101 are rational
  Field f101 = Field::prime(101);
  auto small = build_covering(identity_fermat(2, f101));
  RingPtr search = make_ring(f101, {{"x", {"x1", "x2", "x3"}}});
  std::map<std::string, Polynomial> at_two{{"t", P("2", search)},
                                           {"x1", P("x1", search)},
                                           {"x2", P("x2", search)},
                                           {"x3", P("x3", search)}};
  Polynomial conic = substitute(small.P[0].body(), search, at_two, true);
  CHECK(has_projective_zero({conic}, {0, 1, 2}));
}

TEST_CASE("generic covering") {
  auto fc = sample_fermat_config(3, kPrime, 5);
  auto cd = build_covering(fc);
  CHECK(base_locus_empty(cd));
  CHECK(pullback_identity_check(cd));
  CHECK(smoothness_check(cd));
  CHECK_NOTHROW(cd.curve.f.ring()->variable("u1"));

  std::vector<Polynomial> perturbed{P("x1^2", cd.plane), P("x2^2", cd.plane), P("x3^3", cd.plane)};
  CHECK_FALSE(pullback_identity_check(cd, perturbed));
  CHECK_FALSE(pullback_identity_check(cd, {P("x1^2", cd.plane)}));

  std::vector<ScaledPolynomial> repeated{cd.P[0], cd.P[0], cd.P[0]};
  CHECK_FALSE(base_locus_empty(repeated));
}

TEST_CASE("characteristic restrictions") {
  CHECK(characteristic_admissible(3, kPrime));
  CHECK_FALSE(characteristic_admissible(3, 2));
  CHECK_FALSE(characteristic_admissible(3, 3));
  CHECK(characteristic_admissible(1, 3));
  CHECK_FALSE(characteristic_admissible(5, 5));
}

TEST_CASE("squares, S-polynomials and the witness") {
  auto fc = sample_fermat_config(3, kPrime, 12);
  auto cd = build_covering(fc);
  auto squares = admissibility_of_squares(fc, cd);
  CHECK(squares.verdict);
  REQUIRE(squares.lifts.size() == 3);
  for (const auto& sq : squares.lifts) {
    CHECK(sq.remainder_integral);
    CHECK(sq.admissible);
    CHECK(sq.upsilon_matches);
  }

  auto s = s_poly_checks(fc, cd, 1);
  CHECK(s.integral);
  CHECK(s.fiber_is_power);
  CHECK(s.fiber.num_terms() == 1);
  CHECK(s.agrees_with_projection);

  Scalar w = monomial_witness(fc, 1);
  CHECK_FALSE(w.is_zero());
  CHECK(w == closed_form_witness(fc));
}

TEST_CASE("a degenerate configuration has no witness") {
  auto fc = degenerate_fermat_config(3, kPrime, 4);
  CHECK(monomial_witness(fc, 1).is_zero());
  CHECK(closed_form_witness(fc).is_zero());
  auto s = s_poly_checks(fc, build_covering(fc), 1);
  CHECK_FALSE(s.fiber_is_power);
}

TEST_CASE("witness for d = 1 against the expansion") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto fc = sample_fermat_config(1, kPrime, seed);
    CHECK(monomial_witness(fc, 1) == expanded_witness(fc));
  }
}

TEST_CASE("pipeline arguments") {
  CHECK_THROWS_AS(theorem_bren_pipeline(3, kPrime, 0, 1), InvalidArgumentError);
  CHECK_THROWS_AS(sample_fermat_config(0, kPrime, 1), InvalidArgumentError);
  FermatExperiment empty;
  CHECK_FALSE(empty.verdict());
}

TEST_CASE("Fermat pipeline invariants") { check_laws(fermat_laws()); }
