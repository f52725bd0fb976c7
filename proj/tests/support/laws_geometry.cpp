#include <algorithm>
#include <numeric>

#include "harness.hpp"
#include "mustafin/geometry.hpp"
#include "oracles.hpp"

namespace mustafin::testing {

namespace {

constexpr std::uint32_t kPrime = 32003;

/// Mostly two lattices; every twentieth case uses three.
std::size_t lattice_count(std::size_t index) { return index % 20 == 19 ? 3 : 2; }

bool in_monomial_prime(const Polynomial& g, const std::vector<std::size_t>& vars) {
  for (const auto& term : g.terms()) {
    bool hit = false;
    for (auto v : vars) hit = hit || term.monomial[v] > 0;
    if (!hit) return false;
  }
  return true;
}

bool fiber_in_prime(const IdealHandle& fiber, const PrimeComponent& c) {
  for (const auto& g : fiber.generators()) {
    if (!in_monomial_prime(g, c.variables)) return false;
  }
  return true;
}

bool prime_contains(const PrimeComponent& big, const PrimeComponent& small) {
  for (auto v : small.variables) {
    if (std::find(big.variables.begin(), big.variables.end(), v) == big.variables.end()) return false;
  }
  return true;
}

const char* kCurves[] = {"u1^3+u2^3+u3^3", "u1^2+u2^2+u3^2", "u1^3+2*u2^3-5*u3^3+u1*u2*u3", "u1+3*u2-u3"};

}  // namespace

std::vector<Law> geometry_laws() {
  std::vector<Law> laws;

  laws.push_back({"mustafin-geometry", "lattice permutations relabel the Mustafin ideal", kMinCases,
                  [](SplitMix64& rng, std::size_t index) -> std::optional<std::string> {
                    std::size_t n1 = lattice_count(index);
                    auto cfg = sample_general_coefficients(n1, kPrime, rng.next(), kPrime);
                    std::vector<std::size_t> sigma(n1);
                    std::iota(sigma.begin(), sigma.end(), 1);
                    for (std::size_t k = n1; k > 1; --k) std::swap(sigma[k - 1], sigma[rng.below(k)]);
                    LatticeConfiguration moved = cfg;
                    for (std::size_t j = 0; j < n1; ++j) moved.matrices[sigma[j] - 1] = cfg.matrices[j];
                    IdealHandle I = mustafin_ideal(cfg);
                    IdealHandle J = mustafin_ideal(moved);
                    std::vector<Polynomial> relabeled;
                    for (const auto& g : I.generators()) relabeled.push_back(relabel_blocks(g, J.ring(), sigma));
                    if (!ideal_equal(IdealHandle(J.ring(), relabeled), J)) return "relabeled ideal differs";
                    return std::nullopt;
                  }});

  laws.push_back({"mustafin-geometry", "Mustafin generators are multihomogeneous", kMinCases,
                  [](SplitMix64& rng, std::size_t index) -> std::optional<std::string> {
                    auto cfg = sample_general_coefficients(lattice_count(index), kPrime, rng.next(), kPrime);
                    IdealHandle I = mustafin_ideal(cfg);
                    const Ring& ring = *I.ring();
                    for (const auto& g : I.generators()) {
                      for (std::size_t b = 0; b < ring.num_blocks(); ++b) {
                        if (ring.blocks()[b].name == "t") continue;
                        if (!is_homogeneous_in(g, ring.block_variables(b))) {
                          return g.to_string() + " is not homogeneous in block " + ring.blocks()[b].name;
                        }
                      }
                    }
                    return std::nullopt;
                  }});

  laws.push_back({"mustafin-geometry", "special fibers of nonzero models are nonzero", kMinCases,
                  [](SplitMix64& rng, std::size_t index) -> std::optional<std::string> {
                    auto cfg = sample_general_coefficients(lattice_count(index), kPrime, rng.next(), kPrime);
                    IdealHandle I = mustafin_ideal(cfg);
                    IdealHandle fiber = special_fiber(I, cfg.residue_field());
                    if (fiber.is_zero_ideal()) return "special fiber is the zero ideal";
                    for (const auto& g : I.generators()) {
                      if (reduce_mod_t(t_saturate_poly(g)).is_zero()) return "saturated generator vanished mod t";
                    }
                    return std::nullopt;
                  }});

  laws.push_back({"mustafin-geometry", "star-like trials match the component picture", kMinCases,
                  [](SplitMix64& rng, std::size_t index) -> std::optional<std::string> {
                    std::size_t n1 = index % 4 == 3 ? 2 : 3;
                    auto curve = parse_plane_curve(kCurves[rng.below(3)], Field::prime(kPrime));
                    auto cfg = sample_general_coefficients(n1, kPrime, rng.next(), kPrime);
                    StarLikeTrial trial = star_like_trial(curve, cfg);
                    if (!trial.error.empty()) return "trial error: " + trial.error;
                    if (!trial.star_like) return std::nullopt;
                    IdealHandle fiber = special_fiber(curve_model_ideal(cfg, curve), cfg.residue_field());
                    ComponentCatalog cat = component_catalog(fiber.ring(), n1);
                    for (const auto& d : cat.curve) {
                      if (!fiber_in_prime(fiber, d)) return "fiber not inside " + d.label;
                    }
                    for (const auto& j : cat.primary) {
                      if (fiber_in_prime(fiber, j)) return "a whole primary component " + j.label + " lies in the fiber";
                    }
                    for (const auto& s : cat.secondary) {
                      if (!fiber_in_prime(fiber, s)) continue;
                      bool covered = false;
                      for (const auto& d : cat.curve) covered = covered || prime_contains(s, d);
                      if (!covered) return "secondary " + s.label + " carries a component outside every D_i";
                    }
                    if (trial.components.component_count != n1) return "component count differs from n+1";
                    return std::nullopt;
                  }});

  laws.push_back({"mustafin-geometry", "curve models contain the Mustafin ideal", kMinCases,
                  [](SplitMix64& rng, std::size_t index) -> std::optional<std::string> {
                    std::size_t n1 = index % 50 == 49 ? 3 : 2;
                    auto curve = parse_plane_curve(kCurves[rng.below(4)], Field::prime(kPrime));
                    auto cfg = sample_general_coefficients(n1, kPrime, rng.next(), kPrime);
                    IdealHandle model = curve_model_ideal(cfg, curve);
                    IdealHandle mustafin = mustafin_ideal(cfg);
                    for (const auto& g : mustafin.generators()) {
                      if (!ideal_membership(g, model)) return g.to_string() + " is not in the curve model";
                    }
                    return std::nullopt;
                  }});

  laws.push_back({"mustafin-geometry", "single projections reduce to f(first column) x1^d", kMinCases,
                  [](SplitMix64& rng, std::size_t index) -> std::optional<std::string> {
                    std::size_t n1 = 2 + index % 3;
                    auto curve = parse_plane_curve(kCurves[rng.below(4)], Field::prime(kPrime));
                    auto cfg = sample_general_coefficients(n1, kPrime, rng.next(), kPrime);
                    std::size_t i = 1 + rng.below(n1);
                    SingleProjection sp = single_projection_model(cfg, curve, i);
                    const Ring& cr = *curve.f.ring();
                    std::vector<Scalar> values(cr.num_variables(), cfg.field.zero());
                    const Matrix3& M = cfg.matrices[i - 1];
                    values[cr.variable("u1")] = M[0][0];
                    values[cr.variable("u2")] = M[1][0];
                    values[cr.variable("u3")] = M[2][0];
                    Scalar c = evaluate(curve.f, values);
                    RingPtr plane = sp.F_tilde.ring();
                    Polynomial expected = Polynomial::monomial(
                        plane, Monomial::variable(plane->variable("x1"), curve.degree), c);
                    if (c.is_zero()) expected = Polynomial(plane);
                    if (!c.is_zero() && sp.F_tilde != expected) {
                      return testing::mismatch("F_tilde", expected.to_string(), sp.F_tilde.to_string());
                    }
                    if (sp.pure_power != !c.is_zero()) return "pure_power flag disagrees with the oracle";
                    return std::nullopt;
                  }});

  return laws;
}

}  // namespace mustafin::testing
