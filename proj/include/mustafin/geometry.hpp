#ifndef MUSTAFIN_GEOMETRY_HPP
#define MUSTAFIN_GEOMETRY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mustafin/ideal.hpp"
#include "mustafin/lattice.hpp"

namespace mustafin {

/// Homogeneous f(u1, u2, u3) with coefficients in R (the curve ring).
struct PlaneCurve {
  Polynomial f;
  unsigned degree;
};

/// Validates: nonzero, homogeneous in u, not divisible by t.
PlaneCurve make_plane_curve(const Polynomial& f);
PlaneCurve parse_plane_curve(const std::string& text, const Field& field);

/// Smooth plane curves are irreducible; this is the irreducibility evidence
/// used for curves given to the pipelines.
bool is_smooth_plane_curve(const Polynomial& f, const std::vector<std::size_t>& coordinates);

/// 2x2 minors of the columns g_l x_l, saturated by t.
IdealHandle mustafin_ideal(const LatticeConfiguration& cfg);

/// t -> 0 with coefficients in k; lives in the fiber ring. Rejects ideals
/// with a generator t^v g where g is not in the ideal.
IdealHandle special_fiber(const IdealHandle& ideal, const Field& residue);

/// Closure of the curve: minors of the columns g_l x_l together with
/// f(g_l x_l) for every l, saturated by t.
IdealHandle curve_model_ideal(const LatticeConfiguration& cfg, const PlaneCurve& curve);

struct SingleProjection {
  std::size_t index;
  Polynomial F;
  Polynomial F_tilde;
  /// F_tilde = c * x1^d with c != 0.
  bool pure_power;
  Scalar coefficient;
};
/// F = f(g_i x) made t-saturated in the plane ring, and its reduction.
SingleProjection single_projection_model(const LatticeConfiguration& cfg, const PlaneCurve& curve, std::size_t i);

/// Monomial prime generated by fiber-ring variables.
struct PrimeComponent {
  std::string label;
  std::vector<std::size_t> variables;
};

struct ComponentCatalog {
  RingPtr ring;
  std::size_t n_plus_1 = 0;
  std::vector<PrimeComponent> primary;
  std::vector<PrimeComponent> secondary;
  std::vector<PrimeComponent> curve;
};

ComponentCatalog component_catalog(const RingPtr& fiber, std::size_t n_plus_1);
IdealHandle component_ideal(const RingPtr& ring, const PrimeComponent& c);

/// Squarefree monomial generators of the intersection of monomial primes.
std::vector<Monomial> intersection_generators(const std::vector<PrimeComponent>& components);

enum class ComponentMode { mustafin, curve };

struct ComponentReport {
  std::vector<std::string> labels;
  /// Check (a): fiber contained in each expected prime.
  std::vector<bool> fiber_in_component;
  /// Check (b): generators of the intersection inside the radical.
  std::size_t intersection_generators = 0;
  std::size_t radical_failures = 0;
  bool irredundant = false;
  bool decomposition_holds = false;
  std::size_t component_count = 0;
  bool star_like = false;
  std::vector<std::string> failed_checks;
};

ComponentReport verify_component_decomposition(const IdealHandle& fiber, const ComponentCatalog& catalog,
                                               ComponentMode mode);

struct StarLikeTrial {
  std::uint64_t seed = 0;
  LatticeConfiguration cfg;
  ComponentReport components;
  std::vector<SingleProjection> projections;
  bool projections_pure = false;
  bool star_like = false;
  double model_ms = 0;
  double verify_ms = 0;
  std::string error;
};

struct StarLikeExperiment {
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::vector<StarLikeTrial> reports;
  double ratio() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

StarLikeTrial star_like_trial(const PlaneCurve& curve, const LatticeConfiguration& cfg);

/// Runs sample -> model -> fiber -> verify for each trial; trial k uses
/// trial_seed(seed, k). Independent trials are spread over `workers`
/// threads; results are ordered by trial index.
StarLikeExperiment star_like_experiment(const PlaneCurve& curve, std::size_t n_plus_1, std::uint32_t p,
                                        std::size_t trials, std::uint64_t seed, std::uint64_t bound = 32003,
                                        unsigned workers = 1);

}  // namespace mustafin

#endif  // MUSTAFIN_GEOMETRY_HPP
