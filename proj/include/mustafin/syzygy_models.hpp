#ifndef MUSTAFIN_SYZYGY_MODELS_HPP
#define MUSTAFIN_SYZYGY_MODELS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mustafin/geometry.hpp"
#include "mustafin/rng.hpp"
#include "mustafin/scaled_polynomial.hpp"

namespace mustafin {

/// n >= 2, rho >= 1 and degrees d_1..d_{n+1} with 0 <= d_i <= rho and
/// sum d_i = n * rho.
struct DegreeData {
  int n = 2;
  int rho = 1;
  std::vector<int> degrees;

  std::size_t n_plus_1() const { return degrees.size(); }
  /// rho - d_j, the degree of block j in every lift.
  int block_degree(std::size_t j) const { return rho - degrees.at(j - 1); }
};

/// Throws InvalidArgumentError naming the violated constraint.
void validate(const DegreeData& data);

/// F in the model ring, of degree rho - d_j in block j != i and free of
/// block i.
struct SymLift {
  std::size_t index;
  Polynomial F;
};

/// Throws InvalidArgumentError on a multidegree violation.
void check_lift_shape(const SymLift& lift, const DegreeData& data);

/// Substitutes block j by g_j^{-1} (x1, x2, x3)^T. The result is homogeneous
/// of degree d_i in the plane ring, with negative t-powers in the offset.
ScaledPolynomial upsilon(const SymLift& lift, const DegreeData& data, const LatticeConfiguration& cfg);

/// Some term of the reduction of the t-saturation uses only x3 variables.
bool is_admissible_lift(const Polynomial& F);

/// Exponent triples per block, indexed by block number (block i stays
/// empty). Blocks are filled in `fill_order` (default: increasing), each
/// taking exponents of x1, then x2, then x3.
std::vector<std::array<unsigned, 3>> monomial_factorization(const std::array<unsigned, 3>& exponents,
                                                            const DegreeData& data, std::size_t i,
                                                            const std::vector<std::size_t>& fill_order = {});

/// Fill order 2, 3, ..., n+1, 1.
std::vector<std::size_t> rotated_fill_order(std::size_t n_plus_1);

struct PolynomialLift {
  Polynomial F_tilde;
  SymLift lift;
};

/// F~ by termwise factorization and F = F~(g_1 x_1, ..., g_{n+1} x_{n+1}).
/// h lives in the plane ring and must be homogeneous of degree d_i.
PolynomialLift lift_polynomial(const Polynomial& h, const DegreeData& data, std::size_t i,
                               const LatticeConfiguration& cfg, const std::vector<std::size_t>& fill_order = {});
/// Rejects inputs with negative t-valuation.
PolynomialLift lift_polynomial(const ScaledPolynomial& h, const DegreeData& data, std::size_t i,
                               const LatticeConfiguration& cfg, const std::vector<std::size_t>& fill_order = {});

struct SyzygyTuple {
  DegreeData data;
  std::vector<ScaledPolynomial> entries;
  std::vector<SymLift> lifts;
};

/// prod_{j != i} x3_j^{rho - d_j} in the model ring.
Polynomial x3_monomial(const RingPtr& model, const DegreeData& data, std::size_t i);

/// (f_i + h_i) with f_i = upsilon(prod x3_j^{rho-d_j}) and lifts
/// prod x3_j^{rho-d_j} + lift(h_i).
SyzygyTuple example_class(const DegreeData& data, const LatticeConfiguration& cfg, const std::vector<Polynomial>& h);

/// Dense form of the given degree in x1, x2, x3 with coefficients uniform
/// in {0, ..., bound-1}.
Polynomial random_form(const RingPtr& plane, unsigned degree, SplitMix64& rng, std::uint64_t bound);

/// One random form of degree d_i per index.
std::vector<Polynomial> random_forms(const RingPtr& plane, const DegreeData& data, SplitMix64& rng,
                                     std::uint64_t bound);

/// Row (A_1, ..., A_{n+1}) on D_i: saturated lifts at t = 0, x1_i = 0 and
/// x1_j = x2_j = 0, x3_j = 1 for j != i. Lives in the ring {x2_i, x3_i}
/// over the residue field.
std::vector<Polynomial> restrict_to_component(const SyzygyTuple& tuple, std::size_t i, const Field& residue);

struct ComponentCertificate {
  std::size_t component;
  std::vector<Polynomial> row;
  std::vector<int> row_degrees;  // -1 for a zero entry
  std::optional<Scalar> unit_value;
  std::vector<std::vector<Polynomial>> kernel_basis;
  bool relations_hold = false;
  bool syzygies_agree = false;
  bool verdict = false;
  std::string diagnostic;
};

struct TrivialityCertificate {
  std::vector<ComponentCertificate> components;
  bool verdict = false;
};

TrivialityCertificate triviality_certificate(const SyzygyTuple& tuple, const LatticeConfiguration& cfg);

/// V(f, f_1, ..., f_{n+1}) is empty in the projective plane over K,
/// certified by a specialization of t (false may be inconclusive).
bool coverage_check(const PlaneCurve& curve, const std::vector<ScaledPolynomial>& entries);

}  // namespace mustafin

#endif  // MUSTAFIN_SYZYGY_MODELS_HPP
