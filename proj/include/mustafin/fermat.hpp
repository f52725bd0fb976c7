#ifndef MUSTAFIN_FERMAT_HPP
#define MUSTAFIN_FERMAT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mustafin/syzygy_models.hpp"

namespace mustafin {

/// Three lattices M_l with inverses B_l; the coefficients are constants, so
/// every b_ij has t-offset zero.
struct FermatConfig {
  unsigned d = 3;
  LatticeConfiguration cfg;
  std::array<Matrix3, 3> B;
};

/// Computes B_l = M_l^{-1} and re-checks M_l B_l = 1.
FermatConfig make_fermat_config(unsigned d, const LatticeConfiguration& cfg);
/// M_l = B_l^{-1}; used for crafted configurations.
FermatConfig fermat_config_from_inverses(unsigned d, const std::array<Matrix3, 3>& B, const Field& field,
                                         std::uint32_t residue_prime);
FermatConfig sample_fermat_config(unsigned d, std::uint32_t p, std::uint64_t seed, std::uint64_t bound = 32003);

struct CoveringData {
  unsigned d = 0;
  RingPtr plane;
  /// pairs[l-1] = {i, j}, the complement of l.
  std::array<std::pair<std::size_t, std::size_t>, 3> pairs;
  std::vector<ScaledPolynomial> P_pair;   // t^{-4} (B_i x)_3 (B_j x)_3
  std::vector<Polynomial> P_tilde;       // quadric in the b^{(l)} entries
  std::vector<ScaledPolynomial> P;      // P_pair + t^4 P_tilde
  ScaledPolynomial curve_equation;          // P_1^d + P_2^d + P_3^d
  PlaneCurve curve;                         // t^{4d} times the above, in u
};

CoveringData build_covering(const FermatConfig& fc);

/// V(P_1, P_2, P_3) is empty in the projective plane over K.
bool base_locus_empty(const std::vector<ScaledPolynomial>& P);
bool base_locus_empty(const CoveringData& cd);

/// Substituting x_k -> P_k into the row gives (P_1^2, P_2^2, P_3^2).
bool pullback_identity_check(const CoveringData& cd, const std::vector<Polynomial>& row);
bool pullback_identity_check(const CoveringData& cd);

/// Jacobian criterion for t^{4d}(P_1^d + P_2^d + P_3^d) over K, certified
/// by a smooth specialization t = t0. A false verdict means none of the
/// tried values worked.
bool smoothness_check(const CoveringData& cd, unsigned attempts = 8);
/// p does not divide 2d.
bool characteristic_admissible(unsigned d, std::uint32_t p);

DegreeData squares_degree_data();

struct SquareLift {
  std::size_t l;
  ScaledPolynomial remainder;  // 2 t^4 P_pair P_tilde + t^8 P_tilde^2
  bool remainder_integral = false;
  SymLift lift;
  bool admissible = false;
  bool upsilon_matches = false;
};

struct SquaresReport {
  std::vector<SquareLift> lifts;
  bool verdict = false;
};

/// Lift of P_l^2 under Upsilon_l: x3_i^2 x3_j^2 plus the lift of the
/// integral remainder.
SquaresReport admissibility_of_squares(const FermatConfig& fc, const CoveringData& cd);

struct SPolyReport {
  std::size_t l = 0;
  Polynomial scaled;     // t^{4d} S^{(l)}
  bool integral = false;
  Polynomial fiber;      // reduction of the saturation
  bool fiber_is_power = false;
  Scalar coefficient;
  /// scaled, once saturated, equals the single-projection model of C'.
  bool agrees_with_projection = false;
};

SPolyReport s_poly_checks(const FermatConfig& fc, const CoveringData& cd, std::size_t l);

/// det(B_l) times the x1^{2d} coefficient of t^{4d} S^{(l)} at t = 0, in
/// the residue field.
Scalar monomial_witness(const FermatConfig& fc, std::size_t l = 1);

struct FermatTrial {
  std::uint64_t seed = 0;
  FermatConfig fc;
  bool characteristic_ok = false;
  bool base_locus_empty = false;
  bool pullback_identity = false;
  bool smooth = false;
  SquaresReport squares;
  std::vector<SPolyReport> s_poly;
  std::vector<Scalar> witnesses;
  bool fibers_ok = false;
  StarLikeTrial star_like;
  TrivialityCertificate certificate;
  bool full_witness = false;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::string error;
};

struct FermatExperiment {
  unsigned d = 0;
  std::uint32_t p = 0;
  std::uint64_t seed = 0;
  std::vector<FermatTrial> trials;
  std::size_t full_witnesses() const;
  bool verdict() const { return full_witnesses() > 0; }
};

FermatTrial fermat_trial(const FermatConfig& fc);

/// Trial k samples with trial_seed(seed, k).
FermatExperiment theorem_bren_pipeline(unsigned d, std::uint32_t p, std::size_t trials, std::uint64_t seed,
                                       std::uint64_t bound = 32003, unsigned workers = 1);

}  // namespace mustafin

#endif  // MUSTAFIN_FERMAT_HPP
