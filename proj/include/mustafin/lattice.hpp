#ifndef MUSTAFIN_LATTICE_HPP
#define MUSTAFIN_LATTICE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mustafin/polynomial.hpp"

namespace mustafin {

using Matrix3 = std::array<std::array<Scalar, 3>, 3>;

Matrix3 identity_matrix(const Field& field);
Scalar determinant(const Matrix3& m);
Matrix3 adjugate(const Matrix3& m);
/// Throws DivisionByZeroError for singular input.
Matrix3 inverse(const Matrix3& m);
Matrix3 multiply(const Matrix3& a, const Matrix3& b);
bool operator==(const Matrix3& a, const Matrix3& b);

/// Matrices M_1..M_{n+1} with constant entries; lattice l is spanned by the
/// columns of g_l = M_l * diag(1, t, t^2).
struct LatticeConfiguration {
  Field field = Field::prime(32003);
  /// Residue characteristic p of k.
  std::uint32_t residue_prime = 32003;
  std::vector<Matrix3> matrices;
  std::optional<std::uint64_t> seed;

  std::size_t n_plus_1() const { return matrices.size(); }
  Field residue_field() const { return Field::prime(residue_prime); }
};

/// Throws InvalidArgumentError unless every det(M_l) has a nonzero residue.
void validate(const LatticeConfiguration& cfg);

/// Entries uniform in {0, ..., bound-1} over GF(p), each matrix redrawn
/// until invertible; gives up after 1000 draws.
LatticeConfiguration sample_general_coefficients(std::size_t n_plus_1, std::uint32_t p, std::uint64_t seed,
                                                 std::uint64_t bound);

LatticeConfiguration identity_configuration(std::size_t n_plus_1, const Field& field, std::uint32_t residue_prime);

/// t, then blocks x<j> = {x1_j, x2_j, x3_j} for j = 1..n+1.
RingPtr model_ring(const Field& field, std::size_t n_plus_1);
/// Model ring without t, for special fibers.
RingPtr fiber_ring(const Field& field, std::size_t n_plus_1);
/// t and x1, x2, x3.
RingPtr plane_ring(const Field& field);
/// t and u1, u2, u3.
RingPtr curve_ring(const Field& field);

/// Index of x<i>_<j> in the model or fiber ring (i, j one-based).
std::size_t model_variable(const Ring& ring, int i, int j);

/// Weights making g_l x_l homogeneous: t:1, x1_j:3, x2_j:2, x3_j:1.
std::vector<unsigned> model_weights(const Ring& ring);

/// Column g_l * (x1_l, x2_l, x3_l)^T in the model ring (l one-based).
std::vector<Polynomial> lattice_column(const LatticeConfiguration& cfg, const RingPtr& ring, std::size_t l);

/// g * (x1, x2, x3)^T in the plane ring.
std::vector<Polynomial> plane_column(const Matrix3& m, const RingPtr& plane);

}  // namespace mustafin

#endif  // MUSTAFIN_LATTICE_HPP
