#include "mustafin/lattice.hpp"

#include <string>

#include "mustafin/errors.hpp"
#include "mustafin/rng.hpp"

namespace mustafin {

Matrix3 identity_matrix(const Field& field) {
  Matrix3 m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m[r][c] = r == c ? field.one() : field.zero();
  }
  return m;
}

Scalar determinant(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Matrix3 adjugate(const Matrix3& m) {
  Matrix3 a;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      // cofactor of entry (c, r)
      int r0 = (c + 1) % 3;
      int r1 = (c + 2) % 3;
      int c0 = (r + 1) % 3;
      int c1 = (r + 2) % 3;
      a[r][c] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  }
  return a;
}

Matrix3 inverse(const Matrix3& m) {
  Scalar det = determinant(m);
  if (det.is_zero()) throw DivisionByZeroError("singular matrix");
  Scalar inv = det.inverse();
  Matrix3 a = adjugate(m);
  for (auto& row : a) {
    for (auto& x : row) x *= inv;
  }
  return a;
}

Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
  Matrix3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      Scalar s = a[r][0] * b[0][c];
      s += a[r][1] * b[1][c];
      s += a[r][2] * b[2][c];
      out[r][c] = s;
    }
  }
  return out;
}

bool operator==(const Matrix3& a, const Matrix3& b) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (a[r][c] != b[r][c]) return false;
    }
  }
  return true;
}

void validate(const LatticeConfiguration& cfg) {
  if (cfg.matrices.empty()) throw InvalidArgumentError("configuration needs at least one lattice");
  if (!is_prime(cfg.residue_prime)) throw InvalidArgumentError("residue characteristic must be prime");
  if (!cfg.field.is_rational() && cfg.field.characteristic() != cfg.residue_prime) {
    throw InvalidArgumentError("coefficient field and residue characteristic disagree");
  }
  for (std::size_t l = 0; l < cfg.matrices.size(); ++l) {
    for (const auto& row : cfg.matrices[l]) {
      for (const auto& x : row) {
        if (x.modulus() != cfg.field.characteristic()) {
          throw InvalidArgumentError("matrix entry outside the coefficient field");
        }
      }
    }
    Scalar det = determinant(cfg.matrices[l]);
    bool unit = false;
    try {
      unit = !det.reduce_mod(cfg.residue_prime).is_zero();
    } catch (const DivisionByZeroError&) {
      unit = false;
    }
    if (!unit) {
      throw InvalidArgumentError("det(M_" + std::to_string(l + 1) + ") has zero residue mod " +
                                 std::to_string(cfg.residue_prime));
    }
  }
}

LatticeConfiguration sample_general_coefficients(std::size_t n_plus_1, std::uint32_t p, std::uint64_t seed,
                                                 std::uint64_t bound) {
  if (n_plus_1 == 0) throw InvalidArgumentError("n_plus_1 must be positive");
  if (bound < 2) throw InvalidArgumentError("coefficient bound must be at least 2");
  LatticeConfiguration cfg;
  cfg.field = Field::prime(p);
  cfg.residue_prime = p;
  cfg.seed = seed;
  SplitMix64 rng(seed);
  int draws = 0;
  while (cfg.matrices.size() < n_plus_1) {
    if (++draws > 1000) throw InvalidArgumentError("could not sample an invertible matrix in 1000 draws");
    Matrix3 m;
    for (auto& row : m) {
      for (auto& x : row) x = Scalar::modular(rng.below(bound), p);
    }
    if (!determinant(m).is_zero()) cfg.matrices.push_back(m);
  }
  return cfg;
}

LatticeConfiguration identity_configuration(std::size_t n_plus_1, const Field& field, std::uint32_t residue_prime) {
  LatticeConfiguration cfg;
  cfg.field = field;
  cfg.residue_prime = residue_prime;
  cfg.matrices.assign(n_plus_1, identity_matrix(field));
  return cfg;
}

namespace {

std::vector<VariableBlock> x_blocks(std::size_t n_plus_1) {
  std::vector<VariableBlock> blocks;
  for (std::size_t j = 1; j <= n_plus_1; ++j) {
    std::string s = std::to_string(j);
    blocks.push_back({"x" + s, {"x1_" + s, "x2_" + s, "x3_" + s}});
  }
  return blocks;
}

}  // namespace

RingPtr model_ring(const Field& field, std::size_t n_plus_1) {
  std::vector<VariableBlock> blocks{{"t", {"t"}}};
  for (auto& b : x_blocks(n_plus_1)) blocks.push_back(std::move(b));
  return make_ring(field, std::move(blocks));
}

RingPtr fiber_ring(const Field& field, std::size_t n_plus_1) { return make_ring(field, x_blocks(n_plus_1)); }

RingPtr plane_ring(const Field& field) { return make_ring(field, {{"t", {"t"}}, {"x", {"x1", "x2", "x3"}}}); }

RingPtr curve_ring(const Field& field) { return make_ring(field, {{"t", {"t"}}, {"u", {"u1", "u2", "u3"}}}); }

std::size_t model_variable(const Ring& ring, int i, int j) {
  return ring.variable("x" + std::to_string(i) + "_" + std::to_string(j));
}

std::vector<unsigned> model_weights(const Ring& ring) {
  std::vector<unsigned> w(ring.num_variables(), 1);
  for (std::size_t v = 0; v < ring.num_variables(); ++v) {
    const std::string& name = ring.variable_name(v);
    if (name.size() > 2 && name[0] == 'x' && name[2] == '_') w[v] = 4 - static_cast<unsigned>(name[1] - '0');
  }
  return w;
}

namespace {

std::vector<Polynomial> scaled_column(const Matrix3& m, const RingPtr& ring, const std::vector<Polynomial>& x) {
  Polynomial t = Polynomial::variable(ring, uniformizer_index(*ring));
  std::vector<Polynomial> y{x[0], t * x[1], t * t * x[2]};
  std::vector<Polynomial> out;
  for (int r = 0; r < 3; ++r) {
    Polynomial e(ring);
    for (int c = 0; c < 3; ++c) {
      if (!m[r][c].is_zero()) e += m[r][c] * y[c];
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<Polynomial> lattice_column(const LatticeConfiguration& cfg, const RingPtr& ring, std::size_t l) {
  if (l < 1 || l > cfg.n_plus_1()) throw InvalidArgumentError("lattice index out of range");
  std::vector<Polynomial> x;
  for (int i = 1; i <= 3; ++i) x.push_back(Polynomial::variable(ring, model_variable(*ring, i, static_cast<int>(l))));
  return scaled_column(cfg.matrices[l - 1], ring, x);
}

std::vector<Polynomial> plane_column(const Matrix3& m, const RingPtr& plane) {
  std::vector<Polynomial> x{Polynomial::variable(plane, "x1"), Polynomial::variable(plane, "x2"),
                            Polynomial::variable(plane, "x3")};
  return scaled_column(m, plane, x);
}

}  // namespace mustafin
