#include <algorithm>
#include <numeric>

#include "harness.hpp"
#include "mustafin/ideal.hpp"
#include "oracles.hpp"

namespace mustafin::testing {

namespace {

Field pick_field(SplitMix64& rng) { return rng.below(2) ? Field::rationals() : Field::prime(32003); }

RingPtr small_ring(const Field& field, std::size_t nvars) {
  static const char* names[] = {"x1", "x2", "x3", "x4", "x5", "x6"};
  std::vector<std::string> vars(names, names + nvars);
  return make_ring(field, {{"x", vars}});
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

MonomialOrder random_order(const Ring& ring, SplitMix64& rng) {
  switch (rng.below(3)) {
    case 0:
      return MonomialOrder::grevlex(ring);
    case 1:
      return MonomialOrder::lex(ring);
    default: {
      std::vector<std::size_t> elim{rng.below(ring.num_variables())};
      return MonomialOrder::elimination(ring, elim);
    }
  }
}

IdealHandle random_ideal(const RingPtr& ring, SplitMix64& rng, unsigned max_degree, std::size_t max_gens) {
  std::vector<Polynomial> gens;
  std::size_t count = 1 + rng.below(max_gens);
  auto vars = iota(ring->num_variables());
  for (std::size_t k = 0; k < count; ++k) gens.push_back(random_polynomial(ring, vars, rng, max_degree, 3, 9));
  return IdealHandle(ring, gens);
}

std::vector<std::string> sorted_strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string joined(const std::vector<std::string>& v) {
  std::string out = "{";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + v[k];
  return out + "}";
}

}  // namespace

std::optional<std::string> check_elimination_against_resultant(const RingPtr& ring, SplitMix64& rng) {
  auto vars = iota(ring->num_variables());
  std::size_t x = 0;
  // f monic in x, so projection of V(f, g) is closed and equals V(Res)
  unsigned a = 1 + static_cast<unsigned>(rng.below(2));
  std::vector<std::size_t> rest(vars.begin() + 1, vars.end());
  Polynomial f = Polynomial::variable(ring, x).pow(a);
  for (unsigned k = 0; k < a; ++k) {
    Polynomial c = random_polynomial(ring, rest, rng, 3 - k, 2, 5);
    f += c * Polynomial::variable(ring, x).pow(k);
  }
  Polynomial g = random_polynomial(ring, vars, rng, 3, 3, 5);
  if (g.degree_in(x) == 0) g += Polynomial::variable(ring, x) * random_nonzero_scalar(ring->field(), rng, 5);
  Polynomial res = sylvester_resultant(f, g, x);
  IdealHandle elim = eliminate(IdealHandle(ring, {f, g}), {x});
  for (const auto& e : elim.generators()) {
    if (e.involves(x)) return "elimination generator " + e.to_string() + " still involves x1";
  }
  if (res.is_zero()) {
    if (!elim.is_zero_ideal()) return "resultant vanishes but the elimination ideal is nonzero";
    return std::nullopt;
  }
  if (!ideal_membership(res, elim)) return "resultant " + res.to_string() + " is not in the elimination ideal";
  IdealHandle res_ideal(ring, {res});
  for (const auto& e : elim.generators()) {
    if (!radical_membership(e, res_ideal)) return e.to_string() + " is not in the radical of the resultant";
  }
  return std::nullopt;
}

std::vector<Law> ideal_engine_laws() {
  std::vector<Law> laws;

  laws.push_back({"ideal-engine", "reduced bases satisfy the Buchberger criterion", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    RingPtr ring = small_ring(pick_field(rng), 2 + rng.below(3));
                    MonomialOrder order = random_order(*ring, rng);
                    IdealHandle I = random_ideal(ring, rng, 3, 3);
                    auto basis = groebner_basis(I, order);
                    if (!satisfies_buchberger_criterion(basis, order)) return "criterion fails under " + order.describe();
                    IdealHandle B(ring, basis);
                    for (const auto& g : I.generators()) {
                      if (!normal_form(g, B, order).remainder.is_zero()) return "generator " + g.to_string() + " not reduced to 0";
                    }
                    return std::nullopt;
                  }});

  laws.push_back({"ideal-engine", "normal form cofactors reconstruct the input", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    RingPtr ring = small_ring(pick_field(rng), 2 + rng.below(2));
                    auto vars = iota(ring->num_variables());
                    MonomialOrder order = random_order(*ring, rng);
                    IdealHandle I = random_ideal(ring, rng, 3, 3);
                    Polynomial p = random_polynomial(ring, vars, rng, 4, 4, 9);
                    bool member = rng.below(2);
                    if (member) {
                      p = Polynomial(ring);
                      for (const auto& g : I.generators()) p += random_polynomial(ring, vars, rng, 2, 2, 9) * g;
                    }
                    NormalForm nf = normal_form(p, I, order);
                    Polynomial rebuilt = nf.remainder;
                    for (std::size_t k = 0; k < nf.basis.size(); ++k) rebuilt += nf.cofactors[k] * nf.basis[k];
                    if (rebuilt != p) return testing::mismatch("sum of cofactors", p.to_string(), rebuilt.to_string());
                    if (member && !nf.remainder.is_zero()) return "combination of generators has remainder " + nf.remainder.to_string();
                    if (nf.remainder.is_zero() != ideal_membership(p, I)) return "remainder and membership disagree";
                    return std::nullopt;
                  }});

  laws.push_back({"ideal-engine", "saturation is idempotent", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    Field field = pick_field(rng);
                    RingPtr ring = make_ring(field, {{"t", {"t"}}, {"x", {"x1", "x2"}}});
                    auto vars = iota(ring->num_variables());
                    std::vector<Polynomial> gens;
                    Polynomial t = Polynomial::variable(ring, "t");
                    std::size_t count = 1 + rng.below(3);
                    for (std::size_t k = 0; k < count; ++k) {
                      gens.push_back(t.pow(static_cast<unsigned>(rng.below(3))) * random_polynomial(ring, vars, rng, 2, 3, 9));
                    }
                    IdealHandle I(ring, gens);
                    Polynomial f = rng.below(2) ? t : random_polynomial(ring, vars, rng, 1, 2, 5);
                    if (f.is_zero()) f = t;
                    IdealHandle once = saturate(I, f);
                    IdealHandle twice = saturate(once, f);
                    if (!ideal_equal(once, twice)) return "I : f^inf changed under a second saturation";
                    if (!ideal_contained(I, once)) return "I is not contained in its saturation";
                    if (f == t) {
                      IdealHandle fast = saturate_variable(I, 0);
                      if (!ideal_equal(fast, once)) return "saturate_variable disagrees with saturate";
                    }
                    return std::nullopt;
                  }});

  laws.push_back({"ideal-engine", "elimination agrees with the resultant oracle", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    return check_elimination_against_resultant(small_ring(pick_field(rng), 2 + rng.below(2)), rng);
                  }});

  laws.push_back({"ideal-engine", "Groebner bases commute with relabeling", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    RingPtr ring = small_ring(pick_field(rng), 2 + rng.below(3));
                    std::size_t n = ring->num_variables();
                    std::vector<std::size_t> perm = iota(n);
                    for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[rng.below(k)]);
                    std::vector<std::optional<Polynomial>> images(n);
                    for (std::size_t v = 0; v < n; ++v) images[v] = Polynomial::variable(ring, perm[v]);
                    auto pi = [&](const Polynomial& p) { return substitute(p, ring, images); };
                    MonomialOrder order = random_order(*ring, rng);
                    IdealHandle I = random_ideal(ring, rng, 3, 3);
                    std::vector<Polynomial> moved_gens;
                    for (const auto& g : I.generators()) moved_gens.push_back(pi(g));
                    auto lhs = groebner_basis(IdealHandle(ring, moved_gens), order.permuted(perm));
                    std::vector<Polynomial> rhs;
                    for (const auto& g : groebner_basis(I, order)) rhs.push_back(pi(g));
                    auto a = sorted_strings(lhs), b = sorted_strings(rhs);
                    if (a != b) return testing::mismatch("relabeled basis", joined(b), joined(a));
                    return std::nullopt;
                  }});

  laws.push_back({"ideal-engine", "syzygies match graded linear algebra", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    Field field = pick_field(rng);
                    RingPtr ring = make_ring(field, {{"x", {"x1", "x2"}}});
                    std::vector<std::size_t> vars{0, 1};
                    std::vector<Polynomial> row;
                    unsigned maxdeg = 0;
                    std::size_t entries = 2 + rng.below(2);
                    for (std::size_t k = 0; k < entries; ++k) {
                      unsigned deg = 1 + static_cast<unsigned>(rng.below(3));
                      maxdeg = std::max(maxdeg, deg);
                      row.push_back(random_homogeneous(ring, vars, deg, rng, 3, 7));
                    }
                    SyzygyBasis syz = syzygies(row);
                    for (const auto& rel : syz.relations) {
                      if (!apply_relation(rel, row).is_zero()) return "relation does not annihilate the row";
                    }
                    for (unsigned D = 0; D <= maxdeg + 4; ++D) {
                      std::size_t expected = graded_syzygy_dimension(row, vars, D);
                      std::size_t got = graded_span_dimension(syz.relations, row, vars, D);
                      if (expected != got) {
                        return testing::mismatch("syzygies in degree " + std::to_string(D), std::to_string(expected),
                                        std::to_string(got));
                      }
                    }
                    return std::nullopt;
                  }});

  return laws;
}

}  // namespace mustafin::testing
