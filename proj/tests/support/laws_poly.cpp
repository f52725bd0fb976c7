#include <map>

#include "harness.hpp"
#include "mustafin/text_format.hpp"
#include "oracles.hpp"

namespace mustafin::testing {

namespace {

Field pick_field(SplitMix64& rng) { return rng.below(2) ? Field::rationals() : Field::prime(32003); }

RingPtr txyz(const Field& field) { return make_ring(field, {{"t", {"t"}}, {"x", {"x1", "x2", "x3"}}}); }

std::vector<std::size_t> all_vars(const Ring& ring) {
  std::vector<std::size_t> v(ring.num_variables());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = k;
  return v;
}

std::optional<std::string> expect_equal(const std::string& what, const Polynomial& a, const Polynomial& b) {
  if (a == b) return std::nullopt;
  return testing::mismatch(what, a.to_string(), b.to_string());
}

/// Multihomogeneous polynomial in the fiber ring with the given block degrees.
Polynomial random_multihomogeneous(const RingPtr& ring, const std::vector<unsigned>& degrees, SplitMix64& rng) {
  std::vector<Term> terms;
  std::size_t count = 1 + rng.below(4);
  for (std::size_t k = 0; k < count; ++k) {
    Monomial m;
    for (std::size_t b = 0; b < ring->num_blocks(); ++b) {
      const auto& vars = ring->block_variables(b);
      auto monos = monomials_of_degree(vars, degrees[b]);
      m *= monos[rng.below(monos.size())];
    }
    terms.push_back({m, random_nonzero_scalar(ring->field(), rng, 9)});
  }
  Polynomial p = Polynomial::from_terms(ring, std::move(terms));
  if (p.is_zero()) return random_multihomogeneous(ring, degrees, rng);
  return p;
}

}  // namespace

std::vector<Law> poly_core_laws() {
  std::vector<Law> laws;

  laws.push_back({"poly-core", "ring axioms", kMinCases, [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    RingPtr ring = txyz(pick_field(rng));
                    auto vars = all_vars(*ring);
                    Polynomial p = random_polynomial(ring, vars, rng, 3, 5, 20);
                    Polynomial q = random_polynomial(ring, vars, rng, 3, 5, 20);
                    Polynomial r = random_polynomial(ring, vars, rng, 3, 5, 20);
                    if (auto e = expect_equal("associativity of *", (p * q) * r, p * (q * r))) return e;
                    if (auto e = expect_equal("associativity of +", (p + q) + r, p + (q + r))) return e;
                    if (auto e = expect_equal("commutativity of *", p * q, q * p)) return e;
                    if (auto e = expect_equal("commutativity of +", p + q, q + p)) return e;
                    if (auto e = expect_equal("distributivity", p * (q + r), p * q + p * r)) return e;
                    if (auto e = expect_equal("additive inverse", p - p, Polynomial(ring))) return e;
                    if (auto e = expect_equal("unit", p * Polynomial::constant(ring, 1), p)) return e;
                    return std::nullopt;
                  }});

  laws.push_back({"poly-core", "substitute is a ring homomorphism", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    Field field = pick_field(rng);
                    RingPtr src = txyz(field);
                    RingPtr dst = make_ring(field, {{"t", {"t"}}, {"u", {"u1", "u2"}}});
                    auto sv = all_vars(*src);
                    auto dv = all_vars(*dst);
                    std::vector<std::optional<Polynomial>> images;
                    for (std::size_t v = 0; v < src->num_variables(); ++v) {
                      images.push_back(random_polynomial(dst, dv, rng, 2, 3, 7));
                    }
                    Polynomial p = random_polynomial(src, sv, rng, 3, 4, 20);
                    Polynomial q = random_polynomial(src, sv, rng, 3, 4, 20);
                    auto s = [&](const Polynomial& f) { return substitute(f, dst, images); };
                    if (auto e = expect_equal("product", s(p * q), s(p) * s(q))) return e;
                    if (auto e = expect_equal("sum", s(p + q), s(p) + s(q))) return e;
                    return expect_equal("unit", s(Polynomial::constant(src, 1)), Polynomial::constant(dst, 1));
                  }});

  laws.push_back({"poly-core", "t_valuation is additive", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    RingPtr ring = txyz(Field::rationals());
                    auto vars = all_vars(*ring);
                    Polynomial p = random_polynomial(ring, vars, rng, 4, 5, 50);
                    Polynomial q = random_polynomial(ring, vars, rng, 4, 5, 50);
                    if (p.is_zero() || q.is_zero()) return std::nullopt;
                    Polynomial t = Polynomial::variable(ring, "t");
                    p *= t.pow(static_cast<unsigned>(rng.below(3)));
                    q *= t.pow(static_cast<unsigned>(rng.below(3)));
                    unsigned vp = *t_valuation(p), vq = *t_valuation(q);
                    unsigned vpq = *t_valuation(p * q);
                    if (vpq != vp + vq) {
                      return testing::mismatch("v(pq)", std::to_string(vp + vq), std::to_string(vpq));
                    }
                    return std::nullopt;
                  }});

  laws.push_back({"poly-core", "saturated polynomials survive reduction mod t", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    RingPtr ring = txyz(pick_field(rng));
                    Polynomial p = random_polynomial(ring, all_vars(*ring), rng, 4, 6, 30);
                    if (p.is_zero()) return std::nullopt;
                    p *= Polynomial::variable(ring, "t").pow(static_cast<unsigned>(rng.below(4)));
                    Polynomial s = t_saturate_poly(p);
                    if (reduce_mod_t(s).is_zero()) return "reduction of " + s.to_string() + " vanished";
                    if (*t_valuation(s) != 0) return "saturation left a factor t";
                    return std::nullopt;
                  }});

  laws.push_back({"poly-core", "multidegree is additive", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    RingPtr ring = fiber_ring(pick_field(rng), 2 + rng.below(2));
                    std::vector<unsigned> a, b;
                    for (std::size_t k = 0; k < ring->num_blocks(); ++k) {
                      a.push_back(static_cast<unsigned>(rng.below(3)));
                      b.push_back(static_cast<unsigned>(rng.below(3)));
                    }
                    Polynomial p = random_multihomogeneous(ring, a, rng);
                    Polynomial q = random_multihomogeneous(ring, b, rng);
                    if (!is_multihomogeneous(p) || !is_multihomogeneous(q)) return "generated input is not multihomogeneous";
                    if (!(multidegree(p * q) == multidegree(p) + multidegree(q))) return "multidegree(pq) differs";
                    return std::nullopt;
                  }});

  laws.push_back({"poly-core", "text format round trip", kMinCases,
                  [](SplitMix64& rng, std::size_t) -> std::optional<std::string> {
                    RingPtr ring = model_ring(pick_field(rng), 2);
                    Polynomial p = random_polynomial(ring, all_vars(*ring), rng, 4, 6, 1000);
                    return expect_equal("parse(format(p))", parse_polynomial(format_polynomial(p), ring), p);
                  }});

  return laws;
}

}  // namespace mustafin::testing
