#include "mustafin/detail/gb_engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "mustafin/errors.hpp"

namespace mustafin::detail {

namespace {

struct FpOps {
  using C = std::uint32_t;
  std::uint32_t p;

  C from(const Scalar& s) const { return s.residue(); }
  Scalar to(C c) const { return Scalar::modular(c, p); }
  C one() const { return 1 % p; }
  bool is_zero(C c) const { return c == 0; }
  C add(C a, C b) const {
    C s = a + b;
    return s >= p ? s - p : s;
  }
  C neg(C a) const { return a == 0 ? 0 : p - a; }
  C mul(C a, C b) const { return static_cast<C>(static_cast<std::uint64_t>(a) * b % p); }
  C inv(C a) const {
    std::uint64_t r = 1;
    std::uint64_t base = a;
    std::uint32_t e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<C>(r);
  }
};

struct QOps {
  using C = mpq_class;

  C from(const Scalar& s) const { return s.rational_value(); }
  Scalar to(const C& c) const { return Scalar::rational(c); }
  C one() const { return C(1); }
  bool is_zero(const C& c) const { return sgn(c) == 0; }
  C add(const C& a, const C& b) const { return a + b; }
  C neg(const C& a) const { return -a; }
  C mul(const C& a, const C& b) const { return a * b; }
  C inv(const C& a) const { return 1 / a; }
};

std::uint32_t support_mask(const Monomial& m) {
  std::uint32_t mask = 0;
  for (std::size_t v = 0; v < kMaxVariables; ++v) {
    if (m[v]) mask |= 1u << v;
  }
  return mask;
}

template <class Ops>
class Engine {
 public:
  using C = typename Ops::C;
  struct T {
    Monomial m;
    C c;
  };
  // Terms in decreasing order.
  using Poly = std::vector<T>;

  Engine(const MonomialOrder& order, Ops ops, RingPtr ring)
      : order_(order), ops_(std::move(ops)), ring_(std::move(ring)) {}

  Poly import(const Polynomial& p) const {
    Poly out;
    out.reserve(p.num_terms());
    for (const auto& t : p.terms()) out.push_back({t.monomial, ops_.from(t.coefficient)});
    std::sort(out.begin(), out.end(), [this](const T& a, const T& b) { return order_.compare(a.m, b.m) > 0; });
    return out;
  }

  Polynomial export_poly(const Poly& p) const {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p) terms.push_back({t.m, ops_.to(t.c)});
    return Polynomial::from_terms(ring_, std::move(terms));
  }

  // Geometric bucket of polynomials stored in increasing order, so that the
  // leading term of each sits at the back.
  class Bucket {
   public:
    explicit Bucket(const Engine& e) : e_(e) {}

    void add(std::vector<T>&& asc) {
      if (asc.empty()) return;
      std::size_t k = level(asc.size());
      for (;;) {
        if (k >= slots_.size()) slots_.resize(k + 1);
        if (slots_[k].empty()) {
          slots_[k] = std::move(asc);
          return;
        }
        asc = e_.merge_ascending(slots_[k], asc);
        slots_[k].clear();
        std::size_t nk = level(asc.size());
        k = std::max(k + 1, nk);
      }
    }

    bool pop_leading(T& out) {
      for (;;) {
        int best = -1;
        for (std::size_t k = 0; k < slots_.size(); ++k) {
          if (slots_[k].empty()) continue;
          if (best < 0 || e_.order_.compare(slots_[k].back().m, slots_[best].back().m) > 0) {
            best = static_cast<int>(k);
          }
        }
        if (best < 0) return false;
        out = std::move(slots_[best].back());
        slots_[best].pop_back();
        for (std::size_t k = 0; k < slots_.size(); ++k) {
          if (static_cast<int>(k) != best && !slots_[k].empty() && slots_[k].back().m == out.m) {
            out.c = e_.ops_.add(out.c, slots_[k].back().c);
            slots_[k].pop_back();
          }
        }
        if (!e_.ops_.is_zero(out.c)) return true;
      }
    }

   private:
    static std::size_t level(std::size_t n) {
      std::size_t k = 0;
      std::size_t cap = 4;
      while (cap < n) {
        cap *= 4;
        ++k;
      }
      return k;
    }

    const Engine& e_;
    std::vector<std::vector<T>> slots_;
  };

  std::vector<T> merge_ascending(const std::vector<T>& a, const std::vector<T>& b) const {
    std::vector<T> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
      int c = order_.compare(a[i].m, b[j].m);
      if (c < 0) {
        out.push_back(a[i++]);
      } else if (c > 0) {
        out.push_back(b[j++]);
      } else {
        C s = ops_.add(a[i].c, b[j].c);
        if (!ops_.is_zero(s)) out.push_back({a[i].m, std::move(s)});
        ++i;
        ++j;
      }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
  }

  // coeff * mono * p without its first `skip` terms, in increasing order.
  std::vector<T> scaled_ascending(const Poly& p, const Monomial& mono, const C& coeff, std::size_t skip) const {
    std::vector<T> out;
    if (p.size() <= skip) return out;
    out.reserve(p.size() - skip);
    for (std::size_t k = p.size(); k-- > skip;) out.push_back({p[k].m * mono, ops_.mul(p[k].c, coeff)});
    return out;
  }

  struct Elem {
    Poly p;
    std::uint32_t mask = 0;
    unsigned sugar = 0;
    bool active = false;
  };

  // Index of an active basis element whose leading monomial divides m.
  int find_divisor(const Monomial& m, const std::vector<Elem>& elems, const std::vector<std::size_t>& candidates) const {
    std::uint32_t mask = support_mask(m);
    for (auto i : candidates) {
      const Elem& e = elems[i];
      if ((e.mask & ~mask) == 0 && e.p.front().m.divides(m)) return static_cast<int>(i);
    }
    return -1;
  }

  // Full reduction of the bucket content; returns the remainder in
  // decreasing order and raises *sugar to cover the reducers used.
  Poly reduce_bucket(Bucket& bucket, const std::vector<Elem>& elems, const std::vector<std::size_t>& candidates,
                     unsigned* sugar) const {
    Poly rem;
    T lt;
    while (bucket.pop_leading(lt)) {
      int d = find_divisor(lt.m, elems, candidates);
      if (d < 0) {
        rem.push_back(std::move(lt));
        continue;
      }
      const Elem& g = elems[static_cast<std::size_t>(d)];
      Monomial q = g.p.front().m.quotient_of(lt.m);
      if (sugar) *sugar = std::max(*sugar, g.sugar + order_.sugar_degree(q));
      // g is monic
      bucket.add(scaled_ascending(g.p, q, ops_.neg(lt.c), 1));
    }
    return rem;
  }

  void make_monic(Poly& p) const {
    if (p.empty()) return;
    C inv = ops_.inv(p.front().c);
    for (auto& t : p) t.c = ops_.mul(t.c, inv);
  }

  struct Pair {
    std::size_t i;
    std::size_t j;  // kNone for an input generator
    Monomial lcm;
    unsigned sugar;
  };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<Polynomial> run(const std::vector<Polynomial>& generators, EngineStats* stats) {
    std::size_t limit = step_limit_from_environment();
    std::vector<Poly> inputs;
    std::vector<Pair> pairs;
    for (const auto& g : generators) {
      Poly p = import(g);
      if (p.empty()) continue;
      unsigned s = 0;
      for (const auto& t : p) s = std::max(s, order_.sugar_degree(t.m));
      pairs.push_back({inputs.size(), kNone, p.front().m, s});
      inputs.push_back(std::move(p));
    }
    std::vector<Elem> elems;
    std::vector<std::size_t> active;
    std::size_t steps = 0;
    while (!pairs.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs.size(); ++k) {
        if (pairs[k].sugar < pairs[best].sugar ||
            (pairs[k].sugar == pairs[best].sugar && order_.compare(pairs[k].lcm, pairs[best].lcm) < 0)) {
          best = k;
        }
      }
      Pair pr = pairs[best];
      pairs[best] = pairs.back();
      pairs.pop_back();
      if (limit && ++steps > limit) {
        throw StepLimitError("Groebner basis step limit of " + std::to_string(limit) + " reached");
      }
      if (stats) ++stats->pairs_processed;
      Bucket bucket(*this);
      unsigned sugar = pr.sugar;
      if (pr.j == kNone) {
        const Poly& in = inputs[pr.i];
        bucket.add(scaled_ascending(in, Monomial(), ops_.one(), 0));
      } else {
        const Poly& a = elems[pr.i].p;
        const Poly& b = elems[pr.j].p;
        bucket.add(scaled_ascending(a, a.front().m.quotient_of(pr.lcm), ops_.inv(a.front().c), 1));
        bucket.add(scaled_ascending(b, b.front().m.quotient_of(pr.lcm), ops_.neg(ops_.inv(b.front().c)), 1));
      }
      Poly h = reduce_bucket(bucket, elems, active, &sugar);
      if (h.empty()) {
        if (stats) ++stats->zero_reductions;
        continue;
      }
      make_monic(h);
      Elem e;
      e.mask = support_mask(h.front().m);
      e.sugar = sugar;
      e.p = std::move(h);
      e.active = true;
      elems.push_back(std::move(e));
      update(elems.size() - 1, elems, active, pairs);
      if (elems.back().p.front().m.is_one()) break;
    }
    auto basis = interreduce(elems, active);
    if (stats) stats->basis_size = basis.size();
    std::vector<Polynomial> out;
    out.reserve(basis.size());
    for (auto& p : basis) out.push_back(export_poly(p));
    return out;
  }

  void update(std::size_t h, std::vector<Elem>& elems, std::vector<std::size_t>& active, std::vector<Pair>& pairs) const {
    const Monomial lh = elems[h].p.front().m;
    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
      bool keep;
    };
    std::vector<Cand> cands;
    cands.reserve(active.size());
    for (auto g : active) {
      const Monomial& lg = elems[g].p.front().m;
      cands.push_back({g, lh.lcm(lg), lh.coprime(lg), true});
    }
    // (h,g1) is dropped when another (h,g2) has an lcm dividing lcm(h,g1);
    // among equal lcms the first survivor is kept, preferring coprime ones.
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (cands[a].coprime) continue;
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !cands[b].keep) continue;
        if (!cands[b].lcm.divides(cands[a].lcm)) continue;
        if (cands[b].lcm == cands[a].lcm && !cands[b].coprime && b > a) continue;
        cands[a].keep = false;
        break;
      }
    }
    // chain criterion on the old pairs
    std::vector<Pair> kept;
    kept.reserve(pairs.size() + cands.size());
    for (auto& pr : pairs) {
      if (pr.j != kNone && lh.divides(pr.lcm)) {
        Monomial l1 = elems[pr.i].p.front().m.lcm(lh);
        Monomial l2 = elems[pr.j].p.front().m.lcm(lh);
        if (l1 != pr.lcm && l2 != pr.lcm) continue;
      }
      kept.push_back(std::move(pr));
    }
    for (const auto& c : cands) {
      if (!c.keep || c.coprime) continue;
      const Elem& g = elems[c.g];
      unsigned s = std::max(elems[h].sugar + order_.sugar_degree(lh.quotient_of(c.lcm)),
                            g.sugar + order_.sugar_degree(g.p.front().m.quotient_of(c.lcm)));
      kept.push_back({c.g, h, c.lcm, s});
    }
    pairs = std::move(kept);
    std::vector<std::size_t> next;
    next.reserve(active.size() + 1);
    for (auto g : active) {
      if (lh.divides(elems[g].p.front().m)) {
        elems[g].active = false;
      } else {
        next.push_back(g);
      }
    }
    next.push_back(h);
    active = std::move(next);
  }

  std::vector<Poly> interreduce(std::vector<Elem>& elems, const std::vector<std::size_t>& active) const {
    std::vector<std::size_t> idx = active;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return order_.compare(elems[a].p.front().m, elems[b].p.front().m) < 0;
    });
    std::vector<std::size_t> minimal;
    for (auto i : idx) {
      bool redundant = false;
      for (auto j : minimal) {
        if (elems[j].p.front().m.divides(elems[i].p.front().m)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) minimal.push_back(i);
    }
    std::vector<Poly> out;
    for (auto i : minimal) {
      std::vector<std::size_t> others;
      for (auto j : minimal) {
        if (j != i) others.push_back(j);
      }
      Bucket bucket(*this);
      bucket.add(scaled_ascending(elems[i].p, Monomial(), ops_.one(), 1));
      Poly tail = reduce_bucket(bucket, elems, others, nullptr);
      Poly full;
      full.reserve(tail.size() + 1);
      full.push_back(elems[i].p.front());
      for (auto& t : tail) full.push_back(std::move(t));
      make_monic(full);
      out.push_back(std::move(full));
    }
    return out;
  }

  Division divide(const Polynomial& p, const std::vector<Polynomial>& basis) const {
    std::vector<Poly> gs;
    for (const auto& g : basis) gs.push_back(import(g));
    std::vector<std::vector<T>> quot(gs.size());
    Poly rem;
    Bucket bucket(*this);
    Poly pi = import(p);
    bucket.add(scaled_ascending(pi, Monomial(), ops_.one(), 0));
    T lt;
    while (bucket.pop_leading(lt)) {
      std::size_t found = gs.size();
      for (std::size_t i = 0; i < gs.size(); ++i) {
        if (!gs[i].empty() && gs[i].front().m.divides(lt.m)) {
          found = i;
          break;
        }
      }
      if (found == gs.size()) {
        rem.push_back(std::move(lt));
        continue;
      }
      const Poly& g = gs[found];
      Monomial q = g.front().m.quotient_of(lt.m);
      C c = ops_.mul(lt.c, ops_.inv(g.front().c));
      quot[found].push_back({q, c});
      bucket.add(scaled_ascending(g, q, ops_.neg(c), 1));
    }
    Division d{{}, export_poly(rem)};
    for (auto& q : quot) d.quotients.push_back(export_poly(q));
    return d;
  }

  Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& basis) const {
    std::vector<Elem> elems;
    std::vector<std::size_t> cand;
    for (const auto& g : basis) {
      Poly gp = import(g);
      if (gp.empty()) continue;
      make_monic(gp);
      Elem e;
      e.mask = support_mask(gp.front().m);
      e.p = std::move(gp);
      cand.push_back(elems.size());
      elems.push_back(std::move(e));
    }
    Bucket bucket(*this);
    Poly pi = import(p);
    bucket.add(scaled_ascending(pi, Monomial(), ops_.one(), 0));
    return export_poly(reduce_bucket(bucket, elems, cand, nullptr));
  }

 private:
  const MonomialOrder& order_;
  Ops ops_;
  RingPtr ring_;
};

void check_inputs(const std::vector<Polynomial>& ps, const RingPtr& ring, const MonomialOrder& order) {
  if (order.num_variables() != ring->num_variables()) {
    throw InvalidArgumentError("monomial order does not match ring " + ring->describe());
  }
  for (const auto& p : ps) {
    if (!p.ring()->same_as(*ring)) throw RingMismatchError("generators live in different rings");
  }
}

template <class F>
auto with_engine(const RingPtr& ring, const MonomialOrder& order, F&& f) {
  if (ring->field().is_rational()) {
    Engine<QOps> e(order, QOps{}, ring);
    return f(e);
  }
  Engine<FpOps> e(order, FpOps{ring->field().characteristic()}, ring);
  return f(e);
}

}  // namespace

std::size_t step_limit_from_environment() {
  const char* env = std::getenv("MUSTAFIN_GB_STEP_LIMIT");
  if (!env || !*env) return 0;
  try {
    return static_cast<std::size_t>(std::stoull(env));
  } catch (const std::exception&) {
    throw InvalidArgumentError(std::string("MUSTAFIN_GB_STEP_LIMIT is not a number: ") + env);
  }
}

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& generators, const MonomialOrder& order,
                                   EngineStats* stats) {
  if (generators.empty()) return {};
  const RingPtr& ring = generators.front().ring();
  check_inputs(generators, ring, order);
  return with_engine(ring, order, [&](auto& e) { return e.run(generators, stats); });
}

Division divide(const Polynomial& p, const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  check_inputs(basis, p.ring(), order);
  return with_engine(p.ring(), order, [&](auto& e) { return e.divide(p, basis); });
}

Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  check_inputs(basis, p.ring(), order);
  return with_engine(p.ring(), order, [&](auto& e) { return e.reduce(p, basis); });
}

Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw InvalidArgumentError("zero polynomial has no leading monomial");
  const auto& terms = p.terms();
  const Monomial* best = &terms.front().monomial;
  for (const auto& t : terms) {
    if (order.compare(t.monomial, *best) > 0) best = &t.monomial;
  }
  return *best;
}

}  // namespace mustafin::detail
