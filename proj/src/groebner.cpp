#include "defspace/groebner.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace defspace {

namespace {

// Monomials are stored as order keys: integer vectors whose plain
// lexicographic comparison is the monomial order. Keys are additive, so
// products and quotients are componentwise. Variable exponents sit at fixed
// positions (negated for the reverse-lexicographic orders); each grading
// block contributes one total-degree slot.
using Key = std::vector<int>;

struct Layout {
  std::size_t n = 0;
  std::size_t len = 0;
  int sign = 1;
  std::vector<std::size_t> pos;
  struct Block {
    std::size_t deg_at;
    std::vector<std::size_t> slots;
  };
  std::vector<Block> blocks;
  std::vector<char> is_exp;

  Layout(std::size_t arity, const MonomialOrder& order) : n(arity), pos(arity) {
    auto add_block = [&](std::size_t lo, std::size_t hi, std::size_t start) {
      Block b{start, {}};
      for (std::size_t i = lo; i < hi; ++i) {
        pos[i] = start + 1 + (hi - 1 - i);
        b.slots.push_back(pos[i]);
      }
      blocks.push_back(std::move(b));
    };
    switch (order.kind) {
      case OrderKind::Lex:
        sign = 1;
        len = n;
        for (std::size_t i = 0; i < n; ++i) pos[i] = i;
        break;
      case OrderKind::GRevLex:
        sign = -1;
        len = n + 1;
        add_block(0, n, 0);
        break;
      case OrderKind::Block:
        sign = -1;
        len = n + 2;
        add_block(0, order.split, 0);
        add_block(order.split, n, order.split + 1);
        break;
    }
    is_exp.assign(len, 1);
    for (const auto& b : blocks) is_exp[b.deg_at] = 0;
  }

  Key encode(const Monomial& m) const {
    Key k(len, 0);
    for (std::size_t i = 0; i < n; ++i) k[pos[i]] = sign * m[i];
    fix_degrees(k);
    return k;
  }

  void fix_degrees(Key& k) const {
    for (const auto& b : blocks) {
      int d = 0;
      for (std::size_t s : b.slots) d += sign * k[s];
      k[b.deg_at] = d;
    }
  }

  Monomial decode(const Key& k) const {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = sign * k[pos[i]];
    return m;
  }

  bool divides(const Key& a, const Key& b) const {
    if (sign > 0) {
      for (std::size_t p = 0; p < len; ++p) {
        if (a[p] > b[p]) return false;
      }
      return true;
    }
    for (std::size_t p = 0; p < len; ++p) {
      if (is_exp[p] ? a[p] < b[p] : a[p] > b[p]) return false;
    }
    return true;
  }

  Key lcm(const Key& a, const Key& b) const {
    Key r(len, 0);
    for (std::size_t p = 0; p < len; ++p) {
      if (is_exp[p]) r[p] = sign > 0 ? std::max(a[p], b[p]) : std::min(a[p], b[p]);
    }
    fix_degrees(r);
    return r;
  }

  bool coprime(const Key& a, const Key& b) const {
    for (std::size_t p = 0; p < len; ++p) {
      if (is_exp[p] && a[p] != 0 && b[p] != 0) return false;
    }
    return true;
  }

  int degree(const Key& k) const {
    if (blocks.empty()) {
      int d = 0;
      for (int e : k) d += e;
      return d;
    }
    int d = 0;
    for (const auto& b : blocks) d += k[b.deg_at];
    return d;
  }

  std::uint64_t mask(const Key& k) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (k[pos[i]] != 0) m |= std::uint64_t{1} << (i % 64);
    }
    return m;
  }

  bool is_one(const Key& k) const {
    return std::all_of(k.begin(), k.end(), [](int e) { return e == 0; });
  }
};

Key key_add(const Key& a, const Key& b) {
  Key r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Key key_sub(const Key& a, const Key& b) {
  Key r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

struct ITerm {
  Key key;
  Rational c;
};

using IPoly = std::vector<ITerm>;  // decreasing keys

struct GPoly {
  IPoly terms;
  int sugar = 0;
  std::uint64_t mask = 0;
  const Key& lead() const { return terms.front().key; }
};

IPoly to_internal(const Layout& L, const Polynomial& f) {
  IPoly out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({L.encode(t.monomial), t.coefficient});
  std::sort(out.begin(), out.end(), [](const ITerm& a, const ITerm& b) { return a.key > b.key; });
  return out;
}

Polynomial to_external(const Layout& L, const RingPtr& ring, const IPoly& p) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p) terms.push_back({L.decode(t.key), t.c});
  return Polynomial(ring, std::move(terms));
}

// a[astart..] + cb * mb * b[bstart..]
IPoly add_multiple(const IPoly& a, std::size_t astart, const Rational& cb, const Key& mb, const IPoly& b,
                   std::size_t bstart) {
  IPoly out;
  out.reserve(a.size() - astart + b.size() - bstart);
  std::size_t i = astart;
  std::size_t j = bstart;
  Key shifted;
  bool have = false;
  while (i < a.size() || j < b.size()) {
    if (j < b.size() && !have) {
      shifted = key_add(b[j].key, mb);
      have = true;
    }
    if (j >= b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    if (i >= a.size() || shifted > a[i].key) {
      out.push_back({std::move(shifted), cb * b[j].c});
      ++j;
      have = false;
      continue;
    }
    if (a[i].key > shifted) {
      out.push_back(a[i++]);
      continue;
    }
    Rational c = a[i].c + cb * b[j].c;
    if (c != 0) out.push_back({a[i].key, std::move(c)});
    ++i;
    ++j;
    have = false;
  }
  return out;
}

void make_monic(IPoly& p) {
  if (p.empty() || p.front().c == 1) return;
  Rational inv = 1 / p.front().c;
  for (auto& t : p) t.c *= inv;
}

class Engine {
 public:
  explicit Engine(const Layout& L, bool by_sugar = false) : L_(L), by_sugar_(by_sugar) {}

  const GPoly* find_reducer(const Key& k, std::uint64_t km, const std::vector<const GPoly*>& G) const {
    const GPoly* best = nullptr;
    for (const GPoly* g : G) {
      if ((g->mask & ~km) != 0) continue;
      if (!L_.divides(g->lead(), k)) continue;
      if (!best || g->terms.size() < best->terms.size()) best = g;
    }
    return best;
  }

  // Full normal form; `sugar` is updated with the usual sugar rule.
  IPoly normal_form(IPoly f, const std::vector<const GPoly*>& G, int* sugar, bool top_only = false) const {
    IPoly done;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const ITerm& lt = f[pos];
      const GPoly* g = G.empty() ? nullptr : find_reducer(lt.key, L_.mask(lt.key), G);
      if (!g) {
        if (top_only) {
          done.insert(done.end(), std::make_move_iterator(f.begin() + pos), std::make_move_iterator(f.end()));
          return done;
        }
        done.push_back(std::move(f[pos]));
        ++pos;
        continue;
      }
      Key m = key_sub(lt.key, g->lead());
      if (sugar) *sugar = std::max(*sugar, g->sugar + L_.degree(m));
      Rational c = -lt.c;
      f = add_multiple(f, pos + 1, c, m, g->terms, 1);
      pos = 0;
    }
    return done;
  }

  std::vector<IPoly> buchberger(std::vector<IPoly> input) {
    std::erase_if(input, [](const IPoly& p) { return p.empty(); });
    for (auto& p : input) make_monic(p);
    std::sort(input.begin(), input.end(), [](const IPoly& a, const IPoly& b) { return a.front().key < b.front().key; });
    for (auto& f : input) {
      int sugar = 0;
      for (const auto& t : f) sugar = std::max(sugar, L_.degree(t.key));
      IPoly h = normal_form(std::move(f), active(), &sugar);
      if (h.empty()) continue;
      make_monic(h);
      if (L_.is_one(h.front().key)) return {h};
      update(std::move(h), sugar);
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < pairs_.size(); ++i) {
        const Pair& a = pairs_[i];
        const Pair& b = pairs_[best];
        if (by_sugar_ ? (a.sugar < b.sugar || (a.sugar == b.sugar && a.lcm < b.lcm)) : a.lcm < b.lcm) best = i;
      }
      Pair p = std::move(pairs_[best]);
      pairs_[best] = std::move(pairs_.back());
      pairs_.pop_back();
      const GPoly& gi = polys_[p.i];
      const GPoly& gj = polys_[p.j];
      Key mi = key_sub(p.lcm, gi.lead());
      Key mj = key_sub(p.lcm, gj.lead());
      IPoly s;
      {
        IPoly left;
        left.reserve(gi.terms.size());
        for (std::size_t k = 1; k < gi.terms.size(); ++k) left.push_back({key_add(gi.terms[k].key, mi), gi.terms[k].c});
        s = add_multiple(left, 0, Rational(-1), mj, gj.terms, 1);
      }
      int sugar = p.sugar;
      IPoly h = normal_form(std::move(s), active(), &sugar);
      if (h.empty()) continue;
      make_monic(h);
      if (L_.is_one(h.front().key)) return {h};
      update(std::move(h), sugar);
    }
    // interreduce the (already minimal) active set
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (alive_[i]) idx.push_back(i);
    }
    std::vector<IPoly> out;
    for (std::size_t i : idx) {
      std::vector<const GPoly*> others;
      for (std::size_t j : idx) {
        if (j != i) others.push_back(&polys_[j]);
      }
      IPoly tail(polys_[i].terms.begin() + 1, polys_[i].terms.end());
      IPoly red = normal_form(std::move(tail), others, nullptr);
      IPoly g;
      g.reserve(red.size() + 1);
      g.push_back(polys_[i].terms.front());
      for (auto& t : red) g.push_back(std::move(t));
      out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), [](const IPoly& a, const IPoly& b) { return a.front().key < b.front().key; });
    return out;
  }

 private:
  struct Pair {
    std::size_t i;
    std::size_t j;
    Key lcm;
    int sugar;
  };

  std::vector<const GPoly*> active() const {
    std::vector<const GPoly*> out;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (alive_[i]) out.push_back(&polys_[i]);
    }
    return out;
  }

  int pair_sugar(std::size_t i, std::size_t j, const Key& lcm) const {
    int d = L_.degree(lcm);
    const GPoly& a = polys_[i];
    const GPoly& b = polys_[j];
    return std::max(a.sugar + d - L_.degree(a.lead()), b.sugar + d - L_.degree(b.lead()));
  }

  // Gebauer-Moeller installation of a new basis element.
  void update(IPoly h, int sugar) {
    GPoly g;
    g.mask = L_.mask(h.front().key);
    g.terms = std::move(h);
    g.sugar = sugar;
    polys_.push_back(std::move(g));
    alive_.push_back(1);
    const std::size_t hn = polys_.size() - 1;
    const Key& hl = polys_[hn].lead();

    struct Cand {
      std::size_t j;
      Key lcm;
      bool coprime;
    };
    std::vector<Cand> C;
    for (std::size_t j = 0; j < hn; ++j) {
      if (!alive_[j]) continue;
      C.push_back({j, L_.lcm(hl, polys_[j].lead()), L_.coprime(hl, polys_[j].lead())});
    }
    std::vector<Cand> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      bool keep = C[a].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b) {
          if (L_.divides(C[b].lcm, C[a].lcm)) keep = false;
        }
        for (const auto& d : D) {
          if (!keep) break;
          if (L_.divides(d.lcm, C[a].lcm)) keep = false;
        }
      }
      if (keep) D.push_back(C[a]);
    }
    std::vector<Pair> kept;
    kept.reserve(pairs_.size() + D.size());
    for (auto& p : pairs_) {
      if (L_.divides(hl, p.lcm)) {
        Key li = L_.lcm(polys_[p.i].lead(), hl);
        Key lj = L_.lcm(polys_[p.j].lead(), hl);
        if (li != p.lcm && lj != p.lcm) continue;
      }
      kept.push_back(std::move(p));
    }
    for (auto& d : D) {
      if (d.coprime) continue;
      int s = pair_sugar(d.j, hn, d.lcm);
      kept.push_back({d.j, hn, std::move(d.lcm), s});
    }
    pairs_ = std::move(kept);
    for (std::size_t j = 0; j < hn; ++j) {
      if (alive_[j] && L_.divides(hl, polys_[j].lead())) alive_[j] = 0;
    }
  }

  const Layout& L_;
  bool by_sugar_;
  std::vector<GPoly> polys_;
  std::vector<char> alive_;
  std::vector<Pair> pairs_;
};

void check_ring(const RingPtr& expected, const Polynomial& f, const char* op) {
  if (f.is_zero() && !f.ring()) return;
  if (!same_variables(expected, f.ring())) throw RingMismatch(std::string(op) + ": ring mismatch");
}

}  // namespace

std::vector<Polynomial> groebner_basis(std::span<const Polynomial> gens, const MonomialOrder& order) {
  RingPtr ring;
  for (const auto& g : gens) {
    if (g.ring()) {
      ring = g.ring();
      break;
    }
  }
  if (!ring) return {};
  Layout L(ring->size(), order);
  std::vector<IPoly> input;
  for (const auto& g : gens) {
    check_ring(ring, g, "groebner_basis");
    if (!g.is_zero()) input.push_back(to_internal(L, g));
  }
  Engine engine(L);
  std::vector<Polynomial> out;
  for (const auto& p : engine.buchberger(std::move(input))) out.push_back(to_external(L, ring, p));
  return out;
}

struct Reducer::Impl {
  Impl(const MonomialOrder& o, RingPtr r) : order(o), ring(std::move(r)), layout(ring->size(), o) {}
  MonomialOrder order;
  RingPtr ring;
  Layout layout;
  std::vector<GPoly> basis;
  std::vector<const GPoly*> view;
};

Reducer::Reducer(std::span<const Polynomial> basis, const MonomialOrder& order, RingPtr ring)
    : impl_(std::make_unique<Impl>(order, std::move(ring))) {
  for (const auto& b : basis) {
    check_ring(impl_->ring, b, "Reducer");
    if (b.is_zero()) continue;
    GPoly g;
    g.terms = to_internal(impl_->layout, b);
    make_monic(g.terms);
    g.mask = impl_->layout.mask(g.lead());
    impl_->basis.push_back(std::move(g));
  }
  for (const auto& g : impl_->basis) impl_->view.push_back(&g);
}

Reducer::~Reducer() = default;

const MonomialOrder& Reducer::order() const { return impl_->order; }

Polynomial Reducer::reduce(const Polynomial& f) const {
  check_ring(impl_->ring, f, "normal_form");
  if (f.is_zero()) return Polynomial(impl_->ring);
  Engine engine(impl_->layout);
  IPoly r = engine.normal_form(to_internal(impl_->layout, f), impl_->view, nullptr);
  return to_external(impl_->layout, impl_->ring, r);
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& order) {
  return Reducer(basis, order, f.ring()).reduce(f);
}

// ---------------------------------------------------------------- Ideal

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("Ideal: null ring");
  for (auto& g : generators) {
    check_ring(ring_, g, "Ideal");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(RingPtr ring) {
  Polynomial one(ring, Rational(1));
  return Ideal(std::move(ring), {one});
}

const Ideal::CacheEntry& Ideal::entry(const MonomialOrder& order) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  for (const auto& e : cache_->entries) {
    if (e.order == order) return e;
  }
  CacheEntry e;
  e.order = order;
  e.basis = groebner_basis(generators_, order);
  e.reducer = std::make_unique<Reducer>(e.basis, order, ring_);
  cache_->entries.push_back(std::move(e));
  return cache_->entries.back();
}

const std::vector<Polynomial>& Ideal::basis(const MonomialOrder& order) const { return entry(order).basis; }

const Reducer& Ideal::reducer(const MonomialOrder& order) const { return *entry(order).reducer; }

bool Ideal::contains(const Polynomial& f) const {
  check_ring(ring_, f, "ideal_member");
  if (f.is_zero()) return true;
  if (generators_.empty()) return false;
  return normal_form(f).is_zero();
}

bool Ideal::contains(const Ideal& other) const {
  for (const auto& g : other.generators()) {
    if (!contains(g)) return false;
  }
  return true;
}

bool Ideal::is_zero() const { return generators_.empty(); }

bool Ideal::is_unit() const {
  if (generators_.empty()) return false;
  for (const auto& g : generators_) {
    if (g.is_constant()) return true;
  }
  const auto& b = basis();
  return b.size() == 1 && b[0].is_constant();
}

bool Ideal::equals(const Ideal& other) const {
  if (!same_variables(ring_, other.ring_)) return false;
  return contains(other) && other.contains(*this);
}

std::string Ideal::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out << ", ";
    out << generators_[i].to_string();
  }
  out << ")";
  return out.str();
}

QuotientRing::QuotientRing(RingPtr r, Ideal m) : ring(std::move(r)), modulus(std::move(m)) {
  if (!same_variables(ring, modulus.ring())) throw RingMismatch("QuotientRing: modulus ring mismatch");
}

// ---------------------------------------------------------------- operations

std::string fresh_name(const RingContext& ring, const std::string& stem) {
  if (!ring.index_of(stem)) return stem;
  for (int k = 1;; ++k) {
    std::string cand = stem + "_" + std::to_string(k);
    if (!ring.index_of(cand)) return cand;
  }
}

bool ideal_member(const Polynomial& f, const Ideal& I) { return I.contains(f); }

Ideal ideal_add(const Ideal& I, std::span<const Polynomial> extra) {
  std::vector<Polynomial> gens = I.generators();
  for (const auto& e : extra) {
    check_ring(I.ring(), e, "ideal_add");
    gens.push_back(e);
  }
  return Ideal(I.ring(), std::move(gens));
}

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  if (!same_variables(I.ring(), J.ring())) throw RingMismatch("ideal_sum: ring mismatch");
  return ideal_add(I, J.generators());
}

Ideal ideal_product(const Ideal& I, const Ideal& J) {
  if (!same_variables(I.ring(), J.ring())) throw RingMismatch("ideal_product: ring mismatch");
  std::vector<Polynomial> gens;
  for (const auto& a : I.generators()) {
    for (const auto& b : J.generators()) gens.push_back(a * b);
  }
  return Ideal(I.ring(), std::move(gens));
}

Ideal ideal_power(const Ideal& I, unsigned exponent) {
  Ideal result = Ideal::unit(I.ring());
  for (unsigned k = 0; k < exponent; ++k) result = ideal_product(result, I);
  return result;
}

namespace {

// Ring with `front` prepended to the variables of `ring`, blocked so that the
// new variables dominate.
RingPtr prepend_ring(const RingPtr& ring, const std::vector<std::string>& front) {
  std::vector<std::string> names = front;
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  if (ring->size() == 0) return RingContext::make(names, MonomialOrder::grevlex());
  return RingContext::make(names, MonomialOrder::block(front.size()));
}

std::vector<std::size_t> shift_map(std::size_t n, std::size_t by) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i + by;
  return m;
}

// Elements of `basis` free of the first `k` variables, mapped back to `target`.
std::vector<Polynomial> drop_front(const std::vector<Polynomial>& basis, std::size_t k, const RingPtr& big,
                                   const RingPtr& target) {
  std::vector<std::size_t> back(big->size(), target->size());
  for (std::size_t i = k; i < big->size(); ++i) back[i] = i - k;
  std::vector<Polynomial> out;
  for (const auto& g : basis) {
    bool ok = true;
    for (const auto& t : g.terms()) {
      for (std::size_t i = 0; i < k && ok; ++i) {
        if (t.monomial[i] > 0) ok = false;
      }
      if (!ok) break;
    }
    if (ok) out.push_back(g.remap(target, back));
  }
  return out;
}

}  // namespace

Ideal ideal_intersect(const Ideal& I, const Ideal& J) {
  if (!same_variables(I.ring(), J.ring())) throw RingMismatch("ideal_intersect: ring mismatch");
  if (I.is_zero() || J.is_zero()) return Ideal::zero(I.ring());
  if (I.is_unit()) return J;
  if (J.is_unit()) return I;
  const RingPtr& R = I.ring();
  RingPtr big = prepend_ring(R, {fresh_name(*R, "t")});
  auto map = shift_map(R->size(), 1);
  Polynomial t = Polynomial::variable(big, 0);
  Polynomial one_minus_t = Polynomial(big, Rational(1)) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(t * g.remap(big, map));
  for (const auto& g : J.generators()) gens.push_back(one_minus_t * g.remap(big, map));
  auto basis = groebner_basis(gens, big->order());
  return Ideal(R, drop_front(basis, 1, big, R));
}

Ideal ideal_quotient(const Ideal& I, const Polynomial& f) {
  check_ring(I.ring(), f, "ideal_quotient");
  if (f.is_zero()) throw std::invalid_argument("ideal_quotient: quotient by zero");
  if (I.is_zero()) return I;
  if (f.is_constant()) return I;
  if (I.is_unit()) return I;
  Ideal K = ideal_intersect(I, Ideal(I.ring(), {f}));
  std::vector<Polynomial> gens;
  for (const auto& h : K.generators()) {
    auto q = divide_exact(h, f);
    if (!q) throw std::logic_error("ideal_quotient: intersection generator not divisible");
    gens.push_back(std::move(*q));
  }
  return Ideal(I.ring(), std::move(gens));
}

Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
  if (!same_variables(I.ring(), J.ring())) throw RingMismatch("ideal_quotient: ring mismatch");
  if (J.is_zero()) return Ideal::unit(I.ring());
  std::optional<Ideal> acc;
  for (const auto& g : J.generators()) {
    Ideal q = ideal_quotient(I, g);
    acc = acc ? ideal_intersect(*acc, q) : q;
  }
  return *acc;
}

Ideal saturate(const Ideal& I, const Polynomial& f) {
  check_ring(I.ring(), f, "saturate");
  if (f.is_zero()) throw std::invalid_argument("saturate: saturation by zero");
  if (I.is_zero() || f.is_constant()) return I;
  // I + (1 - s*f), then drop s
  const RingPtr& R = I.ring();
  RingPtr big = prepend_ring(R, {fresh_name(*R, "s")});
  auto map = shift_map(R->size(), 1);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.remap(big, map));
  gens.push_back(Polynomial(big, Rational(1)) - Polynomial::variable(big, 0) * f.remap(big, map));
  auto basis = groebner_basis(gens, big->order());
  return Ideal(R, drop_front(basis, 1, big, R));
}

bool is_nonzerodivisor(const Polynomial& f, const Ideal& I) {
  if (f.is_zero()) return false;
  if (I.is_unit()) return true;
  return I.contains(ideal_quotient(I, f));
}

Ideal eliminate(const Ideal& I, std::span<const std::string> drop) {
  const RingPtr& R = I.ring();
  std::vector<bool> dropped(R->size(), false);
  for (const auto& name : drop) {
    auto idx = R->index_of(name);
    if (!idx) throw std::invalid_argument("eliminate: unknown variable " + name);
    dropped[*idx] = true;
  }
  std::vector<std::string> front;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < R->size(); ++i) (dropped[i] ? front : rest).push_back(R->name(i));
  if (front.empty()) return I;
  if (rest.empty()) return I.is_unit() ? Ideal::unit(R) : Ideal::zero(R);
  std::vector<std::string> names = front;
  names.insert(names.end(), rest.begin(), rest.end());
  RingPtr big = RingContext::make(names, MonomialOrder::block(front.size()));
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.rename_into(big));
  auto basis = groebner_basis(gens, big->order());
  RingPtr sub = RingContext::make(rest);
  std::vector<Polynomial> out;
  for (const auto& g : drop_front(basis, front.size(), big, sub)) out.push_back(g.rename_into(R));
  return Ideal(R, std::move(out));
}

Ideal ring_map_kernel(const QuotientRing& source, const QuotientRing& target, std::span<const Polynomial> images) {
  const RingPtr& S = source.ring;
  const RingPtr& T = target.ring;
  if (images.size() != S->size()) throw RingMismatch("ring_map_kernel: one image per source variable required");
  for (const auto& img : images) check_ring(T, img, "ring_map_kernel");
  if (S->size() == 0) return Ideal::zero(S);
  std::vector<std::string> names = T->names();
  std::vector<std::string> src_names;
  for (const auto& n : S->names()) {
    RingContext probe(names, MonomialOrder::grevlex());
    std::string fresh = fresh_name(probe, n);
    names.push_back(fresh);
    src_names.push_back(fresh);
  }
  const std::size_t nt = T->size();
  RingPtr big = RingContext::make(names, nt == 0 ? MonomialOrder::grevlex() : MonomialOrder::block(nt));
  std::vector<std::size_t> tmap(nt);
  for (std::size_t i = 0; i < nt; ++i) tmap[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& g : target.modulus.generators()) gens.push_back(g.remap(big, tmap));
  for (std::size_t i = 0; i < images.size(); ++i) {
    Polynomial img = images[i].ring() ? images[i].remap(big, tmap) : Polynomial(big);
    gens.push_back(Polynomial::variable(big, nt + i) - img);
  }
  auto basis = groebner_basis(gens, big->order());
  std::vector<Polynomial> out;
  for (const auto& g : drop_front(basis, nt, big, S)) {
    Polynomial r = source.reduce(g);
    if (!r.is_zero() && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
  }
  return Ideal(S, std::move(out));
}

SubalgebraMembership subalgebra_member(const Polynomial& f, std::span<const Polynomial> gens,
                                       const QuotientRing& ambient) {
  const RingPtr& A = ambient.ring;
  check_ring(A, f, "subalgebra_member");
  SubalgebraMembership result;
  std::vector<std::string> tag_names;
  std::vector<std::string> names = A->names();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    RingContext probe(names, MonomialOrder::grevlex());
    std::string w = fresh_name(probe, "w" + std::to_string(i + 1));
    names.push_back(w);
    tag_names.push_back(w);
  }
  result.tag_ring = RingContext::make(tag_names);
  if (gens.empty()) {
    Polynomial r = ambient.reduce(f);
    result.member = r.is_constant();
    result.expression = r.is_zero() ? Polynomial(result.tag_ring) : Polynomial(result.tag_ring, r.terms()[0].coefficient);
    return result;
  }
  const std::size_t n = A->size();
  RingPtr big = RingContext::make(names, n == 0 ? MonomialOrder::grevlex() : MonomialOrder::block(n));
  std::vector<std::size_t> amap(n);
  for (std::size_t i = 0; i < n; ++i) amap[i] = i;
  std::vector<Polynomial> ideal;
  for (const auto& g : ambient.modulus.generators()) ideal.push_back(g.remap(big, amap));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    check_ring(A, gens[i], "subalgebra_member");
    ideal.push_back(Polynomial::variable(big, n + i) - gens[i].remap(big, amap));
  }
  auto basis = groebner_basis(ideal, big->order());
  Polynomial nf = normal_form(f.remap(big, amap), basis, big->order());
  std::vector<bool> tags_only(big->size(), false);
  for (std::size_t i = n; i < big->size(); ++i) tags_only[i] = true;
  result.member = nf.uses_only(tags_only);
  if (result.member) {
    std::vector<std::size_t> back(big->size(), gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) back[n + i] = i;
    result.expression = nf.remap(result.tag_ring, back);
  } else {
    result.expression = Polynomial(result.tag_ring);
  }
  return result;
}

bool check_regular_sequence(std::span<const Polynomial> seq, const Ideal& modulo) {
  Ideal cur = modulo;
  for (const auto& s : seq) {
    if (!is_nonzerodivisor(s, cur)) return false;
    cur = ideal_add(cur, std::span<const Polynomial>(&s, 1));
  }
  return !cur.is_unit();
}

std::vector<long long> hilbert_function(const Ideal& I, int up_to) {
  const std::size_t n = I.ring()->size();
  std::vector<Monomial> leads;
  for (const auto& g : I.basis(MonomialOrder::grevlex())) leads.push_back(g.leading_term(MonomialOrder::grevlex()).monomial);
  std::vector<long long> counts(static_cast<std::size_t>(std::max(up_to, -1) + 1), 0);
  if (n == 0) {
    if (up_to >= 0 && !I.is_unit()) counts[0] = 1;
    return counts;
  }
  Monomial cur(n);
  std::function<void(std::size_t, int, int)> walk = [&](std::size_t var, int remaining, int total) {
    if (var + 1 == n) {
      cur[var] = remaining;
      bool standard = true;
      for (const auto& l : leads) {
        if (l.divides(cur)) {
          standard = false;
          break;
        }
      }
      if (standard) ++counts[static_cast<std::size_t>(total)];
      cur[var] = 0;
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[var] = e;
      // prune: if cur already divisible by a lead, all completions are too
      bool dead = false;
      for (const auto& l : leads) {
        if (l.divides(cur)) {
          dead = true;
          break;
        }
      }
      if (!dead) walk(var + 1, remaining - e, total);
    }
    cur[var] = 0;
  };
  for (int d = 0; d <= up_to; ++d) walk(0, d, d);
  return counts;
}

}  // namespace defspace
