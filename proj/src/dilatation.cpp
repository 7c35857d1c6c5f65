#include "defspace/dilatation.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace defspace {

namespace {

void require_vars(const RingPtr& expected, const RingPtr& got, const char* op) {
  if (!same_variables(expected, got)) throw RingMismatch(std::string(op) + ": ring mismatch");
}

std::vector<std::size_t> prefix_map(std::size_t n, std::size_t offset) {
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = offset + i;
  return map;
}

bool is_atomic(const Polynomial& p) {
  return p.size() == 1 && p.terms()[0].coefficient == 1 && p.terms()[0].monomial.degree() == 1;
}

std::optional<Polynomial> zero_divisor_witness(const Polynomial& d, const Ideal& modulus) {
  if (modulus.is_zero()) return std::nullopt;
  Ideal q = ideal_quotient(modulus, d);
  for (const auto& g : q.generators()) {
    if (!modulus.contains(g)) return g;
  }
  return std::nullopt;
}

Fraction normalized(Fraction f, const QuotientRing& base, std::span<const Polynomial> divisors) {
  f.numerator = base.reduce(f.numerator);
  if (f.numerator.is_zero()) {
    std::fill(f.denominator.begin(), f.denominator.end(), 0);
    return f;
  }
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    while (f.denominator[i] > 0) {
      auto q = divide_exact(f.numerator, divisors[i]);
      if (!q) break;
      f.numerator = std::move(*q);
      --f.denominator[i];
    }
  }
  return f;
}

/// Ring [u_1..u_m, base vars, adjoined vars] with u first under a block order
/// and the ideal of the localization plus `extra` (base generators).
struct LocalizationIdeal {
  RingPtr big;
  std::vector<Polynomial> gens;
};

LocalizationIdeal localization_ideal(const QuotientRing& base, std::span<const Polynomial> divisors,
                                     std::span<const Fraction> embedding, const RingPtr& ring,
                                     std::span<const Polynomial> extra) {
  const std::size_t m = divisors.size();
  const std::size_t nb = base.ring->size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    RingContext probe(ring->names(), MonomialOrder::grevlex());
    std::string stem = "u" + std::to_string(i + 1);
    // probe also against the names already chosen
    while (probe.index_of(stem) || std::find(names.begin(), names.end(), stem) != names.end()) stem += "_";
    names.push_back(stem);
  }
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  LocalizationIdeal out;
  out.big = RingContext::make(names, m == 0 ? MonomialOrder::grevlex() : MonomialOrder::block(m));
  auto bmap = prefix_map(nb, m);
  for (const auto& g : base.modulus.generators()) out.gens.push_back(g.remap(out.big, bmap));
  for (const auto& g : extra) out.gens.push_back(g.remap(out.big, bmap));
  for (std::size_t i = 0; i < m; ++i) {
    out.gens.push_back(Polynomial(out.big, Rational(1)) -
                       Polynomial::variable(out.big, i) * divisors[i].remap(out.big, bmap));
  }
  for (std::size_t j = 0; j < embedding.size(); ++j) {
    Monomial um(out.big->size());
    for (std::size_t i = 0; i < m; ++i) um[i] = embedding[j].denominator[i];
    out.gens.push_back(Polynomial::variable(out.big, m + nb + j) -
                       embedding[j].numerator.remap(out.big, bmap).multiply_monomial(um, 1));
  }
  return out;
}

/// Basis elements free of the first m variables, moved to `ring`.
std::vector<Polynomial> u_free(std::span<const Polynomial> basis, std::size_t m, const RingPtr& ring) {
  std::vector<bool> allowed;
  std::vector<Polynomial> out;
  if (basis.empty()) return out;
  const RingPtr& big = basis[0].ring();
  allowed.assign(big->size(), true);
  for (std::size_t i = 0; i < m; ++i) allowed[i] = false;
  std::vector<std::size_t> back(big->size(), ring->size());
  for (std::size_t i = m; i < big->size(); ++i) back[i] = i - m;
  for (const auto& g : basis) {
    if (g.uses_only(allowed)) out.push_back(g.remap(ring, back));
  }
  return out;
}

}  // namespace

Polynomial divisor_power(std::span<const Polynomial> divisors, std::span<const int> exponents) {
  if (divisors.size() != exponents.size()) throw RingMismatch("divisor_power: exponent length mismatch");
  if (divisors.empty()) throw std::invalid_argument("divisor_power: empty divisor list");
  Polynomial out(divisors[0].ring(), Rational(1));
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (exponents[i] < 0) throw std::invalid_argument("divisor_power: negative exponent");
    if (exponents[i] > 0) out *= divisors[i].pow(static_cast<unsigned>(exponents[i]));
  }
  return out;
}

std::string to_string(const Fraction& f, std::span<const Polynomial> divisors) {
  std::vector<std::string> factors;
  for (std::size_t i = 0; i < f.denominator.size() && i < divisors.size(); ++i) {
    if (f.denominator[i] == 0) continue;
    std::string d = divisors[i].to_string();
    if (!is_atomic(divisors[i])) d = "(" + d + ")";
    if (f.denominator[i] > 1) {
      d += "^" + std::to_string(f.denominator[i]);
    }
    factors.push_back(d);
  }
  std::string num = f.numerator.to_string();
  if (factors.empty()) return num;
  if (f.numerator.size() > 1) num = "(" + num + ")";
  std::string den;
  for (std::size_t i = 0; i < factors.size(); ++i) den += (i ? "*" : "") + factors[i];
  if (factors.size() > 1) den = "(" + den + ")";
  return num + "/" + den;
}

// ---------------------------------------------------------------- MultiCenter

MultiCenter::MultiCenter(RingPtr ring, std::vector<Polynomial> divisors)
    : ring_(std::move(ring)), divisors_(std::move(divisors)) {
  for (auto& d : divisors_) {
    require_vars(ring_, d.ring(), "MultiCenter");
    if (d.is_zero()) throw std::invalid_argument("MultiCenter: zero divisor element");
  }
}

MultiCenter MultiCenter::from_centers(RingPtr ring, const std::vector<Center>& centers) {
  std::vector<Polynomial> divisors;
  std::vector<std::size_t> slot;
  for (const auto& c : centers) {
    auto it = std::find(divisors.begin(), divisors.end(), c.divisor);
    slot.push_back(static_cast<std::size_t>(it - divisors.begin()));
    if (it == divisors.end()) divisors.push_back(c.divisor);
  }
  MultiCenter mc(std::move(ring), divisors);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    std::vector<int> e(divisors.size(), 0);
    e[slot[i]] = 1;
    mc.add(centers[i].ideal, std::move(e));
  }
  return mc;
}

void MultiCenter::add(Ideal ideal, std::vector<int> exponents) {
  require_vars(ring_, ideal.ring(), "MultiCenter::add");
  if (exponents.size() != divisors_.size()) throw RingMismatch("MultiCenter::add: exponent length mismatch");
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("MultiCenter::add: negative exponent");
  }
  entries_.push_back({std::move(ideal), std::move(exponents)});
}

// ---------------------------------------------------------------- PresentedAlgebra

struct PresentedAlgebra::Model {
  RingPtr big;
  std::vector<Polynomial> basis;
  std::unique_ptr<Reducer> reducer;
  Ideal relations;
};

struct PresentedAlgebra::ModelSlot {
  std::once_flag once;
  std::unique_ptr<Model> model;
};

const PresentedAlgebra::Model& PresentedAlgebra::model() const {
  std::call_once(model_->once, [this] {
    auto m = std::make_unique<Model>();
    auto li = localization_ideal(base_, divisors_, embedding_, ring_, {});
    m->big = li.big;
    m->basis = groebner_basis(li.gens, li.big->order());
    m->reducer = std::make_unique<Reducer>(m->basis, li.big->order(), li.big);
    m->relations = Ideal(ring_, u_free(m->basis, divisors_.size(), ring_));
    model_->model = std::move(m);
  });
  return *model_->model;
}

PresentedAlgebra PresentedAlgebra::over(QuotientRing base, std::vector<Polynomial> divisors) {
  PresentedAlgebra a;
  for (const auto& d : divisors) require_vars(base.ring, d.ring(), "PresentedAlgebra::over");
  a.ring_ = base.ring;
  a.relations_ = base.modulus;
  a.base_ = std::move(base);
  a.divisors_ = std::move(divisors);
  a.model_ = std::make_shared<ModelSlot>();
  return a;
}

PresentedAlgebra PresentedAlgebra::build(QuotientRing base, std::vector<Polynomial> divisors,
                                         std::vector<Fraction> embedding) {
  PresentedAlgebra a = over(std::move(base), std::move(divisors));
  std::vector<std::string> names = a.base_.ring->names();
  for (std::size_t j = 0; j < embedding.size(); ++j) {
    RingContext probe(names, MonomialOrder::grevlex());
    std::string y = fresh_name(probe, "y" + std::to_string(j + 1));
    names.push_back(y);
    a.new_vars_.push_back(y);
  }
  a.ring_ = RingContext::make(names);
  a.embedding_ = std::move(embedding);
  a.relations_ = Ideal(a.ring_, {});
  return a;
}

std::vector<Polynomial> PresentedAlgebra::divisor_images() const {
  std::vector<Polynomial> out;
  for (const auto& d : divisors_) out.push_back(lift(d));
  return out;
}

std::vector<Fraction> PresentedAlgebra::generators() const {
  std::vector<Fraction> out;
  for (std::size_t i = 0; i < base_.ring->size(); ++i) {
    out.push_back({Polynomial::variable(base_.ring, i), std::vector<int>(divisors_.size(), 0)});
  }
  out.insert(out.end(), embedding_.begin(), embedding_.end());
  return out;
}

Polynomial PresentedAlgebra::lift(const Polynomial& base_poly) const {
  require_vars(base_.ring, base_poly.ring(), "PresentedAlgebra::lift");
  return base_poly.remap(ring_, prefix_map(base_.ring->size(), 0));
}

Fraction PresentedAlgebra::to_fraction(const Polynomial& p) const {
  require_vars(ring_, p.ring(), "PresentedAlgebra::to_fraction");
  const std::size_t nb = base_.ring->size();
  const std::size_t m = divisors_.size();
  std::vector<int> common(m, 0);
  struct Piece {
    Polynomial value;
    std::vector<int> den;
  };
  std::vector<Piece> pieces;
  std::vector<std::vector<Polynomial>> powers(embedding_.size());
  for (const auto& t : p.terms()) {
    Monomial xm(nb);
    for (std::size_t i = 0; i < nb; ++i) xm[i] = t.monomial[i];
    Polynomial v = Polynomial::monomial(base_.ring, xm, t.coefficient);
    std::vector<int> den(m, 0);
    for (std::size_t j = 0; j < embedding_.size(); ++j) {
      int b = t.monomial[nb + j];
      if (b == 0) continue;
      auto& cache = powers[j];
      if (cache.empty()) cache.emplace_back(base_.ring, Rational(1));
      while (static_cast<int>(cache.size()) <= b) cache.push_back(base_.reduce(cache.back() * embedding_[j].numerator));
      v *= cache[b];
      for (std::size_t i = 0; i < m; ++i) den[i] += b * embedding_[j].denominator[i];
    }
    for (std::size_t i = 0; i < m; ++i) common[i] = std::max(common[i], den[i]);
    pieces.push_back({std::move(v), std::move(den)});
  }
  Polynomial num(base_.ring);
  for (auto& pc : pieces) {
    std::vector<int> lift_by(m);
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      lift_by[i] = common[i] - pc.den[i];
      any = any || lift_by[i] > 0;
    }
    num += any ? pc.value * divisor_power(divisors_, lift_by) : pc.value;
  }
  return normalized({std::move(num), std::move(common)}, base_, divisors_);
}

PresentedAlgebra::Location PresentedAlgebra::locate(const Fraction& f) const {
  if (f.denominator.size() != divisors_.size()) throw RingMismatch("locate: divisor list mismatch");
  require_vars(base_.ring, f.numerator.ring(), "locate");
  const Model& md = model();
  const std::size_t m = divisors_.size();
  Monomial um(md.big->size());
  for (std::size_t i = 0; i < m; ++i) um[i] = f.denominator[i];
  Polynomial g = f.numerator.remap(md.big, prefix_map(base_.ring->size(), m)).multiply_monomial(um, 1);
  Polynomial nf = md.reducer->reduce(g);
  std::vector<bool> allowed(md.big->size(), true);
  for (std::size_t i = 0; i < m; ++i) allowed[i] = false;
  Location loc;
  loc.member = nf.uses_only(allowed);
  if (loc.member) {
    std::vector<std::size_t> back(md.big->size(), ring_->size());
    for (std::size_t i = m; i < md.big->size(); ++i) back[i] = i - m;
    loc.expression = nf.remap(ring_, back);
  } else {
    loc.expression = Polynomial(ring_);
  }
  return loc;
}

Ideal PresentedAlgebra::elimination_relations() const { return model().relations; }

// ---------------------------------------------------------------- constructions

PresentedAlgebra dilatation_presentation(const QuotientRing& base, const MultiCenter& mc, PresentationRoute route) {
  if (mc.ring()) require_vars(base.ring, mc.ring(), "dilatation_presentation");
  std::vector<Polynomial> divisors;
  for (const auto& d : mc.divisors()) divisors.push_back(d.rename_into(base.ring));
  std::vector<bool> used(divisors.size(), false);
  for (const auto& e : mc.entries()) {
    for (std::size_t i = 0; i < e.exponents.size(); ++i) used[i] = used[i] || e.exponents[i] > 0;
  }
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (!used[i]) continue;
    if (auto w = zero_divisor_witness(divisors[i], base.modulus)) {
      std::size_t center = 0;
      while (center < mc.size() && mc.entries()[center].exponents[i] == 0) ++center;
      throw ZeroDivisorError("dilatation_presentation: divisor of center " + std::to_string(center + 1) +
                                 " is a zero-divisor, witness " + w->to_string(),
                             center, *w);
    }
  }
  std::vector<Fraction> embedding;
  for (const auto& e : mc.entries()) {
    for (const auto& g : e.ideal.generators()) embedding.push_back({g.rename_into(base.ring), e.exponents});
  }
  PresentedAlgebra a = PresentedAlgebra::build(base, divisors, std::move(embedding));
  a.source_ = mc;
  if (a.embedding_.empty()) return a;
  if (route == PresentationRoute::Elimination) {
    a.relations_ = a.elimination_relations();
    return a;
  }
  const std::size_t nb = base.ring->size();
  auto bmap = prefix_map(nb, 0);
  std::vector<Polynomial> gens;
  for (const auto& g : base.modulus.generators()) gens.push_back(g.remap(a.ring_, bmap));
  for (std::size_t j = 0; j < a.embedding_.size(); ++j) {
    const Fraction& f = a.embedding_[j];
    gens.push_back(a.lift(divisor_power(divisors, f.denominator)) * Polynomial::variable(a.ring_, nb + j) -
                   f.numerator.remap(a.ring_, bmap));
  }
  Ideal rel(a.ring_, std::move(gens));
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (used[i]) rel = saturate(rel, a.lift(divisors[i]));
  }
  a.relations_ = Ideal(a.ring_, rel.basis());
  return a;
}

PresentedAlgebra iterate_dilatation(const PresentedAlgebra& alg, const MultiCenter& mc) {
  if (mc.empty()) return alg;
  require_vars(alg.ring(), mc.ring(), "iterate_dilatation");
  auto images = alg.divisor_images();
  if (mc.divisors().size() != images.size()) throw RingMismatch("iterate_dilatation: divisor list mismatch");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!(mc.divisors()[i].rename_into(alg.ring()) == images[i])) {
      throw RingMismatch("iterate_dilatation: divisor " + std::to_string(i + 1) + " is not the image of the base divisor");
    }
  }
  std::vector<bool> used(images.size(), false);
  for (const auto& e : mc.entries()) {
    for (std::size_t i = 0; i < e.exponents.size(); ++i) used[i] = used[i] || e.exponents[i] > 0;
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!used[i]) continue;
    if (auto w = zero_divisor_witness(alg.divisors()[i], alg.base().modulus)) {
      throw ZeroDivisorError("iterate_dilatation: divisor " + std::to_string(i + 1) + " is a zero-divisor", i, *w);
    }
  }
  std::vector<Fraction> embedding = alg.embedding();
  const std::size_t before = embedding.size();
  for (const auto& e : mc.entries()) {
    for (const auto& h : e.ideal.generators()) {
      Fraction f = alg.to_fraction(h.rename_into(alg.ring()));
      for (std::size_t i = 0; i < f.denominator.size(); ++i) f.denominator[i] += e.exponents[i];
      f = normalized(std::move(f), alg.base(), alg.divisors());
      if (f.numerator.is_zero()) continue;
      if (std::find(embedding.begin() + static_cast<long>(before), embedding.end(), f) != embedding.end()) continue;
      if (alg.locate(f).member) continue;
      embedding.push_back(std::move(f));
    }
  }
  if (embedding.size() == before) return alg;
  PresentedAlgebra out = PresentedAlgebra::build(alg.base(), alg.divisors(), std::move(embedding));
  out.relations_ = out.elimination_relations();
  return out;
}

// ---------------------------------------------------------------- membership

namespace {

/// Ideals L_c = M_c + (a_c) + T of the base ring, one per center.
std::vector<Ideal> enlarged_centers(const QuotientRing& base, const MultiCenter& mc) {
  std::vector<Ideal> out;
  for (std::size_t c = 0; c < mc.size(); ++c) {
    std::vector<Polynomial> gens;
    for (const auto& g : mc.entries()[c].ideal.generators()) gens.push_back(g.rename_into(base.ring));
    gens.push_back(mc.divisor(c).rename_into(base.ring));
    out.emplace_back(base.ring, std::move(gens));
  }
  return out;
}

Ideal power_product(const QuotientRing& base, const std::vector<Ideal>& L, std::span<const int> mu) {
  Ideal acc = Ideal::unit(base.ring);
  for (std::size_t c = 0; c < L.size(); ++c) {
    if (mu[c] > 0) acc = ideal_product(acc, ideal_power(L[c], static_cast<unsigned>(mu[c])));
  }
  return ideal_sum(acc, base.modulus);
}

bool covers(const MultiCenter& mc, std::span<const int> mu, const std::vector<int>& nu, std::vector<int>* excess) {
  std::vector<int> total(nu.size(), 0);
  for (std::size_t c = 0; c < mc.size(); ++c) {
    for (std::size_t i = 0; i < nu.size(); ++i) total[i] += mu[c] * mc.entries()[c].exponents[i];
  }
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (total[i] < nu[i]) return false;
    total[i] -= nu[i];
  }
  if (excess) *excess = std::move(total);
  return true;
}

bool power_test(const Fraction& f, const QuotientRing& base, const MultiCenter& mc, const std::vector<Ideal>& L,
                std::span<const int> mu) {
  std::vector<int> excess;
  if (!covers(mc, mu, f.denominator, &excess)) return false;
  std::vector<Polynomial> divisors;
  for (const auto& d : mc.divisors()) divisors.push_back(d.rename_into(base.ring));
  Polynomial lhs = f.numerator.rename_into(base.ring);
  if (!divisors.empty()) lhs *= divisor_power(divisors, excess);
  return power_product(base, L, mu).contains(lhs);
}

}  // namespace

bool power_criterion(const Fraction& f, const QuotientRing& base, const MultiCenter& mc, std::span<const int> mu) {
  if (mu.size() != mc.size()) throw std::invalid_argument("power_criterion: one exponent per center required");
  if (f.denominator.size() != mc.divisors().size()) throw RingMismatch("power_criterion: divisor list mismatch");
  return power_test(f, base, mc, enlarged_centers(base, mc), mu);
}

bool delta_criterion(const Fraction& f, const QuotientRing& base, const MultiCenter& mc, int delta_max) {
  if (f.denominator.size() != mc.divisors().size()) throw RingMismatch("delta_criterion: divisor list mismatch");
  const std::size_t k = mc.size();
  if (k == 0) return std::all_of(f.denominator.begin(), f.denominator.end(), [](int e) { return e == 0; });
  int bound = 0;
  for (int e : f.denominator) bound = std::max(bound, e);
  // minimal mu with sum mu_c e_c >= nu, searched in the box [0, bound]^k
  std::vector<std::vector<int>> minimal;
  std::vector<int> mu(k, 0);
  while (true) {
    if (covers(mc, mu, f.denominator, nullptr)) {
      bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const std::vector<int>& w) {
        for (std::size_t c = 0; c < k; ++c) {
          if (w[c] > mu[c]) return false;
        }
        return true;
      });
      if (!dominated) minimal.push_back(mu);
    }
    std::size_t c = 0;
    while (c < k && mu[c] == bound) mu[c++] = 0;
    if (c == k) break;
    ++mu[c];
  }
  auto L = enlarged_centers(base, mc);
  for (int delta = 0; delta <= delta_max; ++delta) {
    for (const auto& m0 : minimal) {
      std::vector<int> m1 = m0;
      for (int& e : m1) e += delta;
      if (power_test(f, base, mc, L, m1)) return true;
    }
  }
  return false;
}

bool fraction_member(const Fraction& f, const PresentedAlgebra& alg, const MembershipOptions& opts) {
  if (f.denominator.size() != alg.divisors().size()) throw RingMismatch("fraction_member: divisor list mismatch");
  bool member = alg.locate(f).member;
  if (opts.cross_check && !member && alg.source()) {
    if (delta_criterion(f, alg.base(), *alg.source(), opts.delta_max)) {
      throw std::logic_error("fraction_member: membership routes disagree on " + to_string(f, alg.divisors()));
    }
  }
  return member;
}

std::string to_string(AlgebraRelation r) {
  switch (r) {
    case AlgebraRelation::Equal:
      return "equal";
    case AlgebraRelation::LeftInRight:
      return "left-in-right";
    case AlgebraRelation::RightInLeft:
      return "right-in-left";
    case AlgebraRelation::Incomparable:
      return "incomparable";
  }
  return "?";
}

AlgebraComparison algebra_compare(const PresentedAlgebra& left, const PresentedAlgebra& right) {
  require_vars(left.base().ring, right.base().ring, "algebra_compare");
  if (left.divisors() != right.divisors()) throw RingMismatch("algebra_compare: divisor lists differ");
  if (!left.base().modulus.equals(right.base().modulus)) throw RingMismatch("algebra_compare: bases differ");
  AlgebraComparison out;
  for (const auto& f : left.embedding()) {
    if (!right.locate(f).member) {
      out.left_only = f;
      break;
    }
  }
  for (const auto& f : right.embedding()) {
    if (!left.locate(f).member) {
      out.right_only = f;
      break;
    }
  }
  if (!out.left_only && !out.right_only) {
    out.relation = AlgebraRelation::Equal;
  } else if (!out.left_only) {
    out.relation = AlgebraRelation::LeftInRight;
  } else if (!out.right_only) {
    out.relation = AlgebraRelation::RightInLeft;
  } else {
    out.relation = AlgebraRelation::Incomparable;
  }
  return out;
}

Ideal localized_kernel(const PresentedAlgebra& alg, const Ideal& extra) {
  require_vars(alg.base().ring, extra.ring(), "localized_kernel");
  auto li = localization_ideal(alg.base(), alg.divisors(), alg.embedding(), alg.ring(), extra.generators());
  auto basis = groebner_basis(li.gens, li.big->order());
  auto gens = u_free(basis, alg.divisors().size(), alg.ring());
  std::stable_sort(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) {
    return std::make_pair(a.degree(), a.size()) < std::make_pair(b.degree(), b.size());
  });
  // keep only generators that are new modulo the relations and the ones kept
  std::vector<Polynomial> out;
  Ideal seen = alg.relations();
  for (auto& g : gens) {
    if (seen.contains(g)) continue;
    Polynomial r = seen.normal_form(g);
    out.push_back(r);
    seen = ideal_add(seen, std::vector<Polynomial>{r});
  }
  return Ideal(alg.ring(), std::move(out));
}

KernelReport kernel_modulo(const QuotientRing& base, const MultiCenter& mc, const Ideal& T, int nu_bound) {
  require_vars(base.ring, T.ring(), "kernel_modulo");
  Ideal target = ideal_sum(base.modulus, T);
  for (std::size_t c = 0; c < mc.size(); ++c) {
    Polynomial a = mc.divisor(c).rename_into(base.ring);
    if (auto w = zero_divisor_witness(a, target)) {
      throw ZeroDivisorError("kernel_modulo: divisor of center " + std::to_string(c + 1) +
                                 " is a zero-divisor modulo T, witness " + w->to_string(),
                             c, *w);
    }
  }
  PresentedAlgebra alg = dilatation_presentation(base, mc);
  const auto& rel = alg.relations().generators();
  KernelReport out;
  std::vector<Polynomial> exact = localized_kernel(alg, T).generators();
  exact.insert(exact.end(), rel.begin(), rel.end());
  out.exact = Ideal(alg.ring(), std::move(exact));

  auto L = enlarged_centers(base, mc);
  const std::size_t k = mc.size();
  std::vector<Polynomial> trunc = rel;
  std::vector<int> nu(k, 0);
  while (true) {
    int total = 0;
    for (int e : nu) total += e;
    if (total <= nu_bound) {
      std::vector<int> den(mc.divisors().size(), 0);
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < den.size(); ++i) den[i] += nu[c] * mc.entries()[c].exponents[i];
      }
      Ideal piece = ideal_intersect(power_product(base, L, nu), target);
      for (const auto& g : piece.generators()) {
        auto loc = alg.locate(normalized({g, den}, base, alg.divisors()));
        if (!loc.member) throw std::logic_error("kernel_modulo: element of L^nu over a^nu outside the dilatation");
        if (!loc.expression.is_zero()) trunc.push_back(loc.expression);
      }
    }
    std::size_t c = 0;
    while (c < k && nu[c] == nu_bound) nu[c++] = 0;
    if (c == k || k == 0) break;
    ++nu[c];
  }
  out.truncated = Ideal(alg.ring(), std::move(trunc));
  out.stabilized = out.truncated.contains(out.exact);
  return out;
}

}  // namespace defspace
