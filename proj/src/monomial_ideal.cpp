#include "defspace/monomial_ideal.hpp"

#include <algorithm>
#include <sstream>

namespace defspace {

namespace {

bool leq(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

void require_arity(const MonomialIdeal& I, const MonomialIdeal& J, const char* op) {
  if (I.arity() != J.arity()) throw RingMismatch(std::string(op) + ": arity mismatch");
}

}  // namespace

MonomialIdeal delta_min(const std::vector<ExponentVector>& exponents, std::size_t arity) {
  std::vector<ExponentVector> pool;
  for (const auto& e : exponents) {
    if (e.size() != arity) throw RingMismatch("delta_min: arity mismatch");
    for (int v : e) {
      if (v < 0) throw std::invalid_argument("delta_min: negative exponent");
    }
    pool.push_back(e);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  MonomialIdeal out(arity);
  for (const auto& e : pool) {
    bool dominated = false;
    for (const auto& f : pool) {
      if (&f != &e && f != e && leq(f, e)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.gens_.push_back(e);
  }
  return out;
}

MonomialIdeal MonomialIdeal::unit(std::size_t arity) { return delta_min({ExponentVector(arity, 0)}, arity); }

MonomialIdeal MonomialIdeal::variables(std::size_t arity, const std::vector<std::size_t>& vars) {
  std::vector<ExponentVector> gens;
  for (std::size_t v : vars) {
    if (v >= arity) throw std::out_of_range("MonomialIdeal::variables: index out of range");
    ExponentVector e(arity, 0);
    e[v] = 1;
    gens.push_back(e);
  }
  return delta_min(gens, arity);
}

bool MonomialIdeal::is_unit() const {
  return gens_.size() == 1 && std::all_of(gens_[0].begin(), gens_[0].end(), [](int e) { return e == 0; });
}

std::string MonomialIdeal::to_string(const std::vector<std::string>& names) const {
  std::ostringstream out;
  out << "(";
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    if (g) out << ", ";
    bool any = false;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (gens_[g][i] == 0) continue;
      if (any) out << "*";
      out << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (gens_[g][i] > 1) out << "^" << gens_[g][i];
      any = true;
    }
    if (!any) out << "1";
  }
  if (gens_.empty()) out << "0";
  out << ")";
  return out.str();
}

bool mono_member(const ExponentVector& alpha, const MonomialIdeal& I) {
  if (alpha.size() != I.arity()) throw RingMismatch("mono_member: arity mismatch");
  return std::any_of(I.generators().begin(), I.generators().end(),
                     [&](const ExponentVector& g) { return leq(g, alpha); });
}

MonomialIdeal mono_intersect(const MonomialIdeal& I, const MonomialIdeal& J) {
  require_arity(I, J, "mono_intersect");
  std::vector<ExponentVector> out;
  for (const auto& a : I.generators()) {
    for (const auto& b : J.generators()) {
      ExponentVector m(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
      out.push_back(std::move(m));
    }
  }
  return delta_min(out, I.arity());
}

MonomialIdeal mono_product(const MonomialIdeal& I, const MonomialIdeal& J) {
  require_arity(I, J, "mono_product");
  std::vector<ExponentVector> out;
  for (const auto& a : I.generators()) {
    for (const auto& b : J.generators()) {
      ExponentVector m(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
      out.push_back(std::move(m));
    }
  }
  return delta_min(out, I.arity());
}

MonomialIdeal mono_sum(const MonomialIdeal& I, const MonomialIdeal& J) {
  require_arity(I, J, "mono_sum");
  std::vector<ExponentVector> out = I.generators();
  out.insert(out.end(), J.generators().begin(), J.generators().end());
  return delta_min(out, I.arity());
}

MonomialIdeal mono_power(const MonomialIdeal& I, unsigned exponent) {
  MonomialIdeal r = MonomialIdeal::unit(I.arity());
  for (unsigned k = 0; k < exponent; ++k) r = mono_product(r, I);
  return r;
}

std::vector<std::size_t> support(const MonomialIdeal& I) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < I.arity(); ++i) {
    for (const auto& g : I.generators()) {
      if (g[i] != 0) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

std::optional<ExponentVector> mono_not_contained(const MonomialIdeal& sub, const MonomialIdeal& super) {
  require_arity(sub, super, "mono_not_contained");
  for (const auto& g : sub.generators()) {
    if (!mono_member(g, super)) return g;
  }
  return std::nullopt;
}

std::string to_string(IdentityVerdict v) {
  switch (v) {
    case IdentityVerdict::Holds:
      return "holds";
    case IdentityVerdict::Fails:
      return "fails";
    case IdentityVerdict::HypothesisViolated:
      return "hypothesis violated";
  }
  return "?";
}

IdentityReport compare_monomial(const MonomialIdeal& lhs, const MonomialIdeal& rhs) {
  IdentityReport r;
  if (auto w = mono_not_contained(lhs, rhs)) {
    r.verdict = IdentityVerdict::Fails;
    r.witness = w;
    r.detail = "left side has a monomial outside the right side";
  } else if (auto w2 = mono_not_contained(rhs, lhs)) {
    r.verdict = IdentityVerdict::Fails;
    r.witness = w2;
    r.detail = "right side has a monomial outside the left side";
  }
  return r;
}

namespace {

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t i : a) {
    if (std::find(b.begin(), b.end(), i) != b.end()) return false;
  }
  return true;
}

}  // namespace

IdentityReport verify_disjoint_support(const MonomialIdeal& I, const MonomialIdeal& J) {
  require_arity(I, J, "verify_disjoint_support");
  if (!disjoint(support(I), support(J))) {
    IdentityReport r;
    r.verdict = IdentityVerdict::HypothesisViolated;
    r.detail = "supports intersect";
    return r;
  }
  return compare_monomial(mono_intersect(I, J), mono_product(I, J));
}

IdentityReport verify_coroap(const std::vector<MonomialIdeal>& N, const std::vector<MonomialIdeal>& Q,
                             const MonomialIdeal& Qext) {
  if (N.size() != Q.size()) throw std::invalid_argument("verify_coroap: N and Q differ in length");
  const auto sq = support(Qext);
  for (std::size_t i = 0; i < N.size(); ++i) {
    require_arity(N[i], Qext, "verify_coroap");
    require_arity(Q[i], Qext, "verify_coroap");
    auto sn = support(N[i]);
    if (!disjoint(sn, support(Q[i])) || !disjoint(sn, sq)) {
      IdentityReport r;
      r.verdict = IdentityVerdict::HypothesisViolated;
      r.detail = "support of N_" + std::to_string(i + 1) + " meets Q_" + std::to_string(i + 1) + " or Q";
      return r;
    }
  }
  MonomialIdeal lhs(Qext.arity());
  MonomialIdeal rhs(Qext.arity());
  for (std::size_t i = 0; i < N.size(); ++i) {
    lhs = mono_sum(lhs, mono_product(N[i], Q[i]));
    rhs = mono_sum(rhs, mono_product(N[i], mono_intersect(Q[i], Qext)));
  }
  lhs = mono_intersect(lhs, Qext);
  return compare_monomial(lhs, rhs);
}

IdentityReport verify_nested_powers(const std::vector<std::vector<std::size_t>>& chain, const std::vector<int>& a,
                                    const std::vector<int>& b, std::size_t arity) {
  const std::size_t n = chain.size();
  if (a.size() != n || b.size() != n) throw std::invalid_argument("verify_nested_powers: exponent length mismatch");
  for (int e : a) {
    if (e < 0) throw std::invalid_argument("verify_nested_powers: negative exponent");
  }
  for (int e : b) {
    if (e < 0) throw std::invalid_argument("verify_nested_powers: negative exponent");
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t v : chain[j]) {
      if (std::find(chain[j + 1].begin(), chain[j + 1].end(), v) == chain[j + 1].end()) {
        IdentityReport r;
        r.verdict = IdentityVerdict::HypothesisViolated;
        r.detail = "chain is not nested at step " + std::to_string(j + 1);
        return r;
      }
    }
  }
  std::vector<MonomialIdeal> I;
  for (const auto& vars : chain) I.push_back(MonomialIdeal::variables(arity, vars));
  std::vector<int> m(n);
  int sa = 0;
  int sb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += a[i];
    sb += b[i];
    m[i] = std::max(sa, sb);
  }
  MonomialIdeal pa = MonomialIdeal::unit(arity);
  MonomialIdeal pb = MonomialIdeal::unit(arity);
  MonomialIdeal cap = MonomialIdeal::unit(arity);
  MonomialIdeal prod = MonomialIdeal::unit(arity);
  for (std::size_t i = 0; i < n; ++i) {
    pa = mono_product(pa, mono_power(I[i], static_cast<unsigned>(a[i])));
    pb = mono_product(pb, mono_power(I[i], static_cast<unsigned>(b[i])));
    cap = mono_intersect(cap, mono_power(I[i], static_cast<unsigned>(m[i])));
    int step = m[i] - (i == 0 ? 0 : m[i - 1]);
    prod = mono_product(prod, mono_power(I[i], static_cast<unsigned>(step)));
  }
  IdentityReport first = compare_monomial(mono_intersect(pa, pb), cap);
  if (!first.holds()) {
    first.detail = "item (1): " + first.detail;
    return first;
  }
  IdentityReport second = compare_monomial(cap, prod);
  if (!second.holds()) second.detail = "item (2): " + second.detail;
  return second;
}

Ideal to_polynomial_ideal(const MonomialIdeal& I, const RingPtr& ring) {
  if (ring->size() != I.arity()) throw RingMismatch("to_polynomial_ideal: arity mismatch");
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(Polynomial::monomial(ring, Monomial(g), 1));
  return Ideal(ring, std::move(gens));
}

MonomialIdeal from_polynomial_ideal(const Ideal& I) {
  std::vector<ExponentVector> gens;
  for (const auto& g : I.basis(MonomialOrder::grevlex())) {
    if (g.size() != 1) throw std::invalid_argument("from_polynomial_ideal: ideal is not monomial");
    gens.push_back(g.terms()[0].monomial.exponents());
  }
  return delta_min(gens, I.ring()->size());
}

}  // namespace defspace
