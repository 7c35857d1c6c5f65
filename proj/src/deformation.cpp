#include "defspace/deformation.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "defspace/monomial_ideal.hpp"

namespace defspace {

namespace {

void require_ring(const RingPtr& expected, const RingPtr& got, const char* what) {
  if (!same_variables(expected, got)) throw RingMismatch(std::string(what) + ": ring mismatch");
}

std::optional<Polynomial> first_outside(const Ideal& gens, const Ideal& in) {
  for (const auto& g : gens.generators()) {
    if (!in.contains(g)) return g;
  }
  return std::nullopt;
}

std::vector<int> tail_exponents(int n, int k, const std::vector<int>& indices) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (int j : indices) {
    if (j >= k) e[static_cast<std::size_t>(j - 1)] = 1;
  }
  return e;
}

}  // namespace

// ---------------------------------------------------------------- data

Ideal DeformationDatum::subspace(int k) const {
  if (k == 0) return base.modulus;
  if (k < 0 || k > size()) throw std::out_of_range("DeformationDatum::subspace: index " + std::to_string(k));
  return ideal_sum(subspace_ideals[static_cast<std::size_t>(k - 1)], base.modulus);
}

bool DatumReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const DatumCheck& c) { return c.ok; });
}

std::string DatumReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.ok) return c.witness.empty() ? c.what : c.what + ": " + c.witness;
  }
  return {};
}

DatumReport validate_datum(const DeformationDatum& d) {
  DatumReport out;
  const int n = d.size();
  if (d.divisors.size() != d.subspace_ideals.size()) {
    out.checks.push_back({"one divisor per subspace", false,
                          std::to_string(d.divisors.size()) + " divisors for " + std::to_string(n) + " subspaces"});
    return out;
  }
  for (const auto& M : d.subspace_ideals) require_ring(d.base.ring, M.ring(), "validate_datum");
  for (const auto& a : d.divisors) require_ring(d.base.ring, a.ring(), "validate_datum");

  for (int i = 1; i < n; ++i) {
    DatumCheck c{"M" + std::to_string(i) + " in M" + std::to_string(i + 1), true, {}};
    if (auto g = first_outside(d.subspace_ideals[static_cast<std::size_t>(i - 1)], d.subspace(i + 1))) {
      c.ok = false;
      c.witness = g->to_string() + " not in M" + std::to_string(i + 1);
    }
    out.checks.push_back(std::move(c));
  }
  for (int j = 1; j <= n; ++j) {
    const Polynomial& a = d.divisors[static_cast<std::size_t>(j - 1)];
    for (int i = 0; i <= n; ++i) {
      std::string where = i == 0 ? std::string("base") : "M" + std::to_string(i);
      DatumCheck c{"d" + std::to_string(j) + " regular mod " + where, true, {}};
      if (a.is_zero()) {
        c.ok = false;
        c.witness = "d" + std::to_string(j) + " = 0";
      } else {
        Ideal I = d.subspace(i);
        if (!is_nonzerodivisor(a, I)) {
          c.ok = false;
          if (auto w = first_outside(ideal_quotient(I, a), I)) {
            c.witness = "(" + where + " : d" + std::to_string(j) + ") contains " + w->to_string();
          }
        }
      }
      out.checks.push_back(std::move(c));
    }
  }
  return out;
}

MultiCenter deformation_multicenter(const DeformationDatum& d) {
  MultiCenter mc(d.base.ring, d.divisors);
  const int n = d.size();
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) all[static_cast<std::size_t>(j - 1)] = j;
  for (int i = 1; i <= n; ++i) mc.add(d.subspace_ideals[static_cast<std::size_t>(i - 1)], tail_exponents(n, i, all));
  return mc;
}

PresentedAlgebra deformation_space(const DeformationDatum& d) {
  auto report = validate_datum(d);
  if (!report.ok()) throw InvalidDatum("invalid deformation datum: " + report.first_failure());
  if (d.size() == 0) return PresentedAlgebra::over(d.base, {});
  return dilatation_presentation(d.base, deformation_multicenter(d));
}

DeformationDatum build_an_datum(const QuotientRing& B, const std::vector<Ideal>& chain) {
  for (const auto& Q : chain) require_ring(B.ring, Q.ring(), "build_an_datum");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (auto g = first_outside(chain[i], ideal_sum(chain[i + 1], B.modulus))) {
      throw std::invalid_argument("build_an_datum: chain not nested, " + g->to_string() + " not in Q" +
                                  std::to_string(i + 2));
    }
  }
  std::vector<std::string> names = B.ring->names();
  std::vector<std::string> t_names;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    RingContext probe(names, MonomialOrder::grevlex());
    t_names.push_back(fresh_name(probe, "T" + std::to_string(i + 1)));
    names.push_back(t_names.back());
  }
  RingPtr A = RingContext::make(names);
  auto extend = [&](const Ideal& I) {
    std::vector<Polynomial> g;
    for (const auto& p : I.generators()) g.push_back(p.rename_into(A));
    return Ideal(A, std::move(g));
  };
  DeformationDatum d;
  d.base = QuotientRing(A, extend(B.modulus));
  for (std::size_t i = 0; i < chain.size(); ++i) {
    d.subspace_ideals.push_back(extend(chain[i]));
    d.divisors.push_back(Polynomial::variable(A, t_names[i]));
  }
  return d;
}

DeformationDatum linear_an_datum(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("b" + std::to_string(i));
  RingPtr B = RingContext::make(names);
  std::vector<Ideal> chain;
  for (int i = 1; i <= n; ++i) {
    std::vector<Polynomial> g;
    for (int j = 0; j < i; ++j) g.push_back(Polynomial::variable(B, static_cast<std::size_t>(j)));
    chain.emplace_back(B, std::move(g));
  }
  return build_an_datum(QuotientRing(B), chain);
}

// ---------------------------------------------------------------- panels

PanelEvaluator::PanelEvaluator(DeformationDatum d, PanelOptions opts) : datum_(std::move(d)), opts_(opts) {
  auto report = validate_datum(datum_);
  if (!report.ok()) throw InvalidDatum("invalid deformation datum: " + report.first_failure());
}

PresentedAlgebra PanelEvaluator::leaf(int k) const {
  return PresentedAlgebra::over(QuotientRing(datum_.base.ring, datum_.subspace(k)), datum_.divisors);
}

PresentedAlgebra PanelEvaluator::evaluate(const PanelExpr& p) {
  const std::string key = p.to_string();
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (auto problem = panel_problem(p, datum_.size()); !problem.empty()) {
    throw std::invalid_argument("malformed panel " + key + ": " + problem);
  }
  PresentedAlgebra out;
  if (p.is_leaf()) {
    out = leaf(p.ground());
  } else {
    PresentedAlgebra base = evaluate(p.base());
    MultiCenter mc(base.ring(), base.divisor_images());
    const auto indices = p.divisor_indices();
    for (const auto& e : p.entries()) {
      if (opts_.check_immersion) {
        PresentedAlgebra target = evaluate(e.expr);
        for (const auto& f : base.embedding()) {
          if (!target.locate(f).member) {
            throw std::logic_error("panel " + key + ": " + to_string(f, base.divisors()) + " does not map into " +
                                   e.expr.to_string());
          }
        }
      }
      Ideal center = localized_kernel(base, datum_.subspace_ideals[static_cast<std::size_t>(e.divisor - 1)]);
      mc.add(center, tail_exponents(datum_.size(), e.divisor, indices));
    }
    out = iterate_dilatation(base, mc);
  }
  cache_.emplace(key, out);
  return out;
}

PresentedAlgebra evaluate_panel(const PanelExpr& p, const DeformationDatum& d, PanelOptions opts) {
  PanelEvaluator ev(d, opts);
  return ev.evaluate(p);
}

std::string to_string(PanelVerdict v) {
  switch (v) {
    case PanelVerdict::Isomorphism:
      return "isomorphism";
    case PanelVerdict::MorphismOnly:
      return "morphism-only";
    case PanelVerdict::Unexpected:
      return "unexpected";
  }
  return "?";
}

PanelizationReport compare_with_panel(PanelEvaluator& ev, const PresentedAlgebra& full, const PanelExpr& panel) {
  PanelizationReport out;
  out.panel = panel;
  PresentedAlgebra alg = ev.evaluate(panel);
  auto cmp = algebra_compare(full, alg);
  out.relation = cmp.relation;
  switch (cmp.relation) {
    case AlgebraRelation::Equal:
      out.verdict = PanelVerdict::Isomorphism;
      break;
    case AlgebraRelation::LeftInRight:
      out.verdict = PanelVerdict::MorphismOnly;
      out.witness = cmp.right_only;
      break;
    default:
      out.verdict = PanelVerdict::Unexpected;
      out.witness = cmp.left_only;
      break;
  }
  if (out.witness) out.witness_text = to_string(*out.witness, full.divisors());
  return out;
}

PanelizationReport compare_with_panel(const DeformationDatum& d, const PanelExpr& panel) {
  PanelEvaluator ev(d);
  return compare_with_panel(ev, deformation_space(d), panel);
}

PanelizationReport verify_panelization(const DeformationDatum& d, const std::set<int>& S) {
  PanelEvaluator ev(d);
  const int n = d.size();
  for (int s : S) {
    if (s < 1 || s > n) throw std::invalid_argument("verify_panelization: index " + std::to_string(s) + " out of range");
  }
  if (S.empty() || static_cast<int>(S.size()) == n) throw std::invalid_argument("verify_panelization: trivial S");
  PanelExpr panel = canonicalize(panelize(initial_panel(n), {}, S));
  return compare_with_panel(ev, deformation_space(d), panel);
}

// ---------------------------------------------------------------- assumption

std::string to_string(AssumptionVerdict v) {
  switch (v) {
    case AssumptionVerdict::BoundedPass:
      return "bounded-pass";
    case AssumptionVerdict::Vacuous:
      return "vacuous";
    case AssumptionVerdict::Fail:
      return "fail";
  }
  return "?";
}

namespace {

/// Ideals of base.ring containing the base modulus.
struct GroebnerOps {
  using Id = Ideal;
  RingPtr ring;
  Ideal modulus;

  Id unit() const { return Ideal::unit(ring); }
  Id product(const Id& a, const Id& b) const { return ideal_sum(ideal_product(a, b), modulus); }
  Id sum(const Id& a, const Id& b) const { return ideal_sum(a, b); }
  Id intersect(const Id& a, const Id& b) const { return ideal_intersect(a, b); }
  bool equal(const Id& a, const Id& b) const { return a.equals(b); }
  std::string show(const Id& a) const { return Ideal(ring, a.basis()).to_string(); }
};

struct MonomialOps {
  using Id = MonomialIdeal;
  std::vector<std::string> names;

  Id unit() const { return MonomialIdeal::unit(names.size()); }
  Id product(const Id& a, const Id& b) const { return mono_product(a, b); }
  Id sum(const Id& a, const Id& b) const { return mono_sum(a, b); }
  Id intersect(const Id& a, const Id& b) const { return mono_intersect(a, b); }
  bool equal(const Id& a, const Id& b) const { return a == b; }
  std::string show(const Id& a) const { return a.to_string(names); }
};

bool is_monomial(const Ideal& I) {
  return std::all_of(I.generators().begin(), I.generators().end(), [](const Polynomial& p) { return p.size() == 1; });
}

/// All vectors of length m with entry sum <= bound, by increasing sum.
std::vector<std::vector<int>> bounded_vectors(std::size_t m, int bound) {
  std::vector<std::vector<int>> out{std::vector<int>(m, 0)};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out) {
      int used = 0;
      for (int e : v) used += e;
      for (int e = 0; used + e <= bound; ++e) {
        next.push_back(v);
        next.back()[i] = e;
      }
    }
    out = std::move(next);
  }
  auto total = [](const std::vector<int>& v) {
    int t = 0;
    for (int e : v) t += e;
    return t;
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return total(a) < total(b); });
  return out;
}

std::string vec_to_string(const std::vector<int>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

template <class Ops>
AssumptionReport run_assumption(const Ops& ops, const std::vector<typename Ops::Id>& M,
                                const std::vector<typename Ops::Id>& D, const typename Ops::Id& Mk,
                                AssumptionReport out, const AssumptionBounds& bounds) {
  using Id = typename Ops::Id;
  const std::size_t m = M.size();
  auto power = [&](const Id& I, int e) {
    Id acc = ops.unit();
    for (int i = 0; i < e; ++i) acc = ops.product(acc, I);
    return acc;
  };
  std::map<std::vector<int>, Id> theta_prod;
  auto prod_theta = [&](const std::vector<int>& theta) -> const Id& {
    auto it = theta_prod.find(theta);
    if (it != theta_prod.end()) return it->second;
    Id acc = ops.unit();
    for (std::size_t i = 0; i < m; ++i) acc = ops.product(acc, power(M[i], theta[i]));
    return theta_prod.emplace(theta, acc).first->second;
  };

  const auto thetas = bounded_vectors(m, bounds.theta_bound);
  for (const auto& theta : thetas) {
    std::size_t first = 0;
    while (first < m && theta[first] == 0) ++first;
    if (first == m) continue;
    ++out.instances;
    Id lhs = ops.intersect(prod_theta(theta), Mk);
    Id rhs = Mk;
    for (std::size_t i = 0; i < m; ++i) rhs = ops.product(rhs, power(M[i], i == first ? theta[i] - 1 : theta[i]));
    if (!ops.equal(lhs, rhs)) {
      out.verdict = AssumptionVerdict::Fail;
      out.item = 2;
      out.theta = theta;
      out.witness = "theta=" + vec_to_string(theta) + ": " + ops.show(lhs) + " != " + ops.show(rhs);
      return out;
    }
  }

  struct Piece {
    std::vector<int> gamma, theta;
    Id whole;  // d^gamma * prod M^theta
    Id cut;    // d^gamma * (prod M^theta cap M_k)
  };
  std::map<std::vector<int>, Id> theta_cut;
  std::vector<Piece> pieces;
  for (const auto& gamma : bounded_vectors(D.size(), bounds.theta_bound)) {
    Id dg = ops.unit();
    for (std::size_t i = 0; i < D.size(); ++i) dg = ops.product(dg, power(D[i], gamma[i]));
    for (const auto& theta : thetas) {
      auto it = theta_cut.find(theta);
      if (it == theta_cut.end()) it = theta_cut.emplace(theta, ops.intersect(prod_theta(theta), Mk)).first;
      pieces.push_back({gamma, theta, ops.product(dg, prod_theta(theta)), ops.product(dg, it->second)});
    }
  }
  std::vector<std::size_t> family;
  std::function<bool(std::size_t)> extend = [&](std::size_t from) -> bool {
    if (!family.empty()) {
      ++out.instances;
      Id whole = pieces[family[0]].whole;
      Id rhs = pieces[family[0]].cut;
      for (std::size_t i = 1; i < family.size(); ++i) {
        whole = ops.sum(whole, pieces[family[i]].whole);
        rhs = ops.sum(rhs, pieces[family[i]].cut);
      }
      Id lhs = ops.intersect(whole, Mk);
      if (!ops.equal(lhs, rhs)) {
        out.verdict = AssumptionVerdict::Fail;
        out.item = 1;
        out.theta = pieces[family[0]].theta;
        std::string fam;
        for (std::size_t i : family) {
          fam += (fam.empty() ? "" : ", ") + std::string("gamma=") + vec_to_string(pieces[i].gamma) +
                 " theta=" + vec_to_string(pieces[i].theta);
        }
        out.witness = "family [" + fam + "]: " + ops.show(lhs) + " != " + ops.show(rhs);
        return false;
      }
    }
    if (static_cast<int>(family.size()) == bounds.e_bound) return true;
    for (std::size_t i = from; i < pieces.size(); ++i) {
      family.push_back(i);
      bool ok = extend(i + 1);
      family.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  if (extend(0)) out.verdict = AssumptionVerdict::BoundedPass;
  return out;
}

}  // namespace

AssumptionReport check_assumption(const DeformationDatum& d, const std::set<int>& S, int k,
                                  const AssumptionBounds& bounds) {
  const int n = d.size();
  for (int s : S) {
    if (s < 1 || s > n) throw std::invalid_argument("check_assumption: index " + std::to_string(s) + " out of range");
  }
  if (k < 1 || k > n || S.count(k)) throw std::invalid_argument("check_assumption: k must lie in the complement of S");
  AssumptionReport out;
  for (int s : S) {
    if (s > k) out.s_indices.push_back(s);
  }
  if (out.s_indices.empty()) {
    out.verdict = AssumptionVerdict::Vacuous;
    return out;
  }
  std::vector<Ideal> M;
  for (int s : out.s_indices) M.push_back(d.subspace(s));
  std::vector<Ideal> D;
  for (int s : S) D.push_back(ideal_add(d.base.modulus, std::vector<Polynomial>{d.divisors[static_cast<std::size_t>(s - 1)]}));
  Ideal Mk = d.subspace(k);

  bool monomial = !bounds.force_groebner && d.base.modulus.is_zero() && is_monomial(Mk);
  for (const auto& I : M) monomial = monomial && is_monomial(I);
  for (const auto& I : D) monomial = monomial && is_monomial(I);
  if (monomial) {
    MonomialOps ops{d.base.ring->names()};
    std::vector<MonomialIdeal> mM, mD;
    for (const auto& I : M) mM.push_back(from_polynomial_ideal(I));
    for (const auto& I : D) mD.push_back(from_polynomial_ideal(I));
    return run_assumption(ops, mM, mD, from_polynomial_ideal(Mk), std::move(out), bounds);
  }
  GroebnerOps ops{d.base.ring, d.base.modulus};
  return run_assumption(ops, M, D, Mk, std::move(out), bounds);
}

// ---------------------------------------------------------------- strata

PresentedAlgebra stratum(const PresentedAlgebra& alg, const std::set<int>& S) {
  if (S.empty()) return alg;
  auto images = alg.divisor_images();
  std::vector<Polynomial> extra;
  for (int s : S) {
    if (s < 1 || s > static_cast<int>(images.size())) {
      throw std::out_of_range("stratum: unknown divisor index " + std::to_string(s));
    }
    extra.push_back(images[static_cast<std::size_t>(s - 1)]);
  }
  return PresentedAlgebra::over(QuotientRing(alg.ring(), ideal_add(alg.relations(), extra)), images);
}

std::string smoothness_problem(const DeformationDatum& d) {
  if (!d.base.modulus.is_zero()) return "base has a nonzero modulus";
  std::vector<bool> divisor_var(d.base.ring->size(), false);
  for (std::size_t j = 0; j < d.divisors.size(); ++j) {
    const Polynomial& a = d.divisors[j];
    if (a.size() != 1 || a.degree() != 1 || a.terms()[0].coefficient != 1) {
      return "d" + std::to_string(j + 1) + " is not a variable";
    }
    const auto& e = a.terms()[0].monomial.exponents();
    std::size_t v = static_cast<std::size_t>(std::find(e.begin(), e.end(), 1) - e.begin());
    if (divisor_var[v]) return "d" + std::to_string(j + 1) + " repeats a divisor variable";
    divisor_var[v] = true;
  }
  for (std::size_t i = 0; i < d.subspace_ideals.size(); ++i) {
    const Ideal& M = d.subspace_ideals[i];
    for (const auto& g : M.generators()) {
      if (g.degree() != 1) return "M" + std::to_string(i + 1) + " has a nonlinear generator";
      auto sup = g.support();
      for (std::size_t v = 0; v < sup.size(); ++v) {
        if (sup[v] && divisor_var[v]) return "M" + std::to_string(i + 1) + " involves a divisor variable";
      }
    }
    if (M.basis().size() != M.generators().size()) return "M" + std::to_string(i + 1) + " is not minimally generated";
  }
  return {};
}

namespace {

/// Left presentation G / I_L, right presentation F / I_R and psi: G -> F.
struct StrataPair {
  Ideal left;
  Ideal right;
  std::vector<Polynomial> psi;
};

std::vector<Polynomial> divisor_images_in(const PresentedAlgebra& alg, const std::set<int>& S) {
  auto images = alg.divisor_images();
  std::vector<Polynomial> out;
  for (int s : S) out.push_back(images[static_cast<std::size_t>(s - 1)]);
  return out;
}

void finish(StrataReport& out, const StrataPair& pair, int degree) {
  const RingPtr& G = pair.left.ring();
  const RingPtr& F = pair.right.ring();
  QuotientRing target(F, pair.right);
  out.well_defined = true;
  for (const auto& g : pair.left.generators()) {
    if (!pair.right.contains(g.substitute(pair.psi, F))) {
      out.well_defined = false;
      out.detail = "left relation " + g.to_string() + " does not map to zero";
      break;
    }
  }
  out.surjective = true;
  for (std::size_t v = 0; v < F->size(); ++v) {
    Polynomial x = Polynomial::variable(F, v);
    if (std::find(pair.psi.begin(), pair.psi.end(), x) != pair.psi.end()) continue;
    if (!subalgebra_member(x, pair.psi, target).member) {
      out.surjective = false;
      if (out.detail.empty()) out.detail = "generator " + F->name(v) + " is not in the image";
      break;
    }
  }
  Ideal kernel = ring_map_kernel(QuotientRing(G), target, pair.psi);
  out.ideals_equal = kernel.equals(pair.left);
  out.hilbert_lhs = hilbert_function(pair.left, degree);
  out.hilbert_rhs = hilbert_function(kernel, degree);
  out.hilbert_agree = out.hilbert_lhs == out.hilbert_rhs;
}

std::string stratum_text(const std::set<int>& S, const std::string& inner) {
  return "V" + set_to_string(S) + "(" + inner + ")";
}

/// The S-panel and the dilatation of its strata, for K nonempty.
std::optional<StrataPair> panel_strata(const DeformationDatum& d, const std::set<int>& S, StrataReport& out) {
  const int n = d.size();
  PanelEvaluator ev(d);
  PanelExpr panel = canonicalize(panelize(initial_panel(n), {}, S));
  auto theta = compare_with_panel(ev, deformation_space(d), panel);
  if (theta.verdict != PanelVerdict::Isomorphism) {
    out.detail = "panel " + panel.to_string() + " differs from the deformation space";
    return std::nullopt;
  }
  PresentedAlgebra RS = ev.evaluate(panel.base());
  const auto dS = divisor_images_in(RS, S);
  QuotientRing qS(RS.ring(), ideal_add(RS.relations(), dS));
  MultiCenter panel_mc(RS.ring(), RS.divisor_images());
  MultiCenter rhs_mc(RS.ring(), RS.divisor_images());
  const auto K = panel.divisor_indices();
  const std::size_t nb = d.base.ring->size();
  std::vector<std::size_t> panel_offset, rhs_offset;
  std::size_t po = 0, ro = 0;
  std::string formula = "D[";
  for (const auto& e : panel.entries()) {
    std::vector<Polynomial> J = localized_kernel(RS, d.subspace_ideals[static_cast<std::size_t>(e.divisor - 1)]).generators();
    PresentedAlgebra RE = ev.evaluate(e.expr);
    QuotientRing target(RE.ring(), ideal_add(RE.relations(), divisor_images_in(RE, S)));
    std::vector<Polynomial> images;
    for (std::size_t v = 0; v < RS.ring()->size(); ++v) {
      if (v < nb) {
        images.push_back(RE.lift(Polynomial::variable(d.base.ring, v)));
        continue;
      }
      auto loc = RE.locate(RS.embedding()[v - nb]);
      if (!loc.member) {
        out.detail = to_string(RS.embedding()[v - nb], RS.divisors()) + " does not map into " + e.expr.to_string();
        return std::nullopt;
      }
      images.push_back(loc.expression);
    }
    std::vector<Polynomial> Jp = J;
    Ideal restricted = ring_map_kernel(qS, target, images);
    for (const auto& g : restricted.generators()) Jp.push_back(g);
    auto exps = tail_exponents(n, e.divisor, K);
    panel_offset.push_back(po);
    rhs_offset.push_back(ro);
    po += J.size();
    ro += Jp.size();
    panel_mc.add(Ideal(RS.ring(), J), exps);
    rhs_mc.add(Ideal(RS.ring(), std::move(Jp)), exps);
    if (formula.size() > 2) formula += ",";
    formula += "(D" + std::to_string(e.divisor) + "," + stratum_text(S, e.expr.to_string()) + ")";
  }
  out.formula = formula + " | " + stratum_text(S, panel.base().to_string()) + "]";

  PresentedAlgebra left = dilatation_presentation(RS.as_quotient(), panel_mc);
  PresentedAlgebra right;
  try {
    right = dilatation_presentation(qS, rhs_mc);
  } catch (const ZeroDivisorError& err) {
    out.detail = err.what();
    return std::nullopt;
  }
  StrataPair pair;
  pair.left = ideal_add(left.relations(), divisor_images_in(left, S));
  pair.right = right.relations();
  const std::size_t ns = RS.ring()->size();
  for (std::size_t v = 0; v < ns; ++v) pair.psi.push_back(Polynomial::variable(right.ring(), v));
  for (std::size_t c = 0; c < panel_offset.size(); ++c) {
    std::size_t count = (c + 1 < panel_offset.size() ? panel_offset[c + 1] : po) - panel_offset[c];
    for (std::size_t i = 0; i < count; ++i) {
      pair.psi.push_back(Polynomial::variable(right.ring(), ns + rhs_offset[c] + i));
    }
  }
  return pair;
}

}  // namespace

StrataReport verify_strata(const DeformationDatum& d, const std::set<int>& S, int degree) {
  StrataReport out;
  auto report = validate_datum(d);
  if (!report.ok()) throw InvalidDatum("invalid deformation datum: " + report.first_failure());
  const int n = d.size();
  if (S.empty()) throw std::invalid_argument("verify_strata: empty S");
  for (int s : S) {
    if (s < 1 || s > n) throw std::invalid_argument("verify_strata: index " + std::to_string(s) + " out of range");
  }
  if (auto problem = smoothness_problem(d); !problem.empty()) {
    out.supported = false;
    out.detail = "unsupported: " + problem;
    return out;
  }
  std::optional<StrataPair> pair;
  if (static_cast<int>(S.size()) < n) {
    pair = panel_strata(d, S, out);
  } else if (n == 1) {
    PresentedAlgebra full = deformation_space(d);
    const RingPtr& G = full.ring();
    StrataPair p;
    p.left = ideal_add(full.relations(), divisor_images_in(full, S));
    std::vector<Polynomial> gens;
    Ideal M = d.subspace(1);
    for (const auto& g : M.generators()) gens.push_back(full.lift(g));
    gens.push_back(full.lift(d.divisors[0]));
    p.right = Ideal(G, std::move(gens));
    for (std::size_t v = 0; v < G->size(); ++v) p.psi.push_back(Polynomial::variable(G, v));
    out.formula = "(X0 / (M1 + (d1)))[";
    for (std::size_t j = 0; j < full.new_vars().size(); ++j) out.formula += (j ? "," : "") + full.new_vars()[j];
    out.formula += "]";
    pair = std::move(p);
  } else {
    std::set<int> top{n};
    pair = panel_strata(d, top, out);
    if (pair) {
      std::set<int> rest(S.begin(), S.end());
      rest.erase(n);
      std::vector<Polynomial> left_extra, right_extra;
      for (int s : rest) {
        const Polynomial& a = d.divisors[static_cast<std::size_t>(s - 1)];
        std::vector<std::size_t> lmap(d.base.ring->size());
        for (std::size_t v = 0; v < lmap.size(); ++v) lmap[v] = v;
        left_extra.push_back(a.remap(pair->left.ring(), lmap));
        right_extra.push_back(a.remap(pair->right.ring(), lmap));
      }
      pair->left = ideal_add(pair->left, left_extra);
      pair->right = ideal_add(pair->right, right_extra);
      out.formula = stratum_text(rest, out.formula);
    }
  }
  if (!pair) return out;
  finish(out, *pair, degree);
  return out;
}

StrataReport compare_strata(const PresentedAlgebra& left, const PresentedAlgebra& right, const std::set<int>& S,
                            int degree) {
  StrataReport out;
  if (left.divisors() != right.divisors() || !left.base().modulus.equals(right.base().modulus)) {
    throw RingMismatch("compare_strata: algebras over different bases");
  }
  StrataPair pair;
  pair.left = ideal_add(left.relations(), divisor_images_in(left, S));
  pair.right = ideal_add(right.relations(), divisor_images_in(right, S));
  const std::size_t nb = left.base().ring->size();
  for (std::size_t v = 0; v < nb; ++v) pair.psi.push_back(right.lift(Polynomial::variable(left.base().ring, v)));
  for (const auto& f : left.embedding()) {
    auto loc = right.locate(f);
    if (!loc.member) {
      out.detail = to_string(f, left.divisors()) + " is not in the right algebra";
      return out;
    }
    pair.psi.push_back(loc.expression);
  }
  out.formula = "identity on generators";
  finish(out, pair, degree);
  return out;
}

}  // namespace defspace
