// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "defspace/deformation.hpp"
#include "defspace/monomial_ideal.hpp"
#include "oracle/linear_membership.hpp"
#include "support/random_datum.hpp"
#include "support/random_mono.hpp"
#include "support/random_poly.hpp"

using namespace defspace;

namespace {

// Collects failures of one criterion; empty means pass.
struct Outcome {
  std::vector<std::string> problems;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

std::vector<std::set<int>> nontrivial_subsets(int n) {
  std::vector<std::set<int>> out;
  for (int mask = 1; mask + 1 < (1 << n); ++mask) {
    std::set<int> S;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) S.insert(i + 1);
    }
    out.push_back(S);
  }
  return out;
}

DeformationDatum remark_datum() {
  auto A = RingContext::make({"X", "T1", "T2"});
  DeformationDatum d;
  d.base = QuotientRing(A);
  d.subspace_ideals = {Ideal(A, {parse_polynomial(A, "X^2")}), Ideal(A, {parse_polynomial(A, "X")})};
  d.divisors = {parse_polynomial(A, "T1"), parse_polynomial(A, "T2")};
  return d;
}

Ideal gens(const RingPtr& R, std::initializer_list<const char*> ps) {
  std::vector<Polynomial> v;
  for (const char* p : ps) v.push_back(parse_polynomial(R, p));
  return Ideal(R, v);
}

// Polynomial ideal generated by the monomials of I.
Ideal poly(const MonomialIdeal& I, const RingPtr& R) { return to_polynomial_ideal(I, R); }

bool same(const MonomialIdeal& m, const Ideal& p) { return to_polynomial_ideal(m, p.ring()).equals(p); }

void polyptych_counts(Outcome& o) {
  const std::size_t expected[] = {1, 1, 3, 19};
  std::ostringstream counts;
  for (int n = 0; n <= 3; ++n) {
    auto P = enumerate_polyptych(n);
    counts << (n ? "," : "") << P.panels.size();
    o.expect(P.panels.size() == expected[n], "n=" + std::to_string(n) + " gives " + std::to_string(P.panels.size()));
    o.expect(is_acyclic(P), "cycle for n=" + std::to_string(n));
  }
  std::ifstream in(std::string(DEFSPACE_FIXTURE_DIR) + "/p3_panels.txt");
  o.expect(static_cast<bool>(in), "missing p3_panels.txt");
  std::set<std::string> golden;
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    if (colon != std::string::npos) golden.insert(canonicalize(parse_panel(line.substr(colon + 2))).to_string());
  }
  std::set<std::string> got;
  for (const auto& p : enumerate_polyptych(3).panels) got.insert(p.to_string());
  o.expect(golden.size() == 19 && got == golden, "19 formulas differ from the golden fixture");
  o.summary = "counts " + counts.str() + ", golden set matches";
}

void remark_reproduction(Outcome& o) {
  auto d = remark_datum();
  const RingPtr& A = d.base.ring;
  auto s2 = verify_panelization(d, {2});
  o.expect(s2.verdict == PanelVerdict::MorphismOnly, "S={2} gives " + to_string(s2.verdict));
  o.expect(s2.witness_text == "X^2/(T1*T2^2)", "S={2} witness " + s2.witness_text);
  o.expect(s2.witness && *s2.witness == Fraction{parse_polynomial(A, "X^2"), {1, 2}}, "S={2} witness fraction");
  if (s2.witness) {
    // second route: membership through the delta criterion cross check
    auto full = deformation_space(d);
    auto panel = evaluate_panel(s2.panel, d);
    o.expect(!fraction_member(*s2.witness, full), "witness lies in the full space");
    o.expect(fraction_member(*s2.witness, panel), "witness not in the panel algebra");
  }
  auto s1 = verify_panelization(d, {1});
  o.expect(s1.verdict == PanelVerdict::Isomorphism, "S={1} gives " + to_string(s1.verdict));

  MultiCenter mc(A, d.divisors);
  mc.add(gens(A, {"X"}), {0, 1});
  auto k = kernel_modulo(d.base, mc, gens(A, {"X^2"}), 2);
  auto alg = dilatation_presentation(d.base, mc);
  auto loc = alg.locate(Fraction{parse_polynomial(A, "X^2"), {0, 2}});
  o.expect(loc.member, "X^2/T2^2 not in the dilatation at [(X), T2]");
  if (loc.member) o.expect(k.exact.contains(loc.expression), "kernel misses X^2/T2^2");
  o.summary = "S={2} morphism-only with X^2/(T1*T2^2), S={1} isomorphism, kernel contains X^2/T2^2";
}

void monomial_counterexample(Outcome& o) {
  auto R = RingContext::make({"x", "y", "z", "t"});
  auto I1 = gens(R, {"y*z"});
  auto I2 = gens(R, {"x*y", "y*z", "z*t"});
  auto m1 = from_polynomial_ideal(I1);
  auto m2 = from_polynomial_ideal(I2);
  ExponentVector e{1, 1, 1, 1};
  Polynomial f = parse_polynomial(R, "x*y*z*t");
  bool mono_in = mono_member(e, mono_intersect(m1, mono_power(m2, 2)));
  bool mono_prod = mono_member(e, mono_product(m1, m2));
  bool gb_in = ideal_intersect(I1, ideal_power(I2, 2)).contains(f);
  bool gb_prod = ideal_product(I1, I2).contains(f);
  o.expect(mono_in && gb_in, "xyzt not in I1 cap I2^2");
  o.expect(!mono_prod && !gb_prod, "xyzt in I1 I2");
  o.expect(mono_in == gb_in && mono_prod == gb_prod, "monomial and groebner routes disagree");
  o.expect(same(mono_intersect(m1, mono_power(m2, 2)), ideal_intersect(I1, ideal_power(I2, 2))),
           "I1 cap I2^2 differs between routes");
  o.expect(same(mono_product(m1, m2), ideal_product(I1, I2)), "I1 I2 differs between routes");
  o.summary = "xyzt in I1 cap I2^2, not in I1 I2, both routes";
}

void quotient_counterexample(Outcome& o) {
  auto R = RingContext::make({"x", "y", "z"});
  auto mod = gens(R, {"x^2 - z*y^3"});
  auto I1 = gens(R, {"x"});
  auto I2 = gens(R, {"x", "y"});
  Polynomial f = parse_polynomial(R, "x^2");
  Ideal lhs = ideal_intersect(ideal_sum(ideal_power(I1, 2), mod), ideal_sum(ideal_power(I2, 3), mod));
  Ideal rhs = ideal_sum(ideal_product(ideal_power(I1, 2), I2), mod);
  o.expect(lhs.contains(f), "x^2 not in I1^2 cap I2^3");
  o.expect(!rhs.contains(f), "x^2 in I1^2 I2");
  o.expect(!lhs.equals(rhs), "I1^2 cap I2^3 = I1^2 I2");
  // degree-bounded linear algebra on the generators of I1^2 I2 + modulus
  std::vector<Polynomial> g = ideal_product(ideal_power(I1, 2), I2).generators();
  g.push_back(mod.generators()[0]);
  o.expect(!oracle::linear_membership(f, g).member, "oracle finds x^2 in I1^2 I2");
  o.summary = "x^2 in I1^2 cap I2^3, not in I1^2 I2 modulo x^2 - z*y^3";
}

void monomial_suite(Outcome& o) {
  std::mt19937 rng(5150);
  const std::vector<std::string> all{"x", "y", "z", "t"};
  std::size_t discrepancies = 0;
  auto note = [&](bool ok, const std::string& what) {
    if (!ok) {
      ++discrepancies;
      o.expect(false, what);
    }
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 4;
    auto R = RingContext::make(std::vector<std::string>(all.begin(), all.begin() + static_cast<long>(n)));
    auto I = testsupport::random_monomial_ideal(rng, n, 4, 4);
    auto J = testsupport::random_monomial_ideal(rng, n, 4, 4);
    auto K = testsupport::random_monomial_ideal(rng, n, 4, 4);
    const std::string tag = "trial " + std::to_string(trial) + ": ";
    // intersection, sum, product
    note(same(mono_intersect(I, J), ideal_intersect(poly(I, R), poly(J, R))), tag + "intersection");
    note(same(mono_sum(I, J), ideal_sum(poly(I, R), poly(J, R))), tag + "sum");
    note(same(mono_product(I, J), ideal_product(poly(I, R), poly(J, R))), tag + "product");
    // distributivity
    auto dl = mono_intersect(mono_sum(I, J), K);
    auto dr = mono_sum(mono_intersect(I, K), mono_intersect(J, K));
    note(dl == dr, tag + "distributivity");
    note(same(dl, ideal_intersect(ideal_sum(poly(I, R), poly(J, R)), poly(K, R))), tag + "distributivity oracle");

    // disjoint supports: split the variables
    if (n >= 2) {
      std::vector<std::size_t> left;
      std::vector<std::size_t> right;
      for (std::size_t v = 0; v < n; ++v) (v < n / 2 ? left : right).push_back(v);
      auto A = testsupport::random_monomial_ideal(rng, n, 4, 3, &left);
      auto B = testsupport::random_monomial_ideal(rng, n, 4, 3, &right);
      auto rep = verify_disjoint_support(A, B);
      note(rep.holds(), tag + "disjoint support " + rep.detail);
      note(ideal_intersect(poly(A, R), poly(B, R)).equals(ideal_product(poly(A, R), poly(B, R))),
           tag + "disjoint support oracle");
    }

    // coroap on support-split instances over 4 variables
    {
      auto R4 = RingContext::make(all);
      std::vector<std::size_t> nv{0};
      std::vector<std::size_t> qv{1, 2, 3};
      if (trial % 2) nv = {0, 1}, qv = {2, 3};
      std::vector<MonomialIdeal> N;
      std::vector<MonomialIdeal> Q;
      int r = 1 + trial % 3;
      for (int i = 0; i < r; ++i) {
        N.push_back(testsupport::random_monomial_ideal(rng, 4, 3, 2, &nv));
        Q.push_back(testsupport::random_monomial_ideal(rng, 4, 3, 2, &qv));
      }
      auto Qx = testsupport::random_monomial_ideal(rng, 4, 3, 2, &qv);
      auto rep = verify_coroap(N, Q, Qx);
      note(rep.holds(), tag + "coroap " + rep.detail);
      Ideal lhs = Ideal::zero(R4);
      Ideal rhs = Ideal::zero(R4);
      for (int i = 0; i < r; ++i) {
        lhs = ideal_sum(lhs, ideal_product(poly(N[i], R4), poly(Q[i], R4)));
        rhs = ideal_sum(rhs, ideal_product(poly(N[i], R4), ideal_intersect(poly(Q[i], R4), poly(Qx, R4))));
      }
      note(ideal_intersect(lhs, poly(Qx, R4)).equals(rhs), tag + "coroap oracle");
    }

    // nested variable chains
    {
      auto R4 = RingContext::make(all);
      std::vector<std::vector<std::size_t>> chain;
      std::vector<std::size_t> vars;
      std::size_t len = 1 + trial % 3;
      for (std::size_t j = 0; j < len; ++j) {
        std::size_t add = 1 + rng() % 2;
        for (std::size_t a = 0; a < add && vars.size() < 4; ++a) vars.push_back(vars.size());
        chain.push_back(vars);
      }
      std::vector<int> a(len);
      std::vector<int> b(len);
      for (auto& x : a) x = static_cast<int>(rng() % 3);
      for (auto& x : b) x = static_cast<int>(rng() % 3);
      auto rep = verify_nested_powers(chain, a, b, 4);
      note(rep.holds(), tag + "nested powers " + rep.detail);
      std::vector<Ideal> Ip;
      for (const auto& c : chain) Ip.push_back(poly(MonomialIdeal::variables(4, c), R4));
      Ideal pa = Ideal::unit(R4);
      Ideal pb = Ideal::unit(R4);
      Ideal cap = Ideal::unit(R4);
      Ideal prod = Ideal::unit(R4);
      int sa = 0;
      int sb = 0;
      int prev = 0;
      for (std::size_t i = 0; i < len; ++i) {
        sa += a[i];
        sb += b[i];
        int m = std::max(sa, sb);
        pa = ideal_product(pa, ideal_power(Ip[i], static_cast<unsigned>(a[i])));
        pb = ideal_product(pb, ideal_power(Ip[i], static_cast<unsigned>(b[i])));
        cap = ideal_intersect(cap, ideal_power(Ip[i], static_cast<unsigned>(m)));
        prod = ideal_product(prod, ideal_power(Ip[i], static_cast<unsigned>(m - prev)));
        prev = m;
      }
      note(ideal_intersect(pa, pb).equals(cap), tag + "nested powers (1) oracle");
      note(cap.equals(prod), tag + "nested powers (2) oracle");
    }
  }
  if (o.problems.size() > 5) o.problems.resize(5);
  o.summary = "300 instances, " + std::to_string(discrepancies) + " discrepancies";
}

void linear_panelization(Outcome& o) {
  std::size_t checked = 0;
  for (int n = 2; n <= 3; ++n) {
    auto d = linear_an_datum(n);
    for (const auto& S : nontrivial_subsets(n)) {
      auto rep = verify_panelization(d, S);
      ++checked;
      o.expect(rep.verdict == PanelVerdict::Isomorphism,
               "n=" + std::to_string(n) + " S=" + set_to_string(S) + ": " + to_string(rep.verdict));
    }
  }
  auto d = linear_an_datum(3);
  PanelEvaluator ev(d);
  auto full = deformation_space(d);
  std::size_t equal = 0;
  for (const auto& p : enumerate_polyptych(3).panels) {
    auto rep = compare_with_panel(ev, full, p);
    equal += rep.relation == AlgebraRelation::Equal;
    o.expect(rep.relation == AlgebraRelation::Equal, p.to_string() + ": " + to_string(rep.relation));
  }
  o.summary = std::to_string(checked) + " panelizations isomorphic, " + std::to_string(equal) + "/19 panels equal";
}

void theta_existence(Outcome& o) {
  std::mt19937 rng(777);
  std::size_t comparisons = 0;
  std::size_t isos = 0;
  for (int trial = 0; trial < 50; ++trial) {
    int n = trial % 5 == 4 ? 1 : 2;
    auto d = testsupport::random_datum(rng, n);
    PanelEvaluator ev(d);
    auto full = deformation_space(d);
    for (const auto& p : enumerate_polyptych(n).panels) {
      auto rep = compare_with_panel(ev, full, p);
      ++comparisons;
      o.expect(rep.verdict != PanelVerdict::Unexpected,
               "trial " + std::to_string(trial) + " " + p.to_string() + ": " + to_string(rep.relation));
    }
    for (const auto& S : nontrivial_subsets(n)) {
      int maxS = *S.rbegin();
      bool k_above = true;
      for (int k = 1; k <= n; ++k) {
        if (!S.count(k)) k_above = k_above && k > maxS;
      }
      auto rep = verify_panelization(d, S);
      ++comparisons;
      o.expect(rep.verdict != PanelVerdict::Unexpected, "trial " + std::to_string(trial) + " S=" + set_to_string(S));
      if (k_above) {
        ++isos;
        o.expect(rep.verdict == PanelVerdict::Isomorphism,
                 "trial " + std::to_string(trial) + " S=" + set_to_string(S) + " with min K > max S: " +
                     to_string(rep.verdict) + " " + rep.witness_text);
      }
    }
  }
  o.summary = "50 data, " + std::to_string(comparisons) + " comparisons, " + std::to_string(isos) +
              " cases with min K > max S";
}

void strata_fingerprints(Outcome& o) {
  auto d2 = linear_an_datum(2);
  for (const std::set<int>& S : {std::set<int>{1}, std::set<int>{2}, std::set<int>{1, 2}}) {
    auto rep = verify_strata(d2, S, 6);
    o.expect(rep.supported && rep.surjective && rep.well_defined && rep.hilbert_agree,
             "n=2 S=" + set_to_string(S) + ": " + rep.detail);
    o.expect(rep.hilbert_lhs.size() == 7, "n=2 S=" + set_to_string(S) + ": hilbert function not up to degree 6");
  }
  auto d1 = linear_an_datum(1);
  auto rep = verify_strata(d1, {1}, 6);
  o.expect(rep.ok(), "n=1 affine bundle: " + rep.detail);
  o.summary = "n=2 S={1},{2},{1,2} and n=1 affine bundle agree to degree 6";
}

void assumption_checker(Outcome& o) {
  auto rm = check_assumption(remark_datum(), {2}, 1);
  o.expect(rm.verdict == AssumptionVerdict::Fail, "remark gives " + to_string(rm.verdict));
  o.expect(rm.item == 2 && rm.theta == std::vector<int>{2}, "remark witness " + rm.witness);
  o.expect(rm.witness == "theta=(2): (X^2) != (X^3)", "remark witness text " + rm.witness);
  std::size_t bounded = 0;
  for (int n = 2; n <= 3; ++n) {
    auto d = linear_an_datum(n);
    for (const auto& S : nontrivial_subsets(n)) {
      for (int k = 1; k <= n; ++k) {
        if (S.count(k)) continue;
        bool above = *S.rbegin() > k;
        AssumptionBounds b;
        b.theta_bound = 3;
        auto r = check_assumption(d, S, k, b);
        const std::string tag = "n=" + std::to_string(n) + " S=" + set_to_string(S) + " k=" + std::to_string(k);
        o.expect(r.verdict == (above ? AssumptionVerdict::BoundedPass : AssumptionVerdict::Vacuous),
                 tag + ": " + to_string(r.verdict) + " " + r.witness);
        bounded += r.verdict == AssumptionVerdict::BoundedPass;
        if (n == 2) {
          b.force_groebner = true;
          o.expect(check_assumption(d, S, k, b).verdict == r.verdict, tag + ": groebner route disagrees");
        }
      }
    }
  }
  o.summary = "remark fails at theta=(2), " + std::to_string(bounded) + " bounded passes on linear data";
}

void oracle_discipline(Outcome& o) {
  std::mt19937 rng(31337);
  std::size_t members = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto R = testsupport::ring_of(1 + trial % 3);
    std::vector<Polynomial> g;
    int k = 1 + trial % 3;
    for (int i = 0; i < k; ++i) g.push_back(testsupport::random_polynomial(rng, R, 2 + trial % 2, 3));
    Polynomial f(R);
    if (trial % 2 == 0) {
      for (const auto& gi : g) f += gi * testsupport::random_polynomial(rng, R, 4 - gi.degree() > 0 ? 4 - gi.degree() : 0, 2);
    } else {
      f = testsupport::random_polynomial(rng, R, 4, 4);
    }
    bool gb = ideal_member(f, Ideal(R, g));
    bool lin = oracle::linear_membership(f, g).member;
    members += gb;
    o.expect(gb == lin, "trial " + std::to_string(trial) + ": groebner " + std::to_string(gb) + ", oracle " +
                            std::to_string(lin) + " for " + f.to_string());
  }
  if (o.problems.size() > 5) o.problems.resize(5);
  o.summary = "300 instances agree (" + std::to_string(members) + " members)";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "polyptych counts", 5, polyptych_counts},
      {2, "remark datum reproduction", 30, remark_reproduction},
      {3, "monomial counterexample xyzt", 0, monomial_counterexample},
      {4, "counterexample modulo x^2 - z*y^3", 0, quotient_counterexample},
      {5, "monomial identity suite", 60, monomial_suite},
      {6, "linear data panelize isomorphically", 600, linear_panelization},
      {7, "full space maps into every panel", 0, theta_existence},
      {8, "strata fingerprints", 0, strata_fingerprints},
      {9, "assumption checker", 0, assumption_checker},
      {10, "membership agrees with the linear-algebra oracle", 0, oracle_discipline},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      std::ostringstream s;
      s << "took " << secs << " s, limit " << c.limit_seconds << " s";
      o.problems.push_back(s.str());
    }
    bool ok = o.problems.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " (" << std::fixed
              << std::setprecision(3) << secs << " s)";
    if (!o.summary.empty()) std::cout << ": " << o.summary;
    std::cout << '\n';
    for (const auto& p : o.problems) std::cout << "    " << p << '\n';
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
