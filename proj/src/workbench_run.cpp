#include "defspace/workbench_run.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "defspace/monomial_ideal.hpp"
#include "json.hpp"

namespace defspace {

int exit_code(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (r.verdict == "fail") return 1;
  }
  return 0;
}

std::string emit_json(const std::vector<CheckResult>& results) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json rec;
    rec["check"] = r.check;
    rec["verdict"] = r.verdict;
    if (r.witness) rec["witness"] = *r.witness;
    rec["millis"] = r.millis;
    out.push_back(std::move(rec));
  }
  return out.dump();
}

void print_text(std::ostream& out, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    out << '[' << r.verdict << "] " << r.check << " (" << r.millis << " ms)\n";
    if (r.witness) out << "    witness: " << *r.witness << '\n';
    for (const auto& line : r.detail) out << "    " << line << '\n';
  }
}

namespace {

// Runs body, fills in the timing, and turns exceptions into a failed record.
CheckResult timed(const std::string& name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.check = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.verdict = "fail";
    r.witness = e.what();
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.millis = std::round(ms * 1000) / 1000;
  return r;
}

std::string join_polys(const std::vector<Polynomial>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].to_string();
  return s;
}

// Some generator of a outside b, or nullopt.
std::optional<Polynomial> escapee(const Ideal& a, const Ideal& b) {
  for (const auto& g : a.basis()) {
    if (!b.contains(g)) return g;
  }
  return std::nullopt;
}

std::string datum_label(const std::string& datum, const std::set<int>& S) { return datum + " S=" + set_to_string(S); }

void reject_bad_datum(const DeformationDatum& d) {
  auto rep = validate_datum(d);
  if (!rep.ok()) throw InvalidDatum("invalid datum: " + rep.first_failure());
}

}  // namespace

std::vector<CheckResult> run_gb(const WorkbenchDocument& doc, const std::vector<std::string>& ideals) {
  std::vector<CheckResult> out;
  for (const auto& name : ideals) {
    out.push_back(timed("gb " + name, [&](CheckResult& r) {
      Ideal I = ideal_sum(doc.ideal(name), doc.base().modulus);
      r.verdict = "pass";
      for (const auto& g : I.basis()) r.detail.push_back(g.to_string());
      if (I.basis().empty()) r.detail.push_back("0");
    }));
  }
  return out;
}

std::vector<CheckResult> run_mono(const WorkbenchDocument& doc, const std::vector<std::string>& ideals) {
  std::vector<CheckResult> out;
  const auto& names = doc.ring->names();
  auto mono_of = [&](const std::string& n) -> std::optional<MonomialIdeal> {
    try {
      return from_polynomial_ideal(doc.ideal(n));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  };
  auto monomial_text = [&](const ExponentVector& e) { return Polynomial::monomial(doc.ring, Monomial(e)).to_string(); };
  for (std::size_t a = 0; a < ideals.size(); ++a) {
    for (std::size_t b = a + 1; b < ideals.size(); ++b) {
      const std::string pair = ideals[a] + "," + ideals[b];
      auto I = mono_of(ideals[a]);
      auto J = mono_of(ideals[b]);
      if (doc.modulus || !I || !J) {
        out.push_back(timed("mono " + pair, [&](CheckResult& r) {
          r.verdict = "unsupported";
          r.witness = doc.modulus ? "document has a modulus" : "not a monomial ideal";
        }));
        continue;
      }
      const Ideal PI = doc.ideal(ideals[a]);
      const Ideal PJ = doc.ideal(ideals[b]);
      struct Op {
        const char* label;
        MonomialIdeal (*mono)(const MonomialIdeal&, const MonomialIdeal&);
        Ideal (*poly)(const Ideal&, const Ideal&);
      };
      const Op ops[] = {{"intersect", mono_intersect, ideal_intersect},
                        {"product", mono_product, ideal_product},
                        {"sum", mono_sum, ideal_sum}};
      for (const auto& op : ops) {
        out.push_back(timed("mono " + pair + " " + op.label, [&](CheckResult& r) {
          MonomialIdeal m = op.mono(*I, *J);
          Ideal lhs = to_polynomial_ideal(m, doc.ring);
          Ideal rhs = op.poly(PI, PJ);
          auto w = escapee(lhs, rhs);
          if (!w) w = escapee(rhs, lhs);
          r.verdict = w ? "fail" : "pass";
          if (w) r.witness = w->to_string();
          r.detail.push_back(m.to_string(names));
        }));
      }
      bool disjoint = true;
      for (auto i : support(*I)) {
        for (auto j : support(*J)) disjoint = disjoint && i != j;
      }
      if (disjoint) {
        out.push_back(timed("mono " + pair + " disjoint-support", [&](CheckResult& r) {
          auto rep = verify_disjoint_support(*I, *J);
          r.verdict = rep.holds() ? "pass" : "fail";
          if (rep.witness) r.witness = monomial_text(*rep.witness);
          if (!rep.holds() && !r.witness) r.witness = rep.detail;
        }));
      }
    }
  }
  return out;
}

std::vector<CheckResult> run_dilatate(const WorkbenchDocument& doc, const std::string& datum) {
  return {timed("dilatate " + datum, [&](CheckResult& r) {
    DeformationDatum d = doc.datum(datum);
    reject_bad_datum(d);
    PresentedAlgebra alg = deformation_space(d);
    r.verdict = "pass";
    for (std::size_t j = 0; j < alg.new_vars().size(); ++j) {
      r.detail.push_back(alg.new_vars()[j] + " = " + to_string(alg.embedding()[j], alg.divisors()));
    }
    r.detail.push_back("relations: " + join_polys(alg.relations().basis()));
  })};
}

std::vector<CheckResult> run_verify(const WorkbenchDocument& doc, const std::string& datum, const std::set<int>& S) {
  return {timed("deform verify " + datum_label(datum, S), [&](CheckResult& r) {
    DeformationDatum d = doc.datum(datum);
    reject_bad_datum(d);
    PanelizationReport rep = verify_panelization(d, S);
    r.detail.push_back("panel " + rep.panel.to_string());
    switch (rep.verdict) {
      case PanelVerdict::Isomorphism:
        r.verdict = "pass";
        r.detail.push_back("isomorphism");
        break;
      case PanelVerdict::MorphismOnly:
        r.verdict = "morphism-only";
        r.witness = rep.witness_text;
        break;
      case PanelVerdict::Unexpected:
        r.verdict = "fail";
        r.witness = rep.witness_text.empty() ? to_string(rep.relation) : rep.witness_text;
        r.detail.push_back("unexpected: " + to_string(rep.relation));
        break;
    }
  })};
}

std::vector<CheckResult> run_assume(const WorkbenchDocument& doc, const std::string& datum, const std::set<int>& S,
                                    int k, const AssumptionBounds& bounds) {
  return {timed("deform assume " + datum_label(datum, S) + " k=" + std::to_string(k), [&](CheckResult& r) {
    DeformationDatum d = doc.datum(datum);
    reject_bad_datum(d);
    AssumptionReport rep = check_assumption(d, S, k, bounds);
    r.detail.push_back(std::to_string(rep.instances) + " instances, theta bound " + std::to_string(bounds.theta_bound));
    switch (rep.verdict) {
      case AssumptionVerdict::BoundedPass:
        r.verdict = "bounded-pass";
        break;
      case AssumptionVerdict::Vacuous:
        r.verdict = "pass";
        r.detail.push_back("vacuous: no index of S above k");
        break;
      case AssumptionVerdict::Fail:
        r.verdict = "fail";
        r.witness = rep.witness;
        r.detail.push_back("item (" + std::to_string(rep.item) + ") fails");
        break;
    }
  })};
}

std::vector<CheckResult> run_strata(const WorkbenchDocument& doc, const std::string& datum, const std::set<int>& S,
                                    int degree) {
  return {timed("deform strata " + datum_label(datum, S), [&](CheckResult& r) {
    DeformationDatum d = doc.datum(datum);
    reject_bad_datum(d);
    StrataReport rep = verify_strata(d, S, degree);
    if (!rep.supported) {
      r.verdict = "unsupported";
      r.witness = rep.detail;
      return;
    }
    auto list = [](const std::vector<long long>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    r.detail.push_back("formula " + rep.formula);
    r.detail.push_back("hilbert " + list(rep.hilbert_lhs) + " | " + list(rep.hilbert_rhs));
    r.detail.push_back(std::string("kernel ") + (rep.ideals_equal ? "equal" : "differs"));
    if (rep.ok()) {
      r.verdict = "pass";
    } else {
      r.verdict = "fail";
      if (!rep.well_defined) {
        r.witness = "map not well defined";
      } else if (!rep.surjective) {
        r.witness = "no surjection witness";
      } else {
        r.witness = "hilbert " + list(rep.hilbert_lhs) + " != " + list(rep.hilbert_rhs);
      }
    }
  })};
}

std::vector<CheckResult> run_polyptych(int n, std::ostream* dot) {
  return {timed("polyptych n=" + std::to_string(n), [&](CheckResult& r) {
    if (n < 0) throw std::invalid_argument("polyptych: n must be nonnegative");
    Polyptych P = enumerate_polyptych(n);
    r.detail.push_back(std::to_string(P.panels.size()) + " panels");
    for (std::size_t i = 0; i < P.panels.size(); ++i) {
      r.detail.push_back("p" + std::to_string(i + 1) + ": " + P.panels[i].to_string());
    }
    if (dot) *dot << emit_dot(P);
    r.verdict = is_acyclic(P) ? "pass" : "fail";
    if (r.verdict == "fail") r.witness = "panelization graph has a cycle";
  })};
}

std::vector<CheckResult> run_checks(const WorkbenchDocument& doc) {
  std::vector<CheckResult> out;
  auto set_of = [](const std::vector<int>& v) { return std::set<int>(v.begin(), v.end()); };
  auto one = [](const CheckRequest& c, const std::string& key, int fallback) {
    auto v = c.arg(key);
    return v && !v->empty() ? v->front() : fallback;
  };
  for (const auto& c : doc.checks) {
    std::vector<CheckResult> part;
    if (c.kind == "gb") {
      part = run_gb(doc, c.targets);
    } else if (c.kind == "mono") {
      part = run_mono(doc, c.targets);
    } else if (c.kind == "dilatate") {
      part = run_dilatate(doc, c.targets.at(0));
    } else if (c.kind == "verify") {
      part = run_verify(doc, c.targets.at(0), set_of(*c.arg("s")));
    } else if (c.kind == "assume") {
      AssumptionBounds b;
      b.theta_bound = one(c, "bound", b.theta_bound);
      b.e_bound = one(c, "e", b.e_bound);
      part = run_assume(doc, c.targets.at(0), set_of(*c.arg("s")), one(c, "k", 1), b);
    } else if (c.kind == "strata") {
      part = run_strata(doc, c.targets.at(0), set_of(*c.arg("s")), one(c, "degree", 6));
    } else if (c.kind == "polyptych") {
      part = run_polyptych(one(c, "n", 0));
    } else {
      throw std::invalid_argument("unknown check " + c.kind);
    }
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

const std::string& remark_document_text() {
  static const std::string text =
      "ring Q[X, T1, T2];\n"
      "ideal M1 = (X^2);\n"
      "ideal M2 = (X);\n"
      "divisor d1 = T1;\n"
      "divisor d2 = T2;\n"
      "datum remark = chain(M1, M2) divisors(d1, d2);\n";
  return text;
}

namespace {

// A reference computation: `expect` returns an empty string on success and a
// description of what was observed otherwise.
CheckResult reference(const std::string& name, const std::function<std::string(CheckResult&)>& expect) {
  return timed("selftest " + name, [&](CheckResult& r) {
    std::string problem = expect(r);
    r.verdict = problem.empty() ? "pass" : "fail";
    if (!problem.empty()) r.witness = problem;
  });
}

Ideal ideal_of(const RingPtr& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(parse_polynomial(R, g));
  return Ideal(R, ps);
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  std::vector<CheckResult> out;

  out.push_back(reference("monomial counterexample xyzt", [](CheckResult& r) -> std::string {
    auto R = RingContext::make({"x", "y", "z", "t"});
    Ideal I1 = ideal_of(R, {"y*z"});
    Ideal I2 = ideal_of(R, {"x*y", "y*z", "z*t"});
    MonomialIdeal m1 = from_polynomial_ideal(I1);
    MonomialIdeal m2 = from_polynomial_ideal(I2);
    ExponentVector e{1, 1, 1, 1};
    Polynomial f = parse_polynomial(R, "x*y*z*t");
    r.witness = f.to_string();
    bool mono_in = mono_member(e, mono_intersect(m1, mono_power(m2, 2)));
    bool mono_out = !mono_member(e, mono_product(m1, m2));
    bool gb_in = ideal_intersect(I1, ideal_power(I2, 2)).contains(f);
    bool gb_out = !ideal_product(I1, I2).contains(f);
    if (mono_in && mono_out && gb_in && gb_out) return "";
    return "membership in I1 cap I2^2 / not in I1 I2: monomial " + std::to_string(mono_in) + "/" +
           std::to_string(mono_out) + ", groebner " + std::to_string(gb_in) + "/" + std::to_string(gb_out);
  }));

  out.push_back(reference("counterexample x^2 modulo x^2 - z*y^3", [](CheckResult& r) -> std::string {
    auto R = RingContext::make({"x", "y", "z"});
    Ideal mod = ideal_of(R, {"x^2 - z*y^3"});
    Ideal I1 = ideal_of(R, {"x"});
    Ideal I2 = ideal_of(R, {"x", "y"});
    Polynomial f = parse_polynomial(R, "x^2");
    r.witness = f.to_string();
    Ideal lhs = ideal_intersect(ideal_sum(ideal_power(I1, 2), mod), ideal_sum(ideal_power(I2, 3), mod));
    Ideal rhs = ideal_sum(ideal_product(ideal_power(I1, 2), I2), mod);
    if (lhs.contains(f) && !rhs.contains(f)) return "";
    return "x^2 in I1^2 cap I2^3: " + std::to_string(lhs.contains(f)) + ", in I1^2 I2: " + std::to_string(rhs.contains(f));
  }));

  const WorkbenchDocument remark = parse_document(remark_document_text());
  const DeformationDatum rd = remark.datum("remark");

  out.push_back(reference("remark S={1} isomorphism", [&](CheckResult&) -> std::string {
    auto rep = verify_panelization(rd, {1});
    if (rep.verdict == PanelVerdict::Isomorphism) return "";
    return to_string(rep.verdict) + " " + rep.witness_text;
  }));

  out.push_back(reference("remark S={2} morphism-only", [&](CheckResult& r) -> std::string {
    auto rep = verify_panelization(rd, {2});
    r.witness = rep.witness_text;
    if (rep.verdict == PanelVerdict::MorphismOnly && rep.witness_text == "X^2/(T1*T2^2)") return "";
    return to_string(rep.verdict) + " " + rep.witness_text;
  }));

  out.push_back(reference("remark kernel contains X^2/T2^2", [&](CheckResult& r) -> std::string {
    const RingPtr& A = remark.ring;
    MultiCenter mc(A, rd.divisors);
    mc.add(ideal_of(A, {"X"}), {0, 1});
    KernelReport k = kernel_modulo(rd.base, mc, ideal_of(A, {"X^2"}), 2);
    PresentedAlgebra alg = dilatation_presentation(rd.base, mc);
    Fraction f{parse_polynomial(A, "X^2"), {0, 2}};
    r.witness = to_string(f, rd.divisors);
    auto loc = alg.locate(f);
    if (!loc.member) return "X^2/T2^2 is not in the dilatation";
    if (!k.exact.contains(loc.expression)) return "kernel misses " + loc.expression.to_string();
    return "";
  }));

  out.push_back(reference("remark assumption fails at theta=(2)", [&](CheckResult& r) -> std::string {
    auto rep = check_assumption(rd, {2}, 1);
    r.witness = rep.witness;
    if (rep.verdict == AssumptionVerdict::Fail && rep.item == 2 && rep.theta == std::vector<int>{2}) return "";
    return to_string(rep.verdict) + " " + rep.witness;
  }));

  for (auto [n, expected] : {std::pair{2, 3}, std::pair{3, 19}}) {
    out.push_back(reference("polyptych n=" + std::to_string(n) + " has " + std::to_string(expected) + " panels",
                            [n, expected](CheckResult&) -> std::string {
                              auto got = enumerate_polyptych(n).panels.size();
                              if (got == static_cast<std::size_t>(expected)) return "";
                              return std::to_string(got) + " panels";
                            }));
  }

  out.push_back(reference("linear n=2 datum panels agree", [](CheckResult&) -> std::string {
    DeformationDatum d = linear_an_datum(2);
    for (const std::set<int>& S : {std::set<int>{1}, std::set<int>{2}}) {
      auto rep = verify_panelization(d, S);
      if (rep.verdict != PanelVerdict::Isomorphism) return "S=" + set_to_string(S) + ": " + to_string(rep.verdict);
    }
    PanelEvaluator ev(d);
    PresentedAlgebra full = deformation_space(d);
    for (const auto& p : enumerate_polyptych(2).panels) {
      auto rep = compare_with_panel(ev, full, p);
      if (rep.verdict != PanelVerdict::Isomorphism) return p.to_string() + ": " + to_string(rep.verdict);
    }
    return "";
  }));

  return out;
}

}  // namespace defspace
