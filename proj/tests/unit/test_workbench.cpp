#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "defspace/workbench_run.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/random_poly.hpp"

using namespace defspace;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(DEFSPACE_FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::size_t, std::size_t> error_position(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  FAIL("no parse error for: " << text);
  return {0, 0};
}

std::string error_message(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.message();
  }
  return "";
}

std::string mask_millis(const std::string& json) {
  return std::regex_replace(json, std::regex("\"millis\":[0-9.e+-]+"), "\"millis\":0");
}

}  // namespace

TEST_CASE("minimal document") {
  auto doc = parse_document("ring Q[x,t]; ideal M1=(x); divisor d1=t; datum D=chain(M1) divisors(d1);");
  REQUIRE(doc.data.size() == 1);
  CHECK(doc.ring->names() == std::vector<std::string>{"x", "t"});
  auto d = doc.datum("D");
  CHECK(d.size() == 1);
  CHECK(d.subspace(1).equals(Ideal(doc.ring, {parse_polynomial(doc.ring, "x")})));
  CHECK(d.divisors[0] == parse_polynomial(doc.ring, "t"));
  CHECK(validate_datum(d).ok());
}

TEST_CASE("remark document") {
  auto doc = parse_document(fixture("remark.dsw"));
  auto d = doc.datum("remark");
  const RingPtr& A = doc.ring;
  REQUIRE(d.size() == 2);
  CHECK(d.subspace(1).equals(Ideal(A, {parse_polynomial(A, "X^2")})));
  CHECK(d.subspace(2).equals(Ideal(A, {parse_polynomial(A, "X")})));
  CHECK(d.divisors[0] == parse_polynomial(A, "T1"));
  CHECK(d.divisors[1] == parse_polynomial(A, "T2"));
  CHECK(doc.checks.size() == 3);
  CHECK(doc == parse_document(remark_document_text() + "check verify remark s=1\ncheck verify remark s=2\n"
                                                      "check assume remark s=2 k=1 bound=3\n"));
}

TEST_CASE("modulus and comments") {
  auto doc = parse_document("# a quotient ring\nring Q[x, y, z]\nmodulus x^2 - z*y^3  # cusp-like\nideal I = (x, y)\n");
  REQUIRE(doc.modulus);
  CHECK(doc.modulus->to_string() == "-y^3*z + x^2");
  CHECK(doc.base().is_zero(parse_polynomial(doc.ring, "x^2 - z*y^3")));
  CHECK(doc.ideals.size() == 1);
}

TEST_CASE("parse errors carry positions") {
  CHECK(error_position("ring Q[x];\nideal M = (x") == std::pair<std::size_t, std::size_t>{2, 11});
  CHECK(error_message("ring Q[x];\nideal M = (x") == "unclosed '('");
  // unknown variable inside a polynomial, column points at it
  CHECK(error_position("ring Q[x, y];\nideal M = (x + 2*w)") == std::pair<std::size_t, std::size_t>{2, 18});
  CHECK(error_position("ideal M = (x)") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(error_position("ring Q[x, x]") == std::pair<std::size_t, std::size_t>{1, 11});
  CHECK(error_position("ring Q[x]\nring Q[y]") == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(error_position("ring Q[x]\nmodulus x\nmodulus x^2") == std::pair<std::size_t, std::size_t>{3, 8});
  CHECK(error_position("ring Q[x]\nfrobnicate x") == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(error_position("ring Q[x]\nideal M = ()") == std::pair<std::size_t, std::size_t>{2, 12});
  CHECK(error_position("ring Q[x]\nideal ring = (x)") == std::pair<std::size_t, std::size_t>{2, 7});
}

TEST_CASE("use before declare") {
  CHECK(error_message("ring Q[x,t]\ndivisor d = t\ndatum D = chain(M) divisors(d)") == "ideal 'M' is not declared");
  CHECK(error_position("ring Q[x,t]\ndivisor d = t\ndatum D = chain(M) divisors(d)") ==
        std::pair<std::size_t, std::size_t>{3, 17});
  CHECK(error_message("ring Q[x,t]\ndatum D = chain(M) divisors(d)\nideal M = (x)") == "ideal 'M' is not declared");
  CHECK(error_message("ring Q[x,t]\nideal M = (x)\ndatum D = chain(M) divisors(d)\ndivisor d = t") ==
        "divisor 'd' is not declared");
  CHECK(error_message("ring Q[x,t]\ncheck verify D s=1") == "datum 'D' is not declared");
  CHECK(error_message("ring Q[x,t]\nideal M = (x)\nideal M = (t)") == "'M' is already declared");
  CHECK(error_message("ring Q[x,t]\nideal M = (x)\ndivisor d = t\ndatum D = chain(M) divisors(d, d)") ==
        "chain has 1 ideals but 2 divisors");
}

TEST_CASE("check statements") {
  const std::string head = remark_document_text();
  auto doc = parse_document(head + "check assume remark s=2 k=1 bound=2 e=1\ncheck polyptych n=3\ncheck gb M1 M2\n");
  REQUIRE(doc.checks.size() == 3);
  CHECK(doc.checks[0].kind == "assume");
  CHECK(doc.checks[0].targets == std::vector<std::string>{"remark"});
  CHECK(*doc.checks[0].arg("s") == std::vector<int>{2});
  CHECK(*doc.checks[0].arg("bound") == std::vector<int>{2});
  CHECK_FALSE(doc.checks[1].arg("s"));
  CHECK(doc.checks[2].targets.size() == 2);
  CHECK(error_message(head + "check verify remark") == "check verify needs s=...");
  CHECK(error_message(head + "check verify remark k=1 s=1") == "check verify takes no argument 'k'");
  CHECK(error_message(head + "check verify M1 s=1") == "datum 'M1' is not declared");
  CHECK(error_message(head + "check mono M1") == "check mono expects at least 2 ideal name(s)");
  CHECK(error_message(head + "check bogus remark") == "unknown check 'bogus'");
  CHECK(error_message(head + "check verify remark s=1,x") == "expected integers for 's'");
  CHECK(error_message(head + "check polyptych remark n=2") == "check polyptych takes no targets");
}

TEST_CASE("parse_int_list") {
  CHECK(parse_int_list("1,3") == std::vector<int>{1, 3});
  CHECK(parse_int_list(" 2 ") == std::vector<int>{2});
  CHECK_THROWS_AS(parse_int_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("a"), std::invalid_argument);
}

TEST_CASE("render and reparse fixtures") {
  for (const char* name : {"remark.dsw", "linear2.dsw", "linear3.dsw", "monomial.dsw"}) {
    CAPTURE(name);
    auto doc = parse_document(fixture(name));
    std::string text = render_document(doc);
    auto again = parse_document(text);
    CHECK(again == doc);
    CHECK(render_document(again) == text);
  }
}

TEST_CASE("property: render and reparse random documents") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> nv(1, 4);
    std::vector<std::string> names;
    int vars = nv(rng);
    for (int i = 0; i < vars; ++i) names.push_back("v" + std::to_string(i));
    RingPtr R = RingContext::make(names);
    WorkbenchDocument doc;
    doc.ring = R;
    if (rng() % 3 == 0) doc.modulus = testsupport::random_polynomial(rng, R, 3, 3);
    int ni = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < ni; ++i) {
      IdealDecl d{"I" + std::to_string(i), {}};
      int ng = 1 + static_cast<int>(rng() % 3);
      for (int g = 0; g < ng; ++g) {
        Polynomial p = testsupport::random_polynomial(rng, R, 3, 4);
        if (p.is_zero()) p = Polynomial::variable(R, 0);
        d.generators.push_back(p);
      }
      doc.ideals.push_back(std::move(d));
    }
    int nd = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < nd; ++i) {
      doc.divisors.push_back({"d" + std::to_string(i), Polynomial::variable(R, rng() % vars)});
    }
    DatumDecl datum{"D", {}, {}};
    for (int i = 0; i < nd; ++i) {
      datum.chain.push_back(doc.ideals[rng() % ni].name);
      datum.divisors.push_back(doc.divisors[i].name);
    }
    doc.data.push_back(datum);
    doc.checks.push_back({"verify", {"D"}, {{"s", {1}}}});
    doc.checks.push_back({"gb", {"I0"}, {}});
    doc.checks.push_back({"polyptych", {}, {{"n", {2}}}});
    std::string text = render_document(doc);
    CAPTURE(text);
    auto again = parse_document(text);
    CHECK(again == doc);
  }
}

TEST_CASE("emit_json") {
  CHECK(emit_json({}) == "[]");
  CheckResult pass{"gb M", "pass", std::nullopt, 1.5, {"x"}};
  CHECK(emit_json({pass}) == R"([{"check":"gb M","verdict":"pass","millis":1.5}])");
  auto results = run_verify(parse_document(remark_document_text()), "remark", {2});
  REQUIRE(results.size() == 1);
  auto parsed = nlohmann::ordered_json::parse(emit_json(results));
  REQUIRE(parsed.size() == 1);
  std::vector<std::string> keys;
  for (auto it = parsed[0].begin(); it != parsed[0].end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"check", "verdict", "witness", "millis"});
  CHECK(parsed[0]["verdict"] == "morphism-only");
  CHECK(parsed[0]["witness"] == "X^2/(T1*T2^2)");
}

TEST_CASE("running the remark checks") {
  auto doc = parse_document(fixture("remark.dsw"));
  auto results = run_checks(doc);
  REQUIRE(results.size() == 3);
  CHECK(results[0].verdict == "pass");
  CHECK(results[1].verdict == "morphism-only");
  CHECK(*results[1].witness == "X^2/(T1*T2^2)");
  CHECK(results[2].verdict == "fail");
  CHECK(*results[2].witness == "theta=(2): (X^2) != (X^3)");
  CHECK(exit_code(results) == 1);
  CHECK(exit_code({results[0], results[1]}) == 0);
  for (const auto& r : results) {
    if (r.verdict == "fail" || r.verdict == "morphism-only") CHECK(r.witness.has_value());
  }
  auto strata = run_strata(doc, "remark", {1});
  CHECK(strata[0].verdict == "unsupported");
  CHECK(exit_code(strata) == 0);
}

TEST_CASE("output is deterministic up to timings") {
  auto doc = parse_document(fixture("linear2.dsw"));
  std::string a = mask_millis(emit_json(run_checks(doc)));
  std::string b = mask_millis(emit_json(run_checks(parse_document(render_document(doc)))));
  CHECK(a == b);
  auto results = run_checks(doc);
  for (const auto& r : results) {
    CAPTURE(r.check);
    CHECK(r.verdict != "fail");
  }
}

TEST_CASE("gb, mono and dilatate") {
  auto doc = parse_document(fixture("monomial.dsw"));
  auto gb = run_gb(doc, {"I2"});
  REQUIRE(gb.size() == 1);
  CHECK(gb[0].detail.size() == 3);
  auto mono = run_mono(doc, {"I1", "I2", "J"});
  for (const auto& r : mono) {
    CAPTURE(r.check);
    CHECK(r.verdict == "pass");
  }
  // the disjoint-support identity only applies to I1, J
  int disjoint = 0;
  for (const auto& r : mono) disjoint += r.check.find("disjoint") != std::string::npos;
  CHECK(disjoint == 1);

  auto mixed = parse_document("ring Q[x,y]\nideal A = (x + y)\nideal B = (x)\n");
  auto m = run_mono(mixed, {"A", "B"});
  REQUIRE(m.size() == 1);
  CHECK(m[0].verdict == "unsupported");

  auto dil = run_dilatate(parse_document(remark_document_text()), "remark");
  REQUIRE(dil.size() == 1);
  CHECK(dil[0].verdict == "pass");
  CHECK(dil[0].detail.size() >= 2);

  auto bad = parse_document("ring Q[x,t]\nideal M = (x*t)\ndivisor d = t\ndatum D = chain(M) divisors(d)\n");
  auto v = run_dilatate(bad, "D");
  CHECK(v[0].verdict == "fail");
  REQUIRE(v[0].witness);
  CHECK(v[0].witness->find("invalid datum") == 0);
}

TEST_CASE("polyptych and selftest") {
  std::ostringstream dot;
  auto p = run_polyptych(3, &dot);
  REQUIRE(p.size() == 1);
  CHECK(p[0].verdict == "pass");
  CHECK(p[0].detail.front() == "19 panels");
  CHECK(dot.str().rfind("digraph polyptych {", 0) == 0);
  auto st = run_selftest();
  CHECK(st.size() >= 9);
  for (const auto& r : st) {
    CAPTURE(r.check);
    CHECK(r.verdict == "pass");
  }
  CHECK(exit_code(st) == 0);
}
