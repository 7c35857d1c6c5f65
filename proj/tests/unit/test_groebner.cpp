#include <random>

#include "defspace/groebner.hpp"
#include "doctest.h"
#include "oracle/linear_membership.hpp"
#include "support/random_poly.hpp"

using namespace defspace;

namespace {

Polynomial P(const RingPtr& r, const char* s) { return parse_polynomial(r, s); }

Ideal I(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> v;
  for (const char* g : gens) v.push_back(P(r, g));
  return Ideal(r, v);
}

std::vector<std::string> strings(const std::vector<Polynomial>& v) {
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

// Checks the defining properties of a reduced basis directly.
void check_reduced(const std::vector<Polynomial>& G, const MonomialOrder& o) {
  for (std::size_t i = 0; i < G.size(); ++i) {
    CHECK(G[i].leading_term(o).coefficient == 1);
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j) continue;
      const auto& lead = G[j].leading_term(o).monomial;
      for (const auto& t : G[i].terms()) CHECK_FALSE(lead.divides(t.monomial));
    }
  }
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      const auto& a = G[i].leading_term(o);
      const auto& b = G[j].leading_term(o);
      auto l = monomial_lcm(a.monomial, b.monomial);
      auto s = G[i].multiply_monomial(l / a.monomial, 1) - G[j].multiply_monomial(l / b.monomial, 1);
      CHECK(normal_form(s, G, o).is_zero());
    }
  }
}

}  // namespace

TEST_CASE("groebner_basis examples") {
  auto r = RingContext::make({"x"});
  auto G = groebner_basis(std::vector{P(r, "x^2-1"), P(r, "x-1")}, MonomialOrder::lex());
  CHECK(strings(G) == std::vector<std::string>{"x - 1"});
  auto r2 = RingContext::make({"x", "y"});
  CHECK(strings(groebner_basis(std::vector{P(r2, "x")}, MonomialOrder::grevlex())) == std::vector<std::string>{"x"});
  auto r3 = RingContext::make({"x", "t", "y"});
  CHECK(strings(groebner_basis(std::vector{P(r3, "t*y - x")}, MonomialOrder::grevlex())) ==
        std::vector<std::string>{"t*y - x"});
  CHECK(groebner_basis(std::vector<Polynomial>{}, MonomialOrder::grevlex()).empty());
  CHECK(strings(groebner_basis(std::vector{P(r2, "x*y-1"), P(r2, "x")}, MonomialOrder::grevlex())) ==
        std::vector<std::string>{"1"});
}

TEST_CASE("groebner_basis is reduced on a textbook system") {
  auto r = RingContext::make({"x", "y", "z"});
  std::vector gens{P(r, "x^2 + y*z - 2"), P(r, "x*y - z^2 + 1"), P(r, "y^3 - x*z")};
  for (auto o : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::block(1)}) {
    auto G = groebner_basis(gens, o);
    check_reduced(G, o);
    for (const auto& g : gens) CHECK(normal_form(g, G, o).is_zero());
  }
}

TEST_CASE("ideal_member examples") {
  auto r = RingContext::make({"x", "y", "z", "t"});
  CHECK(ideal_member(Polynomial(r), I(r, {"x"})));
  auto I1 = I(r, {"y*z"});
  auto I2 = I(r, {"x*y", "y*z", "z*t"});
  auto xyzt = P(r, "x*y*z*t");
  CHECK_FALSE(ideal_member(xyzt, ideal_product(I1, I2)));
  CHECK(ideal_member(xyzt, ideal_intersect(I1, ideal_power(I2, 2))));
  auto other = RingContext::make({"a"});
  CHECK_THROWS_AS(ideal_member(Polynomial::variable(other, 0), I1), RingMismatch);
}

TEST_CASE("ideal_intersect examples") {
  auto r = RingContext::make({"x", "y", "z", "t"});
  auto J = I(r, {"x^2", "y"});
  CHECK(ideal_intersect(J, Ideal::unit(r)).equals(J));
  CHECK(ideal_intersect(I(r, {"x^2"}), I(r, {"x^2"})).equals(I(r, {"x^2"})));
  // pairwise lcm oracle: lcm(yz,xy)=xyz, lcm(yz,yz)=yz, lcm(yz,zt)=yzt
  auto lcm_oracle = I(r, {"x*y*z", "y*z", "y*z*t"});
  CHECK(ideal_intersect(I(r, {"y*z"}), I(r, {"x*y", "y*z", "z*t"})).equals(lcm_oracle));
  CHECK(ideal_intersect(J, Ideal::zero(r)).is_zero());
}

TEST_CASE("ideal_quotient examples") {
  auto r = RingContext::make({"x", "t"});
  CHECK(ideal_quotient(I(r, {"x^2"}), P(r, "x")).equals(I(r, {"x"})));
  CHECK(ideal_quotient(I(r, {"x^2"}), P(r, "t")).equals(I(r, {"x^2"})));
  auto r3 = RingContext::make({"x", "y", "z"});
  CHECK(ideal_quotient(I(r3, {"x^2 - z*y^3", "x"}), P(r3, "x")).is_unit());
  CHECK_THROWS_AS(ideal_quotient(I(r, {"x"}), Polynomial(r)), std::invalid_argument);
}

TEST_CASE("saturate examples") {
  auto r = RingContext::make({"x", "t", "y"});
  CHECK(saturate(I(r, {"x*t"}), P(r, "t")).equals(I(r, {"x"})));
  CHECK(saturate(I(r, {"t*y - x"}), P(r, "t")).equals(I(r, {"t*y - x"})));
  CHECK(saturate(I(r, {"t^2*y - t*x"}), P(r, "t")).equals(I(r, {"t*y - x"})));
  CHECK_THROWS_AS(saturate(I(r, {"x"}), Polynomial(r)), std::invalid_argument);
}

TEST_CASE("eliminate examples") {
  auto r = RingContext::make({"t", "x", "y"});
  std::vector<std::string> t{"t"};
  CHECK(eliminate(I(r, {"t - x^2"}), t).is_zero());
  CHECK(eliminate(I(r, {"t - x^2", "t - y"}), t).equals(I(r, {"x^2 - y"})));
  auto r2 = RingContext::make({"x", "y", "t", "u"});
  std::vector<std::string> tu{"t", "u"};
  CHECK(eliminate(I(r2, {"t*y - x", "1 - t*u"}), tu).is_zero());
  std::vector<std::string> bad{"q"};
  CHECK_THROWS_AS(eliminate(I(r, {"x"}), bad), std::invalid_argument);
}

TEST_CASE("ring_map_kernel examples") {
  auto ry = RingContext::make({"y"});
  auto rx = RingContext::make({"x"});
  std::vector<Polynomial> img{P(rx, "x")};
  CHECK(ring_map_kernel(QuotientRing(ry), QuotientRing(rx), img).is_zero());
  QuotientRing target(rx, I(rx, {"x^2"}));
  CHECK(ring_map_kernel(QuotientRing(ry), target, img).equals(I(ry, {"y^2"})));
  // same variable names on both sides
  std::vector<Polynomial> img2{P(rx, "x^3")};
  CHECK(ring_map_kernel(QuotientRing(rx), QuotientRing(rx), img2).is_zero());
  std::vector<Polynomial> none;
  CHECK_THROWS_AS(ring_map_kernel(QuotientRing(ry), target, none), RingMismatch);
}

TEST_CASE("subalgebra_member examples") {
  auto r = RingContext::make({"x", "y"});
  std::vector gens{P(r, "x + y"), P(r, "x*y")};
  auto m = subalgebra_member(P(r, "(x+y)*x*y"), gens, QuotientRing(r));
  CHECK(m.member);
  CHECK(m.expression.substitute(gens, r) == P(r, "(x+y)*x*y"));
  CHECK(subalgebra_member(P(r, "x^2 + y^2"), gens, QuotientRing(r)).member);
  auto rx = RingContext::make({"x"});
  std::vector sq{P(rx, "x^2")};
  CHECK_FALSE(subalgebra_member(P(rx, "x"), sq, QuotientRing(rx)).member);

  // X^2/(T1*T2^2) against Q[X/T2, X^2/(T1*T2), T1, T2] in the localization
  auto L = RingContext::make({"X", "T1", "T2", "u1", "u2"});
  QuotientRing loc(L, I(L, {"1 - u1*T1", "1 - u2*T2"}));
  std::vector A1{P(L, "X*u2"), P(L, "X^2*u1*u2"), P(L, "T1"), P(L, "T2")};
  CHECK_FALSE(subalgebra_member(P(L, "X^2*u1*u2^2"), A1, loc).member);
  CHECK(subalgebra_member(P(L, "X^2*u2^2"), A1, loc).member);
}

TEST_CASE("check_regular_sequence examples") {
  auto r = RingContext::make({"x", "y"});
  std::vector xy{P(r, "x"), P(r, "y")};
  CHECK(check_regular_sequence(xy, Ideal::zero(r)));
  std::vector xx{P(r, "x"), P(r, "x")};
  CHECK_FALSE(check_regular_sequence(xx, Ideal::zero(r)));
  auto r3 = RingContext::make({"x", "y", "z"});
  std::vector bars{P(r3, "x"), P(r3, "y")};
  auto modulus = I(r3, {"x^2 - z*y^3"});
  // (x, z*y^3) : y contains z*y^2, which is not in (x, z*y^3)
  CHECK(ideal_member(P(r3, "z*y^2"), ideal_quotient(I(r3, {"x^2 - z*y^3", "x"}), P(r3, "y"))));
  CHECK_FALSE(check_regular_sequence(bars, modulus));
}

TEST_CASE("hilbert_function examples") {
  auto r = RingContext::make({"x", "y"});
  CHECK(hilbert_function(Ideal::zero(r), 3) == std::vector<long long>{1, 2, 3, 4});
  CHECK(hilbert_function(I(r, {"x"}), 3) == std::vector<long long>{1, 1, 1, 1});
  // brute-force count of monomials x^a y^b avoiding x^2 | m and x*y | m
  std::vector<long long> expected;
  for (int d = 0; d <= 3; ++d) {
    long long c = 0;
    for (int a = 0; a <= d; ++a) {
      int b = d - a;
      if (a >= 2 || (a >= 1 && b >= 1)) continue;
      ++c;
    }
    expected.push_back(c);
  }
  CHECK(hilbert_function(I(r, {"x^2", "x*y"}), 3) == expected);
  CHECK(hilbert_function(Ideal::unit(r), 2) == std::vector<long long>{0, 0, 0});
}

TEST_CASE("property: reduced basis does not depend on the generating set") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    auto r = testsupport::ring_of(1 + trial % 3);
    std::vector<Polynomial> gens;
    int k = 1 + trial % 3;
    for (int i = 0; i < k; ++i) gens.push_back(testsupport::random_polynomial(rng, r, 4, 3, true));
    std::vector<Polynomial> other = gens;
    for (std::size_t i = 0; i < other.size(); ++i) {
      auto h = testsupport::random_polynomial(rng, r, 2, 2, true);
      other[i] = other[i] * testsupport::random_coefficient(rng) + h * gens[(i + 1) % gens.size()];
      if (other[i].is_zero()) other[i] = gens[i];
    }
    if (other.size() == 1) other[0] = gens[0] * testsupport::random_coefficient(rng);
    other.push_back(gens[0] * testsupport::random_polynomial(rng, r, 2, 2));
    auto o = MonomialOrder::grevlex();
    auto G1 = groebner_basis(gens, o);
    auto G2 = groebner_basis(other, o);
    // `other` generates a subideal; it is the whole ideal when the first
    // generator survives, which we check before comparing
    bool same = true;
    for (const auto& g : gens) same = same && normal_form(g, G2, o).is_zero();
    if (same) CHECK(G1 == G2);
    check_reduced(G1, o);
  }
}

TEST_CASE("property: membership agrees with the linear-algebra oracle") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    auto r = testsupport::ring_of(1 + trial % 3);
    std::vector<Polynomial> gens;
    int k = 1 + trial % 2;
    for (int i = 0; i < k; ++i) gens.push_back(testsupport::random_polynomial(rng, r, 3, 3));
    Polynomial f(r);
    if (trial % 2 == 0) {
      for (const auto& g : gens) f += g * testsupport::random_polynomial(rng, r, 1, 2);
    } else {
      f = testsupport::random_polynomial(rng, r, 3, 3);
    }
    Ideal ideal(r, gens);
    CHECK(ideal_member(f, ideal) == oracle::linear_membership(f, gens).member);
  }
}

TEST_CASE("property: intersection membership is conjunctive") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    auto r = testsupport::ring_of(2 + trial % 2);
    Ideal A(r, {testsupport::random_polynomial(rng, r, 2, 2), testsupport::random_polynomial(rng, r, 2, 2)});
    Ideal B(r, {testsupport::random_polynomial(rng, r, 2, 2)});
    Ideal C = ideal_intersect(A, B);
    std::vector<Polynomial> probes{A.generators()[0] * B.generators()[0], A.generators()[1],
                                   B.generators()[0] * testsupport::random_polynomial(rng, r, 1, 2),
                                   testsupport::random_polynomial(rng, r, 3, 3)};
    for (const auto& f : probes) CHECK(ideal_member(f, C) == (ideal_member(f, A) && ideal_member(f, B)));
  }
}

TEST_CASE("property: saturation is monotone and idempotent") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto r = testsupport::ring_of(3);
    auto f = testsupport::random_polynomial(rng, r, 1, 2);
    if (f.is_constant()) f = Polynomial::variable(r, 0);
    Ideal A(r, {testsupport::random_polynomial(rng, r, 2, 2) * f, testsupport::random_polynomial(rng, r, 2, 2)});
    Ideal S = saturate(A, f);
    CHECK(S.contains(A));
    CHECK(saturate(S, f).equals(S));
    // oracle: iterate (I : f) until it stops growing
    Ideal cur = A;
    for (;;) {
      Ideal next = ideal_quotient(cur, f);
      if (cur.contains(next)) break;
      cur = next;
    }
    CHECK(S.equals(cur));
  }
}

TEST_CASE("property: complete intersections of independent linear forms") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    auto r = testsupport::ring_of(4);
    // an invertible triangular change of coordinates keeps the forms independent
    std::vector<Polynomial> forms;
    for (std::size_t i = 0; i < 4; ++i) {
      Polynomial l = Polynomial::variable(r, i);
      for (std::size_t j = i + 1; j < 4; ++j) l += Polynomial::variable(r, j) * Rational(int(rng() % 5) - 2);
      forms.push_back(l);
    }
    std::size_t p = 1 + trial % 2;
    std::size_t q = p + 1 + trial % 2;
    Ideal A(r, std::vector<Polynomial>(forms.begin(), forms.begin() + p));
    Ideal B(r, std::vector<Polynomial>(forms.begin() + p, forms.begin() + q));
    CHECK(ideal_intersect(A, B).equals(ideal_product(A, B)));
  }
}

TEST_CASE("property: power laws for a regular subsequence") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    auto r = testsupport::ring_of(4);
    Ideal A(r, {Polynomial::variable(r, 0), Polynomial::variable(r, 1)});
    // K generated in the remaining variables, so A and K are Tor-independent
    auto sub = testsupport::ring_of(4);
    Polynomial k1 = testsupport::random_polynomial(rng, sub, 2, 2);
    Polynomial k(r);
    for (const auto& t : k1.terms()) {
      Monomial m(4);
      m[2] = t.monomial[0] + t.monomial[2];
      m[3] = t.monomial[1] + t.monomial[3];
      k += Polynomial::monomial(r, m, t.coefficient);
    }
    if (k.is_constant()) k = Polynomial::variable(r, 2);
    Ideal K(r, {k, Polynomial::variable(r, 3) * Polynomial::variable(r, 2)});
    REQUIRE(ideal_intersect(A, K).equals(ideal_product(A, K)));
    for (unsigned l = 1; l <= 3; ++l) {
      Ideal Al = ideal_power(A, l);
      CHECK(ideal_intersect(Al, K).equals(ideal_product(Al, K)));
    }
  }
}

TEST_CASE("ideal cache is shared and consistent") {
  auto r = RingContext::make({"x", "y"});
  Ideal A = I(r, {"x^2 - y", "x*y - 1"});
  Ideal copy = A;
  const auto& b1 = A.basis();
  const auto& b2 = copy.basis();
  CHECK(&b1 == &b2);
  for (const auto& g : b1) CHECK(A.contains(g));
  for (const auto& g : A.generators()) CHECK(normal_form(g, b1, r->order()).is_zero());
}
