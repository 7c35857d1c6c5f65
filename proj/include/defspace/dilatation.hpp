// Multi-centered dilatations of affine rings, presented as finitely generated
// subalgebras of a localization of the base.
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "defspace/groebner.hpp"

namespace defspace {

/// numerator / prod d_i^denominator[i] over an ordered divisor list.
struct Fraction {
  Polynomial numerator;
  std::vector<int> denominator;

  bool operator==(const Fraction&) const = default;
};

/// Renders `X^2/(T1*T2^2)`; the bare numerator when the denominator is trivial.
std::string to_string(const Fraction& f, std::span<const Polynomial> divisors);

/// Product of divisors[i]^exponents[i].
Polynomial divisor_power(std::span<const Polynomial> divisors, std::span<const int> exponents);

/// A divisor element is not a non-zero-divisor where it has to be. `witness`
/// lies in (T : d) but not in T.
class ZeroDivisorError : public std::invalid_argument {
 public:
  ZeroDivisorError(const std::string& what, std::size_t index, Polynomial witness)
      : std::invalid_argument(what), index_(index), witness_(std::move(witness)) {}
  std::size_t index() const { return index_; }
  const Polynomial& witness() const { return witness_; }

 private:
  std::size_t index_;
  Polynomial witness_;
};

struct Center {
  Ideal ideal;
  Polynomial divisor;
};

/// Centers over one ring whose divisors are monomials in a shared list of
/// divisor elements.
class MultiCenter {
 public:
  struct Entry {
    Ideal ideal;
    std::vector<int> exponents;
  };

  MultiCenter() = default;
  MultiCenter(RingPtr ring, std::vector<Polynomial> divisors);
  /// Each distinct divisor polynomial becomes one entry of the divisor list.
  static MultiCenter from_centers(RingPtr ring, const std::vector<Center>& centers);

  void add(Ideal ideal, std::vector<int> exponents);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& divisors() const { return divisors_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Polynomial divisor(std::size_t i) const { return divisor_power(divisors_, entries_.at(i).exponents); }

 private:
  RingPtr ring_;
  std::vector<Polynomial> divisors_;
  std::vector<Entry> entries_;
};

enum class PresentationRoute { Saturation, Elimination };

/// base[y_1..y_r] / relations, with y_j sent to embedding[j] in the
/// localization of base at the divisors. Immutable; copies share the lazily
/// built localization model.
class PresentedAlgebra {
 public:
  PresentedAlgebra() = default;
  /// The base itself, no adjoined generators.
  static PresentedAlgebra over(QuotientRing base, std::vector<Polynomial> divisors);

  const QuotientRing& base() const { return base_; }
  const std::vector<Polynomial>& divisors() const { return divisors_; }
  /// Base variables followed by the adjoined ones.
  const RingPtr& ring() const { return ring_; }
  const std::vector<std::string>& new_vars() const { return new_vars_; }
  const std::vector<Fraction>& embedding() const { return embedding_; }
  const Ideal& relations() const { return relations_; }
  std::vector<Polynomial> divisor_images() const;
  QuotientRing as_quotient() const { return QuotientRing(ring_, relations_); }
  /// Set when the algebra is a single dilatation of its base.
  const std::optional<MultiCenter>& source() const { return source_; }

  /// Base element or adjoined generator j, as a fraction.
  std::vector<Fraction> generators() const;
  /// Substitutes the embedding into a polynomial of ring().
  Fraction to_fraction(const Polynomial& p) const;
  /// Lifts a base polynomial into ring().
  Polynomial lift(const Polynomial& base_poly) const;

  struct Location {
    bool member = false;
    /// Polynomial of ring() equal to the fraction, when member.
    Polynomial expression;
  };
  /// Exact membership through the localization model.
  Location locate(const Fraction& f) const;

  /// Relations obtained by eliminating the inverse variables from the
  /// localization model.
  Ideal elimination_relations() const;

 private:
  friend PresentedAlgebra dilatation_presentation(const QuotientRing&, const MultiCenter&, PresentationRoute);
  friend PresentedAlgebra iterate_dilatation(const PresentedAlgebra&, const MultiCenter&);
  struct Model;
  struct ModelSlot;
  const Model& model() const;
  static PresentedAlgebra build(QuotientRing base, std::vector<Polynomial> divisors, std::vector<Fraction> embedding);

  QuotientRing base_;
  std::vector<Polynomial> divisors_;
  RingPtr ring_;
  std::vector<std::string> new_vars_;
  std::vector<Fraction> embedding_;
  Ideal relations_;
  std::optional<MultiCenter> source_;
  std::shared_ptr<ModelSlot> model_;
};

/// Adjoins y_{i,j} = m_{i,j}/a_i for every listed generator of every center.
/// Throws ZeroDivisorError when some divisor is a zero-divisor mod the base.
PresentedAlgebra dilatation_presentation(const QuotientRing& base, const MultiCenter& mc,
                                         PresentationRoute route = PresentationRoute::Saturation);

/// Dilatation of `alg` at centers given over alg.ring(). The divisor list of
/// `mc` must be alg.divisor_images(). The result lives over the same base, with
/// generators already in `alg` dropped.
PresentedAlgebra iterate_dilatation(const PresentedAlgebra& alg, const MultiCenter& mc);

/// Certifies f in base[{M_i/a_i}] by finding mu, delta with
/// f * a^(mu+delta) in L^(mu+delta), L_i = M_i + (a_i). A false result is
/// inconclusive.
bool delta_criterion(const Fraction& f, const QuotientRing& base, const MultiCenter& mc, int delta_max = 6);

/// The single step of delta_criterion: f * d^(sum mu_c e_c - nu) in
/// prod L_c^mu_c modulo the base. False when mu does not cover nu.
bool power_criterion(const Fraction& f, const QuotientRing& base, const MultiCenter& mc, std::span<const int> mu);

struct MembershipOptions {
  bool cross_check = true;
  int delta_max = 6;
};

/// Throws RingMismatch on a divisor-list mismatch and std::logic_error if the
/// two membership routes disagree.
bool fraction_member(const Fraction& f, const PresentedAlgebra& alg, const MembershipOptions& opts = {});

enum class AlgebraRelation { Equal, LeftInRight, RightInLeft, Incomparable };
std::string to_string(AlgebraRelation r);

struct AlgebraComparison {
  AlgebraRelation relation = AlgebraRelation::Equal;
  /// A generator of the left algebra outside the right one, and vice versa.
  std::optional<Fraction> left_only;
  std::optional<Fraction> right_only;
};

AlgebraComparison algebra_compare(const PresentedAlgebra& left, const PresentedAlgebra& right);

/// Kernel of alg -> (base / (base.modulus + extra))[1/d].
Ideal localized_kernel(const PresentedAlgebra& alg, const Ideal& extra);

struct KernelReport {
  Ideal exact;
  Ideal truncated;
  bool stabilized = false;
};

/// Kernel of base[{M_i/a_i}] -> (base/T)[{M_i/a_i}], exactly and as the
/// ideal generated by (L^nu cap T)/a^nu for |nu| <= nu_bound. Both ideals
/// live in the ring of dilatation_presentation(base, mc).
KernelReport kernel_modulo(const QuotientRing& base, const MultiCenter& mc, const Ideal& T, int nu_bound);

}  // namespace defspace
