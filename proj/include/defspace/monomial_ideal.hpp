// Monomial ideals as antichains of exponent vectors.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "defspace/groebner.hpp"

namespace defspace {

using ExponentVector = std::vector<int>;

/// A monomial ideal stored by its minimal generators. The empty antichain is
/// the zero ideal; the single zero vector is the unit ideal.
class MonomialIdeal {
 public:
  explicit MonomialIdeal(std::size_t arity = 0) : arity_(arity) {}

  static MonomialIdeal unit(std::size_t arity);
  /// Ideal generated by the given monomials (x_i for each index in `vars`).
  static MonomialIdeal variables(std::size_t arity, const std::vector<std::size_t>& vars);

  std::size_t arity() const { return arity_; }
  /// Minimal generators in increasing lexicographic order.
  const std::vector<ExponentVector>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;

  bool operator==(const MonomialIdeal&) const = default;

  /// `(x*y, z^2)` style rendering with the given variable names.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  friend MonomialIdeal delta_min(const std::vector<ExponentVector>&, std::size_t);
  std::size_t arity_;
  std::vector<ExponentVector> gens_;
};

/// Minimal elements under the componentwise order; throws RingMismatch when a
/// vector does not have length `arity`.
MonomialIdeal delta_min(const std::vector<ExponentVector>& exponents, std::size_t arity);

bool mono_member(const ExponentVector& alpha, const MonomialIdeal& I);
MonomialIdeal mono_intersect(const MonomialIdeal& I, const MonomialIdeal& J);
MonomialIdeal mono_product(const MonomialIdeal& I, const MonomialIdeal& J);
MonomialIdeal mono_sum(const MonomialIdeal& I, const MonomialIdeal& J);
MonomialIdeal mono_power(const MonomialIdeal& I, unsigned exponent);
/// Indices i with alpha_i != 0 for some minimal generator alpha.
std::vector<std::size_t> support(const MonomialIdeal& I);

/// Inclusion test between monomial ideals; a witness is a generator of
/// `sub` outside `super`.
std::optional<ExponentVector> mono_not_contained(const MonomialIdeal& sub, const MonomialIdeal& super);

enum class IdentityVerdict { Holds, Fails, HypothesisViolated };

struct IdentityReport {
  IdentityVerdict verdict = IdentityVerdict::Holds;
  std::optional<ExponentVector> witness;
  std::string detail;

  bool holds() const { return verdict == IdentityVerdict::Holds; }
};

std::string to_string(IdentityVerdict v);

/// I and J with disjoint supports satisfy I cap J = IJ.
IdentityReport verify_disjoint_support(const MonomialIdeal& I, const MonomialIdeal& J);

/// (sum N_i Q_i) cap Q = sum N_i (Q_i cap Q) when supp(N_i) avoids supp(Q_i)
/// and supp(Q).
IdentityReport verify_coroap(const std::vector<MonomialIdeal>& N, const std::vector<MonomialIdeal>& Q,
                             const MonomialIdeal& Qext);

/// The two identities for ideals I_1 c ... c I_n generated by nested sets of
/// variables: (prod I_l^a_l) cap (prod I_l^b_l) = cap I_l^m_l with
/// m_i = max(a_1+..+a_i, b_1+..+b_i), and cap I_l^m_l = I_1^m_1 I_2^(m_2-m_1)...
IdentityReport verify_nested_powers(const std::vector<std::vector<std::size_t>>& chain, const std::vector<int>& a,
                                    const std::vector<int>& b, std::size_t arity);

/// Equality as monomial ideals with a witness of the first difference.
IdentityReport compare_monomial(const MonomialIdeal& lhs, const MonomialIdeal& rhs);

Ideal to_polynomial_ideal(const MonomialIdeal& I, const RingPtr& ring);
/// Reads back a monomial ideal from the reduced basis of I; throws
/// std::invalid_argument when I is not monomial.
MonomialIdeal from_polynomial_ideal(const Ideal& I);

}  // namespace defspace
