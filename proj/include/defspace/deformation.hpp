// Deformation data, deformation spaces, panel evaluation and the checks built
// on them.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "defspace/dilatation.hpp"
#include "defspace/polyptych.hpp"

namespace defspace {

/// A chain X_n in ... in X_1 in X = Spec(base) given by ideals
/// M_1 in ... in M_n, with divisors d_1..d_n.
struct DeformationDatum {
  QuotientRing base;
  std::vector<Ideal> subspace_ideals;
  std::vector<Polynomial> divisors;

  int size() const { return static_cast<int>(subspace_ideals.size()); }
  /// M_k + base modulus; k = 0 gives the base modulus.
  Ideal subspace(int k) const;
};

struct DatumCheck {
  std::string what;
  bool ok = true;
  std::string witness;
};

struct DatumReport {
  std::vector<DatumCheck> checks;
  bool ok() const;
  /// First failing check rendered as `what: witness`, empty when ok.
  std::string first_failure() const;
};

/// Chain inclusions M_i in M_{i+1} and (M_i : d_j) = M_i for all i, j (and
/// d_j regular on the base).
DatumReport validate_datum(const DeformationDatum& d);

class InvalidDatum : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Centers [M_i, d_i * d_{i+1} * ... * d_n].
MultiCenter deformation_multicenter(const DeformationDatum& d);

/// Throws InvalidDatum when validation fails.
PresentedAlgebra deformation_space(const DeformationDatum& d);

/// Datum over B[T1..Tn] with M_i = Q_i extended and d_i = T_i. The chain must
/// satisfy Q_1 in Q_2 in ... in Q_n.
DeformationDatum build_an_datum(const QuotientRing& B, const std::vector<Ideal>& chain);

/// B = Q[b1..bn], Q_i = (b1..bi).
DeformationDatum linear_an_datum(int n);

struct PanelOptions {
  /// Check that every generator of a node's base maps into each entry.
  bool check_immersion = false;
};

/// Evaluates panels of one datum, sharing sub-results between calls.
class PanelEvaluator {
 public:
  explicit PanelEvaluator(DeformationDatum d, PanelOptions opts = {});

  PresentedAlgebra evaluate(const PanelExpr& p);
  const DeformationDatum& datum() const { return datum_; }

 private:
  PresentedAlgebra leaf(int k) const;

  DeformationDatum datum_;
  PanelOptions opts_;
  std::map<std::string, PresentedAlgebra> cache_;
};

/// Leaves X_k are base / M_k; a node over B with entries (D_k, E_k) dilates
/// eval(B) at ker(eval(B) -> eval(E_k)) with divisor the product of the node's
/// d_j, j >= k. Throws std::invalid_argument for a malformed panel.
PresentedAlgebra evaluate_panel(const PanelExpr& p, const DeformationDatum& d, PanelOptions opts = {});

enum class PanelVerdict { Isomorphism, MorphismOnly, Unexpected };
std::string to_string(PanelVerdict v);

struct PanelizationReport {
  PanelVerdict verdict = PanelVerdict::Unexpected;
  PanelExpr panel;
  AlgebraRelation relation = AlgebraRelation::Equal;
  /// Generator of the panel algebra outside the full space (MorphismOnly), or
  /// of the full space outside the panel (Unexpected).
  std::optional<Fraction> witness;
  std::string witness_text;
};

PanelizationReport compare_with_panel(const DeformationDatum& d, const PanelExpr& panel);
PanelizationReport compare_with_panel(PanelEvaluator& ev, const PresentedAlgebra& full, const PanelExpr& panel);

/// Compares the full space with the panel obtained from one panelization at
/// the root. Throws InvalidDatum or std::invalid_argument for a trivial S.
PanelizationReport verify_panelization(const DeformationDatum& d, const std::set<int>& S);

enum class AssumptionVerdict { BoundedPass, Vacuous, Fail };
std::string to_string(AssumptionVerdict v);

struct AssumptionBounds {
  int theta_bound = 3;
  int e_bound = 2;
  /// Skip the monomial shortcut even when every ideal involved is monomial.
  bool force_groebner = false;
};

struct AssumptionReport {
  AssumptionVerdict verdict = AssumptionVerdict::Vacuous;
  /// Indices of S above k, ascending; theta is aligned with them.
  std::vector<int> s_indices;
  /// 1 or 2 on failure.
  int item = 0;
  std::vector<int> theta;
  std::string witness;
  std::size_t instances = 0;
};

/// Bounded check of the two ideal identities over S_{>k}: for theta != 0
///   (prod M_s^theta_s) cap M_k = (prod_{s>s'} M_s^theta_s) M_s'^(theta_s'-1) M_k,
/// s' = min{s : theta_s > 0}, and for families (gamma_e, theta_e)
///   (sum_e d^gamma_e prod M_s^theta_e,s) cap M_k = sum_e d^gamma_e ((prod M_s^theta_e,s) cap M_k).
/// Everything is taken modulo the base modulus.
AssumptionReport check_assumption(const DeformationDatum& d, const std::set<int>& S, int k,
                                  const AssumptionBounds& bounds = {});

/// Quotient of alg by the images of d_s, s in S.
PresentedAlgebra stratum(const PresentedAlgebra& alg, const std::set<int>& S);

/// Empty when d is a datum verify_strata handles: no base modulus, divisors
/// are distinct variables, each M_i minimally generated by linear forms free
/// of the divisor variables.
std::string smoothness_problem(const DeformationDatum& d);

struct StrataReport {
  bool supported = true;
  std::string detail;
  /// Shape of the right-hand side, V{S}(E) standing for the stratum of E.
  std::string formula;
  /// Left generators land in the right relations.
  bool well_defined = false;
  /// Every right generator is a polynomial in the images of the left ones.
  bool surjective = false;
  bool hilbert_agree = false;
  /// Kernel of the map equals the left relations.
  bool ideals_equal = false;
  std::vector<long long> hilbert_lhs;
  std::vector<long long> hilbert_rhs;

  bool ok() const { return supported && well_defined && surjective && hilbert_agree; }
};

/// Compares the S-stratum of the deformation space with the dilatation of the
/// strata of the S-panel pieces. For S = I uses the affine bundle when n = 1
/// and the {n}-panel followed by the remaining divisors otherwise.
StrataReport verify_strata(const DeformationDatum& d, const std::set<int>& S, int degree = 6);

/// Strata of two presentations of the same subalgebra, compared through the
/// map sending generators of `left` to their expressions in `right`.
StrataReport compare_strata(const PresentedAlgebra& left, const PresentedAlgebra& right, const std::set<int>& S,
                            int degree = 6);

}  // namespace defspace
