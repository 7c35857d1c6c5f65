// Running workbench checks and reporting them.
#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "defspace/workbench.hpp"

namespace defspace {

/// verdict is one of pass, fail, morphism-only, bounded-pass, unsupported.
/// fail and morphism-only always carry a witness.
struct CheckResult {
  std::string check;
  std::string verdict;
  std::optional<std::string> witness;
  double millis = 0;
  /// Extra lines for the text report (bases, presentations, counts).
  std::vector<std::string> detail;
};

/// 1 when some result failed, else 0.
int exit_code(const std::vector<CheckResult>& results);

/// `[{"check":..,"verdict":..,"witness":..,"millis":..}, ...]`, fields in that
/// order, witness omitted when absent.
std::string emit_json(const std::vector<CheckResult>& results);

void print_text(std::ostream& out, const std::vector<CheckResult>& results);

/// Reduced basis of each named ideal plus the modulus.
std::vector<CheckResult> run_gb(const WorkbenchDocument& doc, const std::vector<std::string>& ideals);

/// For every pair of the named ideals: intersection, product and sum computed
/// on exponent vectors agree with the polynomial computation, and the
/// disjoint-support identity when the supports are disjoint. Non-monomial
/// ideals are reported unsupported.
std::vector<CheckResult> run_mono(const WorkbenchDocument& doc, const std::vector<std::string>& ideals);

/// Presentation of the deformation space of a datum.
std::vector<CheckResult> run_dilatate(const WorkbenchDocument& doc, const std::string& datum);

std::vector<CheckResult> run_verify(const WorkbenchDocument& doc, const std::string& datum, const std::set<int>& S);

std::vector<CheckResult> run_assume(const WorkbenchDocument& doc, const std::string& datum, const std::set<int>& S,
                                    int k, const AssumptionBounds& bounds);

std::vector<CheckResult> run_strata(const WorkbenchDocument& doc, const std::string& datum, const std::set<int>& S,
                                    int degree = 6);

/// Enumerates the panels of length n; writes DOT text to `dot` when given.
std::vector<CheckResult> run_polyptych(int n, std::ostream* dot = nullptr);

/// The check statements of the document, in order.
std::vector<CheckResult> run_checks(const WorkbenchDocument& doc);

/// Built-in reference computations: the two monomial counterexamples, the
/// remark datum, the kernel element X^2/T2^2, panel counts for n = 2, 3 and
/// the linear n = 2 datum.
std::vector<CheckResult> run_selftest();

/// Text of the remark datum: X1 = V(X^2), X2 = V(X), D_i = V(T_i).
const std::string& remark_document_text();

}  // namespace defspace
