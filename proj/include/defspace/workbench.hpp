// Documents of the workbench language:
//
//   ring Q[X, T1, T2];
//   modulus X^3 - T1;
//   ideal M1 = (X^2);
//   divisor d1 = T1;
//   datum D = chain(M1) divisors(d1);
//   check verify D s=1;
//
// Semicolons are optional. A polynomial runs to the next `;`, `,`, unmatched
// `)` or end of line.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "defspace/deformation.hpp"
#include "defspace/poly.hpp"

namespace defspace {

struct IdealDecl {
  std::string name;
  std::vector<Polynomial> generators;
};

struct DivisorDecl {
  std::string name;
  Polynomial value;
};

struct DatumDecl {
  std::string name;
  std::vector<std::string> chain;
  std::vector<std::string> divisors;
};

/// `check kind targets... key=v1,v2 ...`
struct CheckRequest {
  std::string kind;
  std::vector<std::string> targets;
  std::vector<std::pair<std::string, std::vector<int>>> args;

  /// Values of `key`, or nullopt.
  std::optional<std::vector<int>> arg(const std::string& key) const;
};

struct WorkbenchDocument {
  RingPtr ring;
  std::optional<Polynomial> modulus;
  std::vector<IdealDecl> ideals;
  std::vector<DivisorDecl> divisors;
  std::vector<DatumDecl> data;
  std::vector<CheckRequest> checks;

  const IdealDecl* find_ideal(const std::string& name) const;
  const DivisorDecl* find_divisor(const std::string& name) const;
  const DatumDecl* find_datum(const std::string& name) const;

  QuotientRing base() const;
  Ideal ideal(const std::string& name) const;
  /// Throws std::out_of_range for an unknown name.
  DeformationDatum datum(const std::string& name) const;
};

/// Structural equality: same variables, declarations and checks, polynomials
/// compared by their printed form.
bool operator==(const WorkbenchDocument& a, const WorkbenchDocument& b);

/// Check kinds the parser accepts.
const std::vector<std::string>& check_kinds();

/// Throws ParseError with a document line and column.
WorkbenchDocument parse_document(std::string_view text);

/// Ring, modulus, ideals, divisors, data, checks; one statement per line.
std::string render_document(const WorkbenchDocument& doc);

/// `1,3` -> {1, 3}; throws std::invalid_argument.
std::vector<int> parse_int_list(std::string_view text);

}  // namespace defspace
