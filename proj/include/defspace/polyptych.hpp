// Nested deformation-space formulas (panels) and their rewrite closure.
#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace defspace {

struct PanelEntry;

/// Either a leaf X_k (X_0 is the ambient space) or
/// D[(D_k1, E_1), ..., (D_km, E_m) | B] with k1 > ... > km.
class PanelExpr {
 public:
  PanelExpr() = default;
  static PanelExpr leaf(int space);
  static PanelExpr node(std::vector<PanelEntry> entries, PanelExpr base);

  bool is_leaf() const { return base_ == nullptr; }
  /// Leaf index; for a node, the leaf reached by following bases.
  int ground() const;
  const std::vector<PanelEntry>& entries() const;
  const PanelExpr& base() const { return *base_; }
  std::vector<int> divisor_indices() const;

  /// `D[(D3,X3),(D2,X2) | D[(D1,X1) | X0]]`; leaves print as `X0`.
  std::string to_string() const;

  bool operator==(const PanelExpr& other) const { return to_string() == other.to_string(); }

 private:
  int space_ = 0;
  std::shared_ptr<const std::vector<PanelEntry>> entries_;
  std::shared_ptr<const PanelExpr> base_;
};

struct PanelEntry {
  int divisor;
  PanelExpr expr;
};

/// Parses the to_string() form; throws ParseError.
PanelExpr parse_panel(std::string_view text);

/// Structural checks over indices 1..n: decreasing divisors in each node,
/// disjoint divisor sets along every nesting chain, entry k grounded at X_k.
/// Returns the first problem, empty when well formed.
std::string panel_problem(const PanelExpr& p, int n);

PanelExpr initial_panel(int n);

/// Child positions from the root: i < entries().size() selects entry i,
/// i == entries().size() selects the base.
using NodePath = std::vector<std::size_t>;

const PanelExpr& panel_at(const PanelExpr& p, const NodePath& path);

/// Rewrites the node at `path` splitting its divisor indices into S and the
/// complement K. Throws std::invalid_argument for a trivial S or a bad path.
PanelExpr panelize(const PanelExpr& p, const NodePath& path, const std::set<int>& S);

/// Sorted entries, empty nodes collapsed to their base.
PanelExpr canonicalize(const PanelExpr& p);

struct PolyptychEdge {
  std::size_t parent;
  std::size_t child;
  NodePath path;
  std::set<int> S;
};

struct Polyptych {
  int n = 0;
  /// Discovery order; panels[0] is the initial panel.
  std::vector<PanelExpr> panels;
  std::vector<PolyptychEdge> edges;

  std::size_t index_of(const PanelExpr& p) const;
};

Polyptych enumerate_polyptych(int n);

/// True when the edge relation has no directed cycle.
bool is_acyclic(const Polyptych& p);

std::string set_to_string(const std::set<int>& S);

std::string emit_dot(const Polyptych& p);

}  // namespace defspace
