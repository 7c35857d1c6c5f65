#include "defspace/polyptych.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "defspace/poly.hpp"

namespace defspace {

namespace {

const std::vector<PanelEntry> kNoEntries;

}  // namespace

PanelExpr PanelExpr::leaf(int space) {
  if (space < 0) throw std::invalid_argument("PanelExpr::leaf: negative index");
  PanelExpr p;
  p.space_ = space;
  return p;
}

PanelExpr PanelExpr::node(std::vector<PanelEntry> entries, PanelExpr base) {
  PanelExpr p;
  p.space_ = base.ground();
  p.entries_ = std::make_shared<const std::vector<PanelEntry>>(std::move(entries));
  p.base_ = std::make_shared<const PanelExpr>(std::move(base));
  return p;
}

int PanelExpr::ground() const { return space_; }

const std::vector<PanelEntry>& PanelExpr::entries() const { return entries_ ? *entries_ : kNoEntries; }

std::vector<int> PanelExpr::divisor_indices() const {
  std::vector<int> out;
  for (const auto& e : entries()) out.push_back(e.divisor);
  return out;
}

std::string PanelExpr::to_string() const {
  if (is_leaf()) return "X" + std::to_string(space_);
  std::string out = "D[";
  for (std::size_t i = 0; i < entries().size(); ++i) {
    if (i) out += ",";
    out += "(D" + std::to_string(entries()[i].divisor) + "," + entries()[i].expr.to_string() + ")";
  }
  return out + " | " + base_->to_string() + "]";
}

// ---------------------------------------------------------------- parsing

namespace {

class PanelParser {
 public:
  explicit PanelParser(std::string_view text) : text_(text) {}

  PanelExpr parse() {
    PanelExpr p = expr();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

 private:
  PanelExpr expr() {
    skip();
    if (peek() == 'X') {
      ++pos_;
      return PanelExpr::leaf(number());
    }
    expect('D');
    expect('[');
    std::vector<PanelEntry> entries;
    skip();
    if (peek() == '(') {
      while (true) {
        expect('(');
        expect('D');
        int k = number();
        expect(',');
        entries.push_back({k, expr()});
        expect(')');
        skip();
        if (peek() != ',') break;
        ++pos_;
      }
    }
    expect('|');
    PanelExpr base = expr();
    expect(']');
    return PanelExpr::node(std::move(entries), std::move(base));
  }

  int number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an index");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PanelExpr parse_panel(std::string_view text) { return PanelParser(text).parse(); }

// ---------------------------------------------------------------- structure

namespace {

std::string problem_rec(const PanelExpr& p, int n, std::set<int> used) {
  if (p.is_leaf()) {
    if (p.ground() > n) return "leaf X" + std::to_string(p.ground()) + " out of range";
    return {};
  }
  const auto& es = p.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    int k = es[i].divisor;
    if (k < 1 || k > n) return "divisor D" + std::to_string(k) + " out of range";
    if (i && es[i - 1].divisor <= k) return "divisors not strictly decreasing in " + p.to_string();
    if (!used.insert(k).second) return "divisor D" + std::to_string(k) + " repeated along a chain";
  }
  for (const auto& e : es) {
    if (e.expr.ground() != e.divisor) {
      return "entry D" + std::to_string(e.divisor) + " is not grounded at X" + std::to_string(e.divisor);
    }
    if (auto s = problem_rec(e.expr, n, used); !s.empty()) return s;
  }
  return problem_rec(p.base(), n, used);
}

}  // namespace

std::string panel_problem(const PanelExpr& p, int n) { return problem_rec(p, n, {}); }

PanelExpr initial_panel(int n) {
  if (n < 0) throw std::invalid_argument("initial_panel: negative n");
  if (n == 0) return PanelExpr::leaf(0);
  std::vector<PanelEntry> entries;
  for (int k = n; k >= 1; --k) entries.push_back({k, PanelExpr::leaf(k)});
  return PanelExpr::node(std::move(entries), PanelExpr::leaf(0));
}

const PanelExpr& panel_at(const PanelExpr& p, const NodePath& path) {
  const PanelExpr* cur = &p;
  for (std::size_t step : path) {
    if (cur->is_leaf()) throw std::invalid_argument("panel_at: path runs through a leaf");
    const auto& es = cur->entries();
    if (step < es.size()) {
      cur = &es[step].expr;
    } else if (step == es.size()) {
      cur = &cur->base();
    } else {
      throw std::invalid_argument("panel_at: child index out of range");
    }
  }
  return *cur;
}

namespace {

PanelExpr replace_at(const PanelExpr& p, const NodePath& path, std::size_t depth, const PanelExpr& with) {
  if (depth == path.size()) return with;
  std::vector<PanelEntry> es = p.entries();
  std::size_t step = path[depth];
  if (step < es.size()) {
    es[step].expr = replace_at(es[step].expr, path, depth + 1, with);
    return PanelExpr::node(std::move(es), p.base());
  }
  return PanelExpr::node(std::move(es), replace_at(p.base(), path, depth + 1, with));
}

}  // namespace

PanelExpr panelize(const PanelExpr& p, const NodePath& path, const std::set<int>& S) {
  const PanelExpr& target = panel_at(p, path);
  if (target.is_leaf()) throw std::invalid_argument("panelize: path addresses a leaf");
  const auto& es = target.entries();
  std::set<int> indices;
  for (const auto& e : es) indices.insert(e.divisor);
  if (S.empty() || S.size() >= indices.size()) throw std::invalid_argument("panelize: trivial S");
  for (int s : S) {
    if (!indices.count(s)) throw std::invalid_argument("panelize: S is not a subset of the node indices");
  }
  std::vector<PanelEntry> s_entries;
  for (const auto& e : es) {
    if (S.count(e.divisor)) s_entries.push_back(e);
  }
  std::vector<PanelEntry> k_entries;
  for (const auto& e : es) {
    if (S.count(e.divisor)) continue;
    std::vector<PanelEntry> above;
    for (const auto& s : s_entries) {
      if (s.divisor > e.divisor) above.push_back(s);
    }
    k_entries.push_back({e.divisor, above.empty() ? e.expr : PanelExpr::node(std::move(above), e.expr)});
  }
  PanelExpr rewritten = PanelExpr::node(std::move(k_entries), PanelExpr::node(std::move(s_entries), target.base()));
  return replace_at(p, path, 0, rewritten);
}

PanelExpr canonicalize(const PanelExpr& p) {
  if (p.is_leaf()) return p;
  PanelExpr base = canonicalize(p.base());
  if (p.entries().empty()) return base;
  std::vector<PanelEntry> es;
  for (const auto& e : p.entries()) es.push_back({e.divisor, canonicalize(e.expr)});
  std::stable_sort(es.begin(), es.end(), [](const PanelEntry& a, const PanelEntry& b) { return a.divisor > b.divisor; });
  return PanelExpr::node(std::move(es), std::move(base));
}

// ---------------------------------------------------------------- enumeration

std::size_t Polyptych::index_of(const PanelExpr& p) const {
  std::string key = canonicalize(p).to_string();
  for (std::size_t i = 0; i < panels.size(); ++i) {
    if (panels[i].to_string() == key) return i;
  }
  return panels.size();
}

namespace {

void node_paths(const PanelExpr& p, NodePath& cur, std::vector<NodePath>& out) {
  if (p.is_leaf()) return;
  if (p.entries().size() >= 2) out.push_back(cur);
  for (std::size_t i = 0; i <= p.entries().size(); ++i) {
    cur.push_back(i);
    node_paths(i < p.entries().size() ? p.entries()[i].expr : p.base(), cur, out);
    cur.pop_back();
  }
}

}  // namespace

Polyptych enumerate_polyptych(int n) {
  Polyptych out;
  out.n = n;
  std::map<std::string, std::size_t> seen;
  PanelExpr root = canonicalize(initial_panel(n));
  seen.emplace(root.to_string(), 0);
  out.panels.push_back(root);
  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t parent = work.front();
    work.pop_front();
    PanelExpr current = out.panels[parent];
    std::vector<NodePath> paths;
    NodePath cur;
    node_paths(current, cur, paths);
    for (const auto& path : paths) {
      auto indices = panel_at(current, path).divisor_indices();
      const std::size_t m = indices.size();
      for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
        std::set<int> S;
        for (std::size_t i = 0; i < m; ++i) {
          if (mask & (1u << i)) S.insert(indices[i]);
        }
        PanelExpr next = canonicalize(panelize(current, path, S));
        auto [it, fresh] = seen.emplace(next.to_string(), out.panels.size());
        if (fresh) {
          out.panels.push_back(next);
          work.push_back(it->second);
        }
        out.edges.push_back({parent, it->second, path, S});
      }
    }
  }
  return out;
}

bool is_acyclic(const Polyptych& p) {
  std::vector<std::vector<std::size_t>> adj(p.panels.size());
  for (const auto& e : p.edges) adj[e.parent].push_back(e.child);
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> state(p.panels.size(), 0);
  for (std::size_t s = 0; s < p.panels.size(); ++s) {
    if (state[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < adj[v].size()) {
        std::size_t w = adj[v][i++];
        if (state[w] == 1) return false;
        if (state[w] == 0) {
          state[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

std::string set_to_string(const std::set<int>& S) {
  std::string out = "{";
  bool first = true;
  for (int s : S) {
    if (!first) out += ",";
    out += std::to_string(s);
    first = false;
  }
  return out + "}";
}

std::string emit_dot(const Polyptych& p) {
  std::ostringstream out;
  out << "digraph polyptych {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < p.panels.size(); ++i) {
    out << "  p" << i + 1 << " [label=\"p" << i + 1 << ": " << p.panels[i].to_string() << "\"];\n";
  }
  for (const auto& e : p.edges) {
    if (e.parent == e.child) continue;
    out << "  p" << e.parent + 1 << " -> p" << e.child + 1 << " [label=\"S=" << set_to_string(e.S) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace defspace
