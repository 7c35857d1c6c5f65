#include "defspace/workbench.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace defspace {

std::optional<std::vector<int>> CheckRequest::arg(const std::string& key) const {
  for (const auto& [k, v] : args) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const IdealDecl* WorkbenchDocument::find_ideal(const std::string& name) const {
  for (const auto& d : ideals) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const DivisorDecl* WorkbenchDocument::find_divisor(const std::string& name) const {
  for (const auto& d : divisors) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const DatumDecl* WorkbenchDocument::find_datum(const std::string& name) const {
  for (const auto& d : data) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

QuotientRing WorkbenchDocument::base() const {
  if (!modulus) return QuotientRing(ring);
  return QuotientRing(ring, Ideal(ring, {*modulus}));
}

Ideal WorkbenchDocument::ideal(const std::string& name) const {
  const IdealDecl* d = find_ideal(name);
  if (!d) throw std::out_of_range("unknown ideal " + name);
  return Ideal(ring, d->generators);
}

DeformationDatum WorkbenchDocument::datum(const std::string& name) const {
  const DatumDecl* decl = find_datum(name);
  if (!decl) throw std::out_of_range("unknown datum " + name);
  DeformationDatum d;
  d.base = base();
  for (const auto& m : decl->chain) d.subspace_ideals.push_back(ideal(m));
  for (const auto& v : decl->divisors) {
    const DivisorDecl* dv = find_divisor(v);
    if (!dv) throw std::out_of_range("unknown divisor " + v);
    d.divisors.push_back(dv->value);
  }
  return d;
}

namespace {

std::vector<std::string> poly_strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

}  // namespace

bool operator==(const WorkbenchDocument& a, const WorkbenchDocument& b) {
  if (!a.ring || !b.ring || !same_variables(a.ring, b.ring)) return false;
  if (a.modulus.has_value() != b.modulus.has_value()) return false;
  if (a.modulus && a.modulus->to_string() != b.modulus->to_string()) return false;
  if (a.ideals.size() != b.ideals.size() || a.divisors.size() != b.divisors.size()) return false;
  for (std::size_t i = 0; i < a.ideals.size(); ++i) {
    if (a.ideals[i].name != b.ideals[i].name) return false;
    if (poly_strings(a.ideals[i].generators) != poly_strings(b.ideals[i].generators)) return false;
  }
  for (std::size_t i = 0; i < a.divisors.size(); ++i) {
    if (a.divisors[i].name != b.divisors[i].name) return false;
    if (a.divisors[i].value.to_string() != b.divisors[i].value.to_string()) return false;
  }
  if (a.data.size() != b.data.size() || a.checks.size() != b.checks.size()) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const auto& x = a.data[i];
    const auto& y = b.data[i];
    if (x.name != y.name || x.chain != y.chain || x.divisors != y.divisors) return false;
  }
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    const auto& x = a.checks[i];
    const auto& y = b.checks[i];
    if (x.kind != y.kind || x.targets != y.targets || x.args != y.args) return false;
  }
  return true;
}

const std::vector<std::string>& check_kinds() {
  static const std::vector<std::string> kinds{"gb", "mono", "dilatate", "verify", "assume", "strata", "polyptych"};
  return kinds;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find(',', pos);
    std::string_view item = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("expected a comma separated list of integers, got '" + std::string(text) + "'");
    }
    out.push_back(v);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

namespace {

const std::set<std::string> kKeywords{"ring", "modulus", "ideal", "divisor", "datum", "chain", "divisors", "check"};

struct KindRule {
  const char* target_kind;  // "ideal", "datum" or nullptr
  std::size_t min_targets;
  std::size_t max_targets;
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

const std::map<std::string, KindRule>& kind_rules() {
  static const std::map<std::string, KindRule> rules{
      {"gb", {"ideal", 1, 64, {}, {}}},
      {"mono", {"ideal", 2, 64, {}, {}}},
      {"dilatate", {"datum", 1, 1, {}, {}}},
      {"verify", {"datum", 1, 1, {"s"}, {}}},
      {"assume", {"datum", 1, 1, {"s", "k"}, {"bound", "e"}}},
      {"strata", {"datum", 1, 1, {"s"}, {"degree"}}},
      {"polyptych", {nullptr, 0, 0, {"n"}, {}}},
  };
  return rules;
}

class DocParser {
 public:
  explicit DocParser(std::string_view text) : text_(text) {}

  WorkbenchDocument parse() {
    skip();
    std::size_t at = pos_;
    if (word() != "ring") fail_at(at, "expected 'ring'");
    ring_decl();
    end_statement();
    while (true) {
      skip();
      if (pos_ >= text_.size()) break;
      at = pos_;
      std::string kw = word();
      if (kw == "modulus") {
        modulus();
      } else if (kw == "ideal") {
        ideal();
      } else if (kw == "divisor") {
        divisor();
      } else if (kw == "datum") {
        datum();
      } else if (kw == "check") {
        check();
      } else if (kw == "ring") {
        fail_at(at, "only one ring per document");
      } else if (kw.empty()) {
        fail_at(at, std::string("unexpected '") + text_[at] + "'");
      } else {
        fail_at(at, "unknown statement '" + kw + "'");
      }
      end_statement();
    }
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail_at(std::size_t offset, const std::string& msg) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  // Whitespace and `#` comments.
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  // Horizontal whitespace only.
  void skip_inline() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string word() {
    std::size_t start = pos_;
    if (pos_ < text_.size() && ident_start(text_[pos_])) {
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string ident(const char* what) {
    skip();
    std::size_t at = pos_;
    std::string w = word();
    if (w.empty()) fail_at(at, std::string("expected ") + what);
    if (kKeywords.count(w)) fail_at(at, "'" + w + "' is a keyword");
    return w;
  }

  void close_paren(std::size_t open) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail_at(open, "unclosed '('");
    ++pos_;
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail_at(pos_, std::string("expected '") + c + "'" +
                        (pos_ < text_.size() ? std::string(" before '") + text_[pos_] + "'" : " at end of input"));
    }
    ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void end_statement() {
    skip_inline();
    if (pos_ < text_.size() && text_[pos_] == ';') ++pos_;
  }

  void declare(const std::string& name, std::size_t at) {
    if (!names_.insert(name).second) fail_at(at, "'" + name + "' is already declared");
  }

  void ring_decl() {
    skip();
    std::size_t at = pos_;
    if (word() != "Q") fail_at(at, "expected 'Q'");
    expect('[');
    std::vector<std::string> vars;
    std::set<std::string> seen;
    do {
      skip();
      std::size_t vat = pos_;
      std::string v = ident("variable name");
      if (!seen.insert(v).second) fail_at(vat, "duplicate variable '" + v + "'");
      vars.push_back(v);
    } while (accept(','));
    expect(']');
    doc_.ring = RingContext::make(vars);
  }

  // Raw extent of a polynomial starting at pos_.
  Polynomial poly() {
    skip_inline();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0) break;
        --depth;
      } else if (depth == 0 && (c == ';' || c == ',' || c == '\n' || c == '#')) {
        break;
      }
      ++pos_;
    }
    std::string_view body = text_.substr(start, pos_ - start);
    if (body.find_first_not_of(" \t\r") == std::string_view::npos) fail_at(start, "expected a polynomial");
    try {
      return parse_polynomial(doc_.ring, body);
    } catch (const ParseError& e) {
      // the polynomial text never spans lines, except inside parentheses
      std::size_t off = start;
      std::size_t line = 1;
      while (line < e.line() && off < text_.size()) {
        if (text_[off++] == '\n') ++line;
      }
      fail_at(off + e.column() - 1, e.message());
    }
  }

  void modulus() {
    std::size_t at = pos_;
    if (doc_.modulus) fail_at(at, "modulus declared twice");
    doc_.modulus = poly();
  }

  void ideal() {
    skip();
    std::size_t at = pos_;
    IdealDecl d;
    d.name = ident("ideal name");
    declare(d.name, at);
    expect('=');
    expect('(');
    std::size_t open = pos_ - 1;
    do {
      d.generators.push_back(poly());
    } while (accept(','));
    close_paren(open);
    doc_.ideals.push_back(std::move(d));
  }

  void divisor() {
    skip();
    std::size_t at = pos_;
    DivisorDecl d;
    d.name = ident("divisor name");
    declare(d.name, at);
    expect('=');
    d.value = poly();
    doc_.divisors.push_back(std::move(d));
  }

  std::vector<std::string> name_list(bool (DocParser::*known)(const std::string&) const, const char* what) {
    expect('(');
    std::size_t open = pos_ - 1;
    std::vector<std::string> out;
    while (true) {
      skip();
      if (pos_ >= text_.size()) fail_at(open, "unclosed '('");
      if (accept(')')) break;
      std::size_t at = pos_;
      std::string n = ident(what);
      if (!(this->*known)(n)) fail_at(at, std::string(what) + " '" + n + "' is not declared");
      out.push_back(n);
      accept(',');
    }
    return out;
  }

  bool is_ideal(const std::string& n) const { return doc_.find_ideal(n) != nullptr; }
  bool is_divisor(const std::string& n) const { return doc_.find_divisor(n) != nullptr; }

  void datum() {
    skip();
    std::size_t at = pos_;
    DatumDecl d;
    d.name = ident("datum name");
    declare(d.name, at);
    expect('=');
    skip();
    at = pos_;
    if (word() != "chain") fail_at(at, "expected 'chain'");
    d.chain = name_list(&DocParser::is_ideal, "ideal");
    skip();
    at = pos_;
    if (word() != "divisors") fail_at(at, "expected 'divisors'");
    std::size_t list_at = pos_;
    d.divisors = name_list(&DocParser::is_divisor, "divisor");
    if (d.divisors.size() != d.chain.size()) {
      fail_at(list_at, "chain has " + std::to_string(d.chain.size()) + " ideals but " +
                           std::to_string(d.divisors.size()) + " divisors");
    }
    doc_.data.push_back(std::move(d));
  }

  void check() {
    skip_inline();
    std::size_t at = pos_;
    CheckRequest c;
    c.kind = word();
    auto rule_it = kind_rules().find(c.kind);
    if (rule_it == kind_rules().end()) fail_at(at, "unknown check '" + c.kind + "'");
    const KindRule& rule = rule_it->second;
    while (true) {
      skip_inline();
      if (pos_ >= text_.size() || !ident_start(text_[pos_])) break;
      std::size_t wat = pos_;
      std::string w = word();
      skip_inline();
      if (pos_ < text_.size() && text_[pos_] == '=') {
        ++pos_;
        const auto& req = rule.required;
        const auto& opt = rule.optional;
        if (std::find(req.begin(), req.end(), w) == req.end() && std::find(opt.begin(), opt.end(), w) == opt.end()) {
          fail_at(wat, "check " + c.kind + " takes no argument '" + w + "'");
        }
        if (c.arg(w)) fail_at(wat, "argument '" + w + "' given twice");
        skip_inline();
        std::size_t vat = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ',' ||
                                       text_[pos_] == '-')) {
          ++pos_;
        }
        try {
          c.args.emplace_back(w, parse_int_list(text_.substr(vat, pos_ - vat)));
        } catch (const std::invalid_argument&) {
          fail_at(vat, "expected integers for '" + w + "'");
        }
        continue;
      }
      if (!c.args.empty()) fail_at(wat, "targets must precede arguments");
      if (!rule.target_kind) fail_at(wat, "check " + c.kind + " takes no targets");
      bool known = std::string(rule.target_kind) == "ideal" ? is_ideal(w) : doc_.find_datum(w) != nullptr;
      if (!known) fail_at(wat, std::string(rule.target_kind) + " '" + w + "' is not declared");
      c.targets.push_back(w);
    }
    if (c.targets.size() < rule.min_targets || c.targets.size() > rule.max_targets) {
      fail_at(at, "check " + c.kind + " expects " +
                      (rule.min_targets == rule.max_targets ? std::to_string(rule.min_targets)
                                                            : "at least " + std::to_string(rule.min_targets)) +
                      " " + (rule.target_kind ? rule.target_kind : "target") + " name(s)");
    }
    for (const auto& r : rule.required) {
      if (!c.arg(r)) fail_at(at, "check " + c.kind + " needs " + r + "=...");
    }
    doc_.checks.push_back(std::move(c));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  WorkbenchDocument doc_;
  std::set<std::string> names_;
};

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

WorkbenchDocument parse_document(std::string_view text) { return DocParser(text).parse(); }

std::string render_document(const WorkbenchDocument& doc) {
  std::ostringstream out;
  out << "ring Q[" << join(doc.ring->names(), ", ") << "];\n";
  if (doc.modulus) out << "modulus " << doc.modulus->to_string() << ";\n";
  for (const auto& d : doc.ideals) out << "ideal " << d.name << " = (" << join(poly_strings(d.generators), ", ") << ");\n";
  for (const auto& d : doc.divisors) out << "divisor " << d.name << " = " << d.value.to_string() << ";\n";
  for (const auto& d : doc.data) {
    out << "datum " << d.name << " = chain(" << join(d.chain, ", ") << ") divisors(" << join(d.divisors, ", ") << ");\n";
  }
  for (const auto& c : doc.checks) {
    out << "check " << c.kind;
    for (const auto& t : c.targets) out << ' ' << t;
    for (const auto& [k, v] : c.args) {
      std::vector<std::string> vs;
      for (int x : v) vs.push_back(std::to_string(x));
      out << ' ' << k << '=' << join(vs, ",");
    }
    out << ";\n";
  }
  return out.str();
}

}  // namespace defspace
