#include "defspace/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace defspace {

std::string MonomialOrder::to_string() const {
  switch (kind) {
    case OrderKind::GRevLex:
      return "grevlex";
    case OrderKind::Lex:
      return "lex";
    case OrderKind::Block:
      return "block(" + std::to_string(split) + ")";
  }
  return "?";
}

RingContext::RingContext(std::vector<std::string> names, MonomialOrder order)
    : names_(std::move(names)), order_(order) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name: " + n);
  }
  if (order_.kind == OrderKind::Block && (order_.split == 0 || order_.split >= names_.size())) {
    throw std::invalid_argument("block split point must lie strictly inside the variable list");
  }
}

RingPtr RingContext::make(std::vector<std::string> names, MonomialOrder order) {
  return std::make_shared<const RingContext>(std::move(names), order);
}

std::optional<std::size_t> RingContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

bool same_variables(const RingContext& a, const RingContext& b) { return a.names() == b.names(); }

bool same_variables(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_variables(*a, *b);
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("negative exponent");
  }
}

Monomial Monomial::variable(std::size_t arity, std::size_t index, int power) {
  Monomial m(arity);
  m.exps_.at(index) = power;
  return m;
}

int Monomial::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= divisor.exps_[i];
  return r;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
  if (a.arity() != b.arity()) throw RingMismatch("monomial_lcm: arity mismatch");
  Monomial r(a);
  for (std::size_t i = 0; i < a.arity(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  if (a.arity() != b.arity()) throw RingMismatch("monomial_gcd: arity mismatch");
  Monomial r(a);
  for (std::size_t i = 0; i < a.arity(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

namespace {

// grevlex on the index range [lo, hi): higher degree wins, then the
// monomial with the smaller exponent in the last differing variable wins.
int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  int da = 0;
  int db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int monomial_compare_raw(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
  switch (order.kind) {
    case OrderKind::GRevLex:
      return grevlex_range(a, b, 0, a.arity());
    case OrderKind::Lex:
      for (std::size_t i = 0; i < a.arity(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      }
      return 0;
    case OrderKind::Block: {
      int c = grevlex_range(a, b, 0, order.split);
      if (c != 0) return c;
      return grevlex_range(a, b, order.split, a.arity());
    }
  }
  return 0;
}

std::strong_ordering monomial_cmp(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
  if (a.arity() != b.arity()) throw RingMismatch("monomial_cmp: arity mismatch");
  if (order.kind == OrderKind::Block && order.split > a.arity()) {
    throw RingMismatch("monomial_cmp: block split beyond arity");
  }
  int c = monomial_compare_raw(a, b, order);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- Polynomial

namespace {

void require_same(const RingPtr& a, const RingPtr& b, const char* op) {
  if (!same_variables(a, b)) throw RingMismatch(std::string(op) + ": ring mismatch");
}

bool storage_greater(const Term& a, const Term& b) { return a.monomial > b.monomial; }

}  // namespace

Polynomial::Polynomial(RingPtr ring, const Rational& constant) : ring_(std::move(ring)) {
  if (constant != 0) terms_.push_back({Monomial(ring_->size()), constant});
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.monomial.arity() != ring_->size()) throw RingMismatch("term arity does not match ring");
  }
  normalize();
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), storage_greater);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coefficient += t.coefficient;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coefficient == 0; });
  terms_ = std::move(out);
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t index) {
  return monomial(ring, Monomial::variable(ring->size(), index), 1);
}

Polynomial Polynomial::variable(const RingPtr& ring, std::string_view name) {
  auto idx = ring->index_of(name);
  if (!idx) throw std::invalid_argument("unknown variable: " + std::string(name));
  return variable(ring, *idx);
}

Polynomial Polynomial::monomial(const RingPtr& ring, Monomial m, Rational c) {
  if (m.arity() != ring->size()) throw RingMismatch("monomial arity does not match ring");
  Polynomial p(ring);
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

const Term& Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw std::invalid_argument("leading term of zero polynomial");
  const Term* best = &terms_[0];
  for (const auto& t : terms_) {
    if (monomial_compare_raw(t.monomial, best->monomial, order) > 0) best = &t;
  }
  return *best;
}

std::vector<Term> Polynomial::sorted_terms(const MonomialOrder& order) const {
  std::vector<Term> out = terms_;
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) {
    return monomial_compare_raw(a.monomial, b.monomial, order) > 0;
  });
  return out;
}

std::vector<bool> Polynomial::support() const {
  std::vector<bool> s(ring_ ? ring_->size() : 0, false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (t.monomial[i] > 0) s[i] = true;
    }
  }
  return s;
}

bool Polynomial::uses_only(const std::vector<bool>& allowed) const {
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      if (!allowed[i] && t.monomial[i] > 0) return false;
    }
  }
  return true;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

namespace {

std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].monomial > b[j].monomial)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].monomial > a[i].monomial) {
      out.push_back(b[j++]);
      if (subtract) out.back().coefficient = -out.back().coefficient;
    } else {
      Rational c = subtract ? Rational(a[i].coefficient - b[j].coefficient)
                            : Rational(a[i].coefficient + b[j].coefficient);
      if (c != 0) out.push_back({a[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (!ring_) ring_ = other.ring_;
  if (other.ring_) require_same(ring_, other.ring_, "add");
  terms_ = merge_add(terms_, other.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (!ring_) ring_ = other.ring_;
  if (other.ring_) require_same(ring_, other.ring_, "sub");
  terms_ = merge_add(terms_, other.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same(a.ring_, b.ring_, "poly_mul");
  Polynomial r(a.ring_);
  if (a.is_zero() || b.is_zero()) return r;
  std::map<Monomial, Rational, std::greater<>> acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto [it, inserted] = acc.try_emplace(s.monomial * t.monomial, 0);
      it->second += s.coefficient * t.coefficient;
    }
  }
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) r.terms_.push_back({m, c});
  }
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= scalar;
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(ring_, Rational(1));
  Polynomial base(*this);
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::multiply_monomial(const Monomial& m, const Rational& c) const {
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // multiplying by a monomial preserves the raw lexicographic order
  for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, t.coefficient * c});
  return r;
}

Polynomial Polynomial::monic(const MonomialOrder& order) const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading_term(order).coefficient;
  Polynomial r(*this);
  r *= inv;
  return r;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images, const RingPtr& target) const {
  if (images.size() != ring_->size()) throw RingMismatch("substitute: one image per variable required");
  for (const auto& img : images) {
    if (!img.is_zero() || img.ring_) require_same(img.ring_ ? img.ring_ : target, target, "substitute");
  }
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power_of = [&](std::size_t var, int e) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.emplace_back(target, Rational(1));
    while (static_cast<int>(cache.size()) <= e) {
      Polynomial img = images[var].ring() ? images[var] : Polynomial(target);
      cache.push_back(cache.back() * img);
    }
    return cache[e];
  };
  Polynomial result(target);
  for (const auto& t : terms_) {
    Polynomial term(target, t.coefficient);
    for (std::size_t i = 0; i < t.monomial.arity(); ++i) {
      if (t.monomial[i] > 0) term = term * power_of(i, t.monomial[i]);
      if (term.is_zero()) break;
    }
    result += term;
  }
  return result;
}

Polynomial Polynomial::remap(const RingPtr& target, std::span<const std::size_t> var_map) const {
  if (var_map.size() != ring_->size()) throw RingMismatch("remap: map size mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->size());
    for (std::size_t i = 0; i < var_map.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (var_map[i] >= target->size()) throw RingMismatch("remap: variable has no image");
      m[var_map[i]] += t.monomial[i];
    }
    out.push_back({std::move(m), t.coefficient});
  }
  return Polynomial(target, std::move(out));
}

Polynomial Polynomial::rename_into(const RingPtr& target) const {
  if (same_variables(ring_, target)) {
    Polynomial r(*this);
    r.ring_ = target;
    return r;
  }
  std::vector<std::size_t> map(ring_->size(), target->size());
  auto used = support();
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    auto idx = target->index_of(ring_->name(i));
    if (idx) {
      map[i] = *idx;
    } else if (used[i]) {
      throw RingMismatch("rename_into: variable " + ring_->name(i) + " missing from target");
    }
  }
  return remap(target, map);
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : sorted_terms(MonomialOrder::grevlex())) {
    Rational c = t.coefficient;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool constant = t.monomial.is_one();
    bool wrote = false;
    if (c != 1 || constant) {
      out << rational_to_string(c);
      wrote = true;
    }
    for (std::size_t i = 0; i < t.monomial.arity(); ++i) {
      int e = t.monomial[i];
      if (e == 0) continue;
      if (wrote) out << "*";
      out << ring_->name(i);
      if (e > 1) out << "^" << e;
      wrote = true;
    }
  }
  return out.str();
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_ != other.terms_) return false;
  if (terms_.empty()) return true;
  return same_variables(ring_, other.ring_);
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  require_same(f.ring(), g.ring(), "divide_exact");
  if (g.is_zero()) throw std::invalid_argument("divide_exact: division by zero");
  const auto order = MonomialOrder::lex();
  const Term lead = g.leading_term(order);
  Polynomial quotient(f.ring());
  Polynomial rem = f;
  while (!rem.is_zero()) {
    const Term& lt = rem.leading_term(order);
    if (!lead.monomial.divides(lt.monomial)) return std::nullopt;
    Monomial m = lt.monomial / lead.monomial;
    Rational c = lt.coefficient / lead.coefficient;
    quotient += Polynomial::monomial(f.ring(), m, c);
    rem -= g.multiply_monomial(m, c);
  }
  return quotient;
}

// ---------------------------------------------------------------- parsing

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
      message_(what),
      line_(line),
      column_(column) {}

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    skip_ws();
    Polynomial acc(ring_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        skip_ws();
        std::size_t at = pos_;
        Polynomial d = factor();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by nonzero constants");
        }
        acc *= Rational(1 / d.terms()[0].coefficient);
      } else {
        skip_ws();
        // juxtaposition `2x` or `3(x+1)` is accepted as implicit product
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                    text_[pos_] == '(' || text_[pos_] == '_')) {
          acc = acc * factor();
        } else {
          return acc;
        }
      }
    }
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 10000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of polynomial");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial(ring_, Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  return PolyParser(ring, text).parse();
}

}  // namespace defspace
