// Exact sparse multivariate polynomials over the rationals.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace defspace {

using Rational = mpq_class;

/// Raised when two operands live over different rings or have different arity.
class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OrderKind { GRevLex, Lex, Block };

/// A monomial order. `Block` compares the first `split` variables by grevlex
/// and breaks ties with grevlex on the remaining ones, so the leading block
/// dominates (elimination order).
struct MonomialOrder {
  OrderKind kind = OrderKind::GRevLex;
  std::size_t split = 0;

  static MonomialOrder grevlex() { return {OrderKind::GRevLex, 0}; }
  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder block(std::size_t split) { return {OrderKind::Block, split}; }

  bool operator==(const MonomialOrder&) const = default;
  std::string to_string() const;
};

class RingContext;
using RingPtr = std::shared_ptr<const RingContext>;

/// Ordered list of distinct variable names plus a default monomial order.
class RingContext {
 public:
  RingContext(std::vector<std::string> names, MonomialOrder order);

  static RingPtr make(std::vector<std::string> names,
                      MonomialOrder order = MonomialOrder::grevlex());

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const MonomialOrder& order() const { return order_; }

 private:
  std::vector<std::string> names_;
  MonomialOrder order_;
};

/// Same variables in the same positions (orders may differ).
bool same_variables(const RingContext& a, const RingContext& b);
bool same_variables(const RingPtr& a, const RingPtr& b);

/// Exponent vector. Arity is fixed by the owning ring.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<int> exps);

  static Monomial variable(std::size_t arity, std::size_t index, int power = 1);

  std::size_t arity() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }
  int degree() const;
  bool is_one() const;

  /// true iff *this divides other (componentwise <=).
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; precondition: divisor divides *this.
  Monomial operator/(const Monomial& divisor) const;

  /// Lexicographic comparison of the raw exponent tuples (storage order).
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<int> exps_;
};

Monomial monomial_lcm(const Monomial& a, const Monomial& b);
Monomial monomial_gcd(const Monomial& a, const Monomial& b);

/// Three-way comparison under `order`; throws RingMismatch on arity mismatch.
std::strong_ordering monomial_cmp(const Monomial& a, const Monomial& b, const MonomialOrder& order);

/// Unchecked comparison used in hot loops.
int monomial_compare_raw(const Monomial& a, const Monomial& b, const MonomialOrder& order);

struct Term {
  Monomial monomial;
  Rational coefficient;
  bool operator==(const Term&) const = default;
};

/// Sparse polynomial. Terms are kept sorted by decreasing raw exponent tuple
/// with no zero coefficients, so structural equality is polynomial equality.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, const Rational& constant);
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial variable(const RingPtr& ring, std::size_t index);
  static Polynomial variable(const RingPtr& ring, std::string_view name);
  static Polynomial monomial(const RingPtr& ring, Monomial m, Rational c = 1);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Leading term under `order` (precondition: nonzero).
  const Term& leading_term(const MonomialOrder& order) const;
  /// Terms sorted by decreasing `order`.
  std::vector<Term> sorted_terms(const MonomialOrder& order) const;
  /// Set of variable indices appearing with positive exponent.
  std::vector<bool> support() const;
  bool uses_only(const std::vector<bool>& allowed) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  Polynomial pow(unsigned exponent) const;
  Polynomial multiply_monomial(const Monomial& m, const Rational& c) const;
  /// Scale so the leading coefficient under `order` is 1.
  Polynomial monic(const MonomialOrder& order) const;

  /// Substitute images[i] for variable i. All images share one target ring.
  Polynomial substitute(std::span<const Polynomial> images, const RingPtr& target) const;
  /// Re-express in `target`; var_map[i] is the target index of variable i.
  Polynomial remap(const RingPtr& target, std::span<const std::size_t> var_map) const;
  /// Re-express by matching variable names; throws if a used variable is missing.
  Polynomial rename_into(const RingPtr& target) const;

  /// Human-readable form, terms by decreasing grevlex: `x^2*y - 3/2*t1`.
  std::string to_string() const;

  bool operator==(const Polynomial& other) const;

 private:
  void normalize();
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// f / g when g divides f exactly in the polynomial ring.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

/// Parse `x^2*y - 3/2*(t1 + 1)^2` over `ring`. Throws ParseError.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// The message without the position suffix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

std::string rational_to_string(const Rational& q);

}  // namespace defspace
