// Buchberger engine and the ideal operations built on it.
#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "defspace/poly.hpp"

namespace defspace {

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
/// Leads are monic; the result is sorted by increasing leading monomial.
/// The zero ideal gives an empty basis, the unit ideal gives {1}.
std::vector<Polynomial> groebner_basis(std::span<const Polynomial> gens, const MonomialOrder& order);

/// Normal-form computation against a fixed Groebner basis. Keeps the basis in
/// the engine's internal representation so repeated reductions are cheap.
class Reducer {
 public:
  Reducer(std::span<const Polynomial> basis, const MonomialOrder& order, RingPtr ring);
  ~Reducer();
  Reducer(const Reducer&) = delete;
  Reducer& operator=(const Reducer&) = delete;

  Polynomial reduce(const Polynomial& f) const;
  const MonomialOrder& order() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& order);

/// Ideal of a polynomial ring: generators plus a lazily filled cache of
/// reduced bases keyed by order. Copies share the cache.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> generators);

  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

  /// Reduced basis under `order` (cached, race-free fill).
  const std::vector<Polynomial>& basis(const MonomialOrder& order) const;
  /// Reduced basis under the ring's default order.
  const std::vector<Polynomial>& basis() const { return basis(ring_->order()); }
  const Reducer& reducer(const MonomialOrder& order) const;
  const Reducer& reducer() const { return reducer(ring_->order()); }

  Polynomial normal_form(const Polynomial& f) const { return reducer().reduce(f); }
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  bool is_zero() const;
  bool is_unit() const;
  bool equals(const Ideal& other) const;

  std::string to_string() const;

 private:
  struct CacheEntry {
    MonomialOrder order;
    std::vector<Polynomial> basis;
    std::unique_ptr<Reducer> reducer;
  };
  struct Cache {
    std::mutex mutex;
    std::deque<CacheEntry> entries;
  };
  const CacheEntry& entry(const MonomialOrder& order) const;

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// A polynomial ring modulo an ideal.
struct QuotientRing {
  RingPtr ring;
  Ideal modulus;

  QuotientRing() = default;
  explicit QuotientRing(RingPtr r) : ring(r), modulus(Ideal::zero(r)) {}
  QuotientRing(RingPtr r, Ideal m);

  Polynomial reduce(const Polynomial& f) const { return modulus.normal_form(f); }
  bool is_zero(const Polynomial& f) const { return modulus.contains(f); }
};

bool ideal_member(const Polynomial& f, const Ideal& I);
Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_product(const Ideal& I, const Ideal& J);
Ideal ideal_power(const Ideal& I, unsigned exponent);
Ideal ideal_add(const Ideal& I, std::span<const Polynomial> extra);
Ideal ideal_intersect(const Ideal& I, const Ideal& J);
/// (I : f); throws std::invalid_argument when f is zero.
Ideal ideal_quotient(const Ideal& I, const Polynomial& f);
/// (I : J) as the intersection of the quotients by the generators of J.
Ideal ideal_quotient(const Ideal& I, const Ideal& J);
/// (I : f^oo) by iterated quotients until stable.
Ideal saturate(const Ideal& I, const Polynomial& f);
/// True iff f is a non-zero-divisor modulo I, i.e. (I : f) = I.
bool is_nonzerodivisor(const Polynomial& f, const Ideal& I);
/// I intersected with the subring on the variables not in `drop`. The result
/// lives in the ring of I.
Ideal eliminate(const Ideal& I, std::span<const std::string> drop);

/// Kernel of source -> target sending source variable i to images[i]; the
/// generators are reduced modulo the source modulus with zeros dropped.
Ideal ring_map_kernel(const QuotientRing& source, const QuotientRing& target,
                      std::span<const Polynomial> images);

struct SubalgebraMembership {
  bool member = false;
  /// Normal form over the ring of tag variables w1..wm (one per generator);
  /// when member, substituting the generators gives f modulo the ambient modulus.
  Polynomial expression;
  RingPtr tag_ring;
};

SubalgebraMembership subalgebra_member(const Polynomial& f, std::span<const Polynomial> gens,
                                       const QuotientRing& ambient);

bool check_regular_sequence(std::span<const Polynomial> seq, const Ideal& modulo);

/// Number of standard monomials of each degree 0..up_to for the grevlex
/// leading ideal of I.
std::vector<long long> hilbert_function(const Ideal& I, int up_to);

/// Variable name not present in `ring`, derived from `stem`.
std::string fresh_name(const RingContext& ring, const std::string& stem);

}  // namespace defspace
