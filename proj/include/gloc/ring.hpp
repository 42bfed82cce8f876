#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gloc/common.hpp"

namespace gloc {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// A finite commutative unital ring as an explicit carrier 0..n-1 with
/// operation tables. Immutable after construction; construction validates
/// every axiom exhaustively and reports the first failing witness.
class FiniteRing : public std::enable_shared_from_this<FiniteRing> {
 public:
  static RingPtr make(int n, std::vector<int> add, std::vector<int> mul,
                      int zero, int one, std::string label,
                      const Budget& budget = default_budget());

  int size() const { return n_; }
  int zero() const { return zero_; }
  int one() const { return one_; }
  const std::string& label() const { return label_; }

  int add(int a, int b) const { return add_[std::size_t(a) * n_ + b]; }
  int mul(int a, int b) const { return mul_[std::size_t(a) * n_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg_[b]); }

  bool is_unit(int a) const;
  std::vector<int> units() const;

  const std::vector<int>& add_table() const { return add_; }
  const std::vector<int>& mul_table() const { return mul_; }

  /// Sorted canonical list of all ideal membership sets (cardinality,
  /// then lexicographic). Computed once, cached; thread-safe.
  const std::vector<Bitset>& ideal_masks() const;

 private:
  FiniteRing() = default;
  int n_ = 0;
  int zero_ = 0;
  int one_ = 0;
  std::string label_;
  std::vector<int> add_, mul_, neg_;
  mutable std::once_flag ideals_once_;
  mutable std::vector<Bitset> ideals_;
};

/// An ideal, stored as a membership set over the carrier of its ring.
/// Construction validates closure under addition and ring absorption.
class Ideal {
 public:
  Ideal(RingPtr ring, Bitset members);

  static Ideal zero_ideal(const RingPtr& ring);
  static Ideal unit_ideal(const RingPtr& ring);
  /// Smallest ideal containing the given elements.
  static Ideal span(const RingPtr& ring, const std::vector<int>& gens);

  const RingPtr& ring() const { return ring_; }
  const Bitset& members() const { return members_; }
  bool contains(int a) const { return members_.test(a); }
  std::size_t count() const { return members_.count(); }
  std::vector<int> elements() const { return members_.elements(); }
  bool is_unit_ideal() const { return count() == members_.size(); }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.ring_ == b.ring_ && a.members_ == b.members_;
  }
  friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }

 private:
  RingPtr ring_;
  Bitset members_;
};

/// Canonical order: cardinality, then lexicographic membership.
inline bool canonical_less(const Ideal& a, const Ideal& b) {
  return canonical_less(a.members(), b.members());
}

/// Canonical report notation, e.g. {0,2,4}.
std::string format_ideal(const Ideal& ideal);

/// A unital ring homomorphism given by its full image table. Construction
/// validates preservation of 0, 1, + and * exhaustively.
class RingMap {
 public:
  RingMap(RingPtr source, RingPtr target, std::vector<int> images);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  int operator()(int a) const { return images_[a]; }
  const std::vector<int>& images() const { return images_; }

  static RingMap identity(const RingPtr& ring);

 private:
  RingPtr source_, target_;
  std::vector<int> images_;
};

/// A multiplicatively closed subset containing 1.
class MultSet {
 public:
  MultSet(RingPtr ring, Bitset members);

  /// Smallest multiplicative set containing seed and 1.
  static MultSet closure(const RingPtr& ring, const std::vector<int>& seed);

  const RingPtr& ring() const { return ring_; }
  const Bitset& members() const { return members_; }
  bool contains(int a) const { return members_.test(a); }
  std::vector<int> elements() const { return members_.elements(); }

 private:
  RingPtr ring_;
  Bitset members_;
};

/// Closure of a seed set under addition and ring absorption.
Bitset ideal_closure(const FiniteRing& ring, Bitset seed);

/// Parses the ring-specification grammar: "Z/<n>" with n >= 1, products
/// via " x " (left-associative), and "@<path>" for a JSON table ring.
RingPtr build_ring(const std::string& spec,
                   const Budget& budget = default_budget());

RingPtr ring_zmod(int n, const Budget& budget = default_budget());
RingPtr ring_product(const RingPtr& a, const RingPtr& b,
                     const Budget& budget = default_budget());
RingPtr ring_from_json_text(const std::string& text,
                            const Budget& budget = default_budget());
RingPtr ring_from_json_file(const std::string& path,
                            const Budget& budget = default_budget());

/// All ideals, each exactly once, canonically sorted. Always includes the
/// zero ideal and the whole ring.
std::vector<Ideal> enumerate_ideals(const RingPtr& ring);

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_intersection(const Ideal& a, const Ideal& b);

/// colon(J, a) = { r : r*a in J }. colon(J, 0) = R; colon(0, a) = Ann(a).
Ideal colon(const Ideal& j, int a);
Ideal annihilator(const RingPtr& ring, int a);

/// True iff the ideal is proper and the quotient ring has no zero
/// divisors.
bool is_prime(const Ideal& ideal);
std::vector<Ideal> enumerate_primes(const RingPtr& ring);

/// V(I): all primes containing I.
std::vector<Ideal> v_set(const Ideal& ideal);

MultSet mult_closure(const RingPtr& ring, const std::vector<int>& seed);

struct QuotientRing {
  RingPtr ring;                // carrier = least coset representatives
  std::vector<int> coset_of;   // parent element -> quotient id
  std::vector<int> rep_of;     // quotient id -> least parent representative
  std::unique_ptr<RingMap> projection;
};
QuotientRing quotient_ring(const RingPtr& ring, const Ideal& ideal,
                           const Budget& budget = default_budget());

/// Extension ideal: the ideal of the target generated by the image of I.
Ideal extension_ideal(const RingMap& map, const Ideal& ideal);

}  // namespace gloc
