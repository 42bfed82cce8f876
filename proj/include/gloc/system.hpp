#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gloc/module.hpp"

namespace gloc {

enum class Tri { Unknown, False, True };

/// A topologizing system: a nonempty family of ideals closed upward and
/// under finite intersections. Stored extensionally; public constructors
/// verify before caching flags.
class TopologizingSystem {
 public:
  const RingPtr& ring() const { return ring_; }
  const std::vector<Ideal>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(const Bitset& ideal_members) const;
  bool contains(const Ideal& ideal) const {
    return contains(ideal.members());
  }

  /// The minimum ideal I0: the intersection of all members. Exists for
  /// every finite system and is itself a member.
  const Ideal& minimum_ideal() const { return members_.front(); }

  Tri idempotent_flag() const { return idempotent_; }
  Tri finite_type_flag() const { return finite_type_; }

  std::string to_string() const;

  friend bool operator==(const TopologizingSystem& a,
                         const TopologizingSystem& b);

 private:
  friend struct SystemAccess;
  TopologizingSystem() = default;
  RingPtr ring_;
  std::vector<Ideal> members_;  // canonically sorted
  mutable Tri idempotent_ = Tri::Unknown;
  mutable Tri finite_type_ = Tri::Unknown;
};

/// Names the offending pair when a family fails the topologizing laws.
struct SystemViolation {
  std::string condition;  // "empty" | "upward-closure" | "intersection"
  std::optional<Ideal> first;
  std::optional<Ideal> second;
  std::string to_string() const;
};

/// Checks the two laws and either returns the validated system or the
/// violation naming the offending ideal pair. Throws on an empty family.
std::variant<TopologizingSystem, SystemViolation> validate_topologizing(
    const RingPtr& ring, std::vector<Ideal> family);

/// validate_topologizing that throws AxiomError on violation.
TopologizingSystem make_system(const RingPtr& ring, std::vector<Ideal> family);

/// Criterion: for every I in F and ideal J, if J:a in F for all a in I
/// then J in F. Cross-checked against the definitional test F.F == F;
/// the result is cached on the system.
bool is_idempotent(const TopologizingSystem& f);

/// F.G = ideals I admitting J in G with I contained in J and J/I
/// F-negligible; computed by direct scan over the ideal lattice.
TopologizingSystem product_system(const TopologizingSystem& f,
                                  const TopologizingSystem& g);

// Standard constructions. All but system_containing verify idempotency at
// construction and fail loudly if it does not hold.
TopologizingSystem system_unit(const RingPtr& ring);       // {R}
TopologizingSystem system_all(const RingPtr& ring);        // every ideal
TopologizingSystem system_meets(const MultSet& s);
TopologizingSystem system_comaximal(const Ideal& j);       // I + J = R
TopologizingSystem system_primes_avoid(const RingPtr& ring,
                                       const std::vector<Ideal>& primes);
TopologizingSystem system_v_subset(const Ideal& j);        // V(I) in V(J)
TopologizingSystem system_from_map(const RingMap& map);    // IS = S
/// Ideals containing a fixed ideal; not idempotent in general, so the
/// idempotency flag is computed, not asserted.
TopologizingSystem system_containing(const Ideal& j);
TopologizingSystem system_explicit(const RingPtr& ring,
                                   std::vector<Ideal> family);

/// F(M) = elements whose annihilator lies in F.
Bitset torsion_set(const TopologizingSystem& f, const FiniteModule& m);
/// F(M) as a module with its inclusion.
ModuleWithHom torsion_submodule(const TopologizingSystem& f,
                                const ModulePtr& m);
bool is_negligible(const TopologizingSystem& f, const FiniteModule& m);

/// Per-member generator witnesses for the finite-type property.
struct FiniteTypeWitness {
  std::vector<std::vector<int>> generators;  // aligned with members()
};
/// True over any finite ring; computed per definition with the witness.
bool is_finite_type(const TopologizingSystem& f,
                    FiniteTypeWitness* witness = nullptr);

/// The system {J ideal of S : S/J is F-negligible as R-module}, built by
/// the extension characterization (IS contained in J for some I in F) and
/// verified idempotent.
TopologizingSystem induced_system(const RingMap& map,
                                  const TopologizingSystem& f);

/// All idempotent systems. Rings with at most max_lattice ideals get the
/// full brute-force enumeration over upward closures of antichains;
/// larger lattices fall back to the standard constructions.
std::vector<TopologizingSystem> enumerate_idempotent_systems(
    const RingPtr& ring, std::size_t max_lattice = 8);

}  // namespace gloc
