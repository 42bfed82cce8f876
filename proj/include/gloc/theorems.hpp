#pragma once

#include <json.hpp>

#include "gloc/localize.hpp"

namespace gloc {

/// One verdict of the verification harness. A failing verdict always
/// carries a concrete witness; reports serialize to JSON lines.
struct TheoremReport {
  std::string theorem_id;
  nlohmann::json instance;
  bool pass = true;
  nlohmann::json witness;
  std::int64_t ms = 0;
};

/// {"theorem":…,"instance":…,"verdict":"pass"|"fail","witness":…,"ms":…}
nlohmann::json report_json(const TheoremReport& r, bool include_ms);
TheoremReport report_from_json(const nlohmann::json& j);

/// Epimorphism test: the multiplication map S (x)_R S -> S is bijective.
/// Cross-checked elementwise against s(x)1 = 1(x)s.
bool is_epimorphism(const RingMap& map,
                    const Budget& budget = default_budget());
/// The target as a module over the source is flat.
bool is_flat_map(const RingMap& map, const Budget& budget = default_budget());
bool is_flat_epi(const RingMap& map, const Budget& budget = default_budget());

/// Builds F = {I : IS = S}, reconstructs S from R_F and exhibits the
/// unique ring isomorphism psi with phi = psi o j_R. Requires a flat
/// epimorphism.
TheoremReport flat_epi_to_localization(
    const RingMap& map, const Budget& budget = default_budget(),
    const LocalizeChecks& checks = LocalizeChecks::defaults());

/// The converse route: for an idempotent system with IR_F = R_F for all
/// members, j_R is verified flat and an epimorphism by the independent
/// oracles.
TheoremReport localization_to_flat_epi(
    const TopologizingSystem& f, const Budget& budget = default_budget(),
    const LocalizeChecks& checks = LocalizeChecks::defaults());

/// For every ideal J: the tensor oracle for flatness of R/J agrees with
/// the annihilator criterion Ann(a) + J = R for all a in J, and the
/// a = a^2 b generating-set condition implies it.
TheoremReport flat_quotient_report(const RingPtr& ring,
                                   const Budget& budget = default_budget());

/// Evaluates the seven equivalent exactness conditions and asserts they
/// agree.
TheoremReport exactness_report(const TopologizingSystem& f,
                               const Budget& budget = default_budget(),
                               const LocalizeChecks& checks =
                                   LocalizeChecks::defaults());

/// p -> p_F bijects primes outside F with primes of R_F outside F'.
TheoremReport prime_correspondence(const TopologizingSystem& f,
                                   const Budget& budget = default_budget(),
                                   const LocalizeChecks& checks =
                                       LocalizeChecks::defaults());

/// S^{-1}M and M_F are canonically isomorphic (ring isomorphism for the
/// regular module).
TheoremReport classical_vs_gabriel(const MultSet& s, const ModulePtr& m,
                                   const Budget& budget = default_budget(),
                                   const LocalizeChecks& checks =
                                       LocalizeChecks::defaults());

/// Runs the per-lemma checkers over every idempotent system and every
/// battery module of the ring.
std::vector<TheoremReport> lemma_battery(const RingPtr& ring,
                                         const Budget& budget =
                                             default_budget(),
                                         std::uint64_t seed = 1);

/// Everything for one ring: flat-quotient classification, per-system
/// reports, the flat-epi round trip over all quotients, the classical
/// comparison over all multiplicative subsets, and the lemma battery.
std::vector<TheoremReport> verify_ring(const RingPtr& ring,
                                       const Budget& budget =
                                           default_budget(),
                                       std::uint64_t seed = 1);

/// The standard battery: Z/2 .. Z/12, Z/2 x Z/2, Z/4 x Z/2 and two table
/// rings with non-principal ideals.
std::vector<RingPtr> battery_rings(const Budget& budget = default_budget());
std::vector<TheoremReport> verify_battery(const Budget& budget =
                                              default_budget(),
                                          std::uint64_t seed = 1);

/// Cyclic quotients plus the two-generated direct sums of cyclic pairs.
std::vector<ModulePtr> battery_modules(const RingPtr& ring,
                                       const Budget& budget =
                                           default_budget());

/// Z/2[x,y]/(x^2, xy, y^2): order 8, the ideal (x, y) is not principal.
RingPtr table_ring_f2xy(const Budget& budget = default_budget());
/// Z/4[x]/(x^2, 2x): order 8, the ideal (2, x) is not principal.
RingPtr table_ring_z4x(const Budget& budget = default_budget());

/// All multiplicatively closed subsets containing 1. Rings larger than
/// 16 elements fall back to the cyclic closures.
std::vector<MultSet> enumerate_mult_sets(const RingPtr& ring);

}  // namespace gloc
