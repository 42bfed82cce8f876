#pragma once

#include "gloc/system.hpp"

namespace gloc {

/// Verification knobs for the localization constructions. The defaults
/// keep every cross-check on; heavy batteries can dial them down after
/// the acceptance suite has exercised them.
struct LocalizeChecks {
  bool colimit_cross_check = true;
  int pairing_samples = 4;
  std::uint64_t seed = 0x67a61cebull;
  static const LocalizeChecks& defaults();
};

/// M_(F): the colimit of Hom(I, M) over the members of F, realized as
/// Hom(I0, M) for the minimum ideal I0 and cross-checked against the
/// general quotient-of-disjoint-union colimit.
struct PreLocalization {
  TopologizingSystem system;
  ModulePtr source;
  Ideal witness_ideal;              // I0
  ModulePtr ideal_module;           // I0 as a module
  std::vector<int> ideal_elements;  // ring ids of ideal_module elements
  HomModule carrier;                // Hom(I0, M)
  ModuleHom delta;                  // M -> carrier; kernel F(M), coker
                                    // F-negligible (asserted)
};
PreLocalization pre_localize(const TopologizingSystem& f, const ModulePtr& m,
                             const Budget& budget = default_budget(),
                             const LocalizeChecks& checks =
                                 LocalizeChecks::defaults());

/// The Gabriel localization M_F = (M/F(M))_(F) together with its
/// canonical map and witness data. Construction asserts Ker(j) = F(M),
/// F-negligibility of Coker(j) and F(M_F) = 0.
struct GabrielLocalization {
  TopologizingSystem system;
  ModulePtr source;
  Ideal witness_ideal;
  ModulePtr ideal_module;
  std::vector<int> ideal_elements;
  Bitset torsion;            // F(M)
  ModulePtr quotient;        // M/F(M)
  ModuleHom quotient_proj;   // M -> quotient
  HomModule carrier;         // Hom(I0, M/F(M)); carrier.module is M_F
  ModuleHom j;               // M -> carrier.module

  /// Class of a representative hom living on any member ideal: the
  /// carrier element its restriction to I0 denotes. rep must be a hom
  /// from module_from_ideal(domain).module into the quotient.
  int element_of(const Ideal& domain, const ModuleHom& rep) const;
};
GabrielLocalization localize(const TopologizingSystem& f, const ModulePtr& m,
                             const Budget& budget = default_budget(),
                             const LocalizeChecks& checks =
                                 LocalizeChecks::defaults());

/// R_F with its ring structure from the composition pairing
/// (f.g)(a) = g(lift(f(a))), the unit [pi], and j_R as a ring map.
struct LocalizedRing {
  GabrielLocalization base;  // localization of the regular module
  RingPtr ring_view;
  RingMap j_ring;            // R -> ring_view
  std::vector<int> lift;     // quotient coset id -> position in I0, or -1

  /// The pairing action of a ring-carrier element on a localized-module
  /// carrier element.
  int pair_action(int z, const GabrielLocalization& mf, int x) const;
};
LocalizedRing ring_structure(const TopologizingSystem& f,
                             const Budget& budget = default_budget(),
                             const LocalizeChecks& checks =
                                 LocalizeChecks::defaults());

/// M_F as an explicit module over the localized ring (action by the
/// pairing); validated exhaustively.
ModulePtr module_over_localized_ring(const LocalizedRing& rf,
                                     const GabrielLocalization& mf,
                                     const Budget& budget = default_budget());

/// u_F with j_N o u = u_F o j_M (asserted). When rf is supplied the
/// R_F-linearity of u_F is asserted as well.
ModuleHom localize_hom(const GabrielLocalization& mf,
                       const GabrielLocalization& nf, const ModuleHom& u,
                       const LocalizedRing* rf = nullptr);

/// The unique h : P -> N_F with h o g = j_N o f, for g with F-negligible
/// kernel and cokernel (checked; std::invalid_argument otherwise).
ModuleHom universal_map(const GabrielLocalization& nf, const ModuleHom& f,
                        const ModuleHom& g);

struct SigmaMap {
  TensorProduct tensor_product;  // R_F (x) M
  ModuleHom map;                 // -> M_F
};
/// sigma_M : R_F (x) M -> M_F, z (x) m -> z . j_M(m).
SigmaMap sigma_map(const LocalizedRing& rf, const GabrielLocalization& mf,
                   const Budget& budget = default_budget());

bool is_closed(const TopologizingSystem& f, const ModulePtr& m,
               const Budget& budget = default_budget(),
               const LocalizeChecks& checks = LocalizeChecks::defaults());
/// m -> (delta_m)|_I bijective for every member I.
bool is_strongly_closed(const TopologizingSystem& f, const ModulePtr& m,
                        const Budget& budget = default_budget());

/// I_F inside R_F: the image of the localized inclusion (asserted
/// injective).
Bitset ideal_localization(const GabrielLocalization& rf_base, const Ideal& i,
                          const Budget& budget = default_budget(),
                          const LocalizeChecks& checks =
                              LocalizeChecks::defaults());

/// IR_F: the ideal of the ring view generated by j_R(I).
Bitset extended_ideal(const LocalizedRing& rf, const Ideal& i);

struct PullbackReport {
  bool first_equal = false;            // (j^{-1}(N))_F == j^{-1}(N_F)
  bool quotient_torsion_free = false;  // F(M_F / N) = 0
  bool second_equal = false;           // N == j^{-1}(N_F), when applicable
  std::string detail;
  bool ok() const {
    return first_equal && (!quotient_torsion_free || second_equal);
  }
};
PullbackReport submodule_pullback_check(const GabrielLocalization& mf,
                                        const Bitset& n,
                                        const Budget& budget =
                                            default_budget(),
                                        const LocalizeChecks& checks =
                                            LocalizeChecks::defaults());

}  // namespace gloc
