#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gloc/ring.hpp"

namespace gloc {

class FiniteModule;
using ModulePtr = std::shared_ptr<const FiniteModule>;

/// An explicit finite module over a FiniteRing: carrier 0..m-1, addition
/// table and action table. Construction validates the abelian-group and
/// bilinearity laws exhaustively.
class FiniteModule {
 public:
  static ModulePtr make(RingPtr ring, int m, std::vector<int> add,
                        std::vector<int> act, int zero, std::string label,
                        const Budget& budget = default_budget());

  const RingPtr& ring() const { return ring_; }
  int size() const { return m_; }
  int zero() const { return zero_; }
  const std::string& label() const { return label_; }

  int add(int x, int y) const { return add_[std::size_t(x) * m_ + y]; }
  int act(int r, int x) const { return act_[std::size_t(r) * m_ + x]; }
  int neg(int x) const { return neg_[x]; }
  int sub(int x, int y) const { return add(x, neg_[y]); }

  const std::vector<int>& add_table() const { return add_; }
  const std::vector<int>& act_table() const { return act_; }

  static bool same_structure(const FiniteModule& a, const FiniteModule& b);

 private:
  FiniteModule() = default;
  RingPtr ring_;
  int m_ = 0;
  int zero_ = 0;
  std::string label_;
  std::vector<int> add_, act_, neg_;
};

/// An R-linear map given by its full image table.
class ModuleHom {
 public:
  /// Validating constructor: checks additivity and equivariance.
  ModuleHom(ModulePtr source, ModulePtr target, std::vector<int> images);
  /// Fast path for maps that are linear by construction (bulk
  /// enumeration); use verify() in tests.
  static ModuleHom unchecked(ModulePtr source, ModulePtr target,
                             std::vector<int> images);
  static ModuleHom identity(const ModulePtr& m);
  static ModuleHom zero_map(const ModulePtr& source, const ModulePtr& target);

  const ModulePtr& source() const { return src_; }
  const ModulePtr& target() const { return dst_; }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  /// Exhaustive linearity check; throws AxiomError with a witness.
  void verify() const;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  Bitset kernel_set() const;
  Bitset image_set() const;

  friend bool operator==(const ModuleHom& a, const ModuleHom& b) {
    return FiniteModule::same_structure(*a.src_, *b.src_) &&
           FiniteModule::same_structure(*a.dst_, *b.dst_) &&
           a.images_ == b.images_;
  }

 private:
  ModuleHom() = default;
  ModulePtr src_, dst_;
  std::vector<int> images_;
};

/// g after f.
ModuleHom compose(const ModuleHom& g, const ModuleHom& f);

struct ModuleWithHom {
  ModulePtr module;
  ModuleHom hom;
};

ModulePtr zero_module(const RingPtr& ring);
/// The ring acting on itself.
ModulePtr regular_module(const RingPtr& ring);
/// An ideal as a module; hom is the inclusion into the regular module.
ModuleWithHom module_from_ideal(const Ideal& ideal);
/// members must be a submodule; hom is the inclusion.
ModuleWithHom submodule_module(const ModulePtr& parent, const Bitset& members);
/// Quotient by a submodule; carrier = least coset representatives; hom is
/// the projection.
ModuleWithHom quotient_module(const ModulePtr& parent, const Bitset& sub);
/// R/I as a module with the projection from the regular module.
ModuleWithHom cyclic_quotient(const Ideal& ideal);

struct DirectSum {
  ModulePtr module;
  std::vector<ModuleHom> injections;
  std::vector<ModuleHom> projections;
};
DirectSum direct_sum(const std::vector<ModulePtr>& parts,
                     const Budget& budget = default_budget());

Bitset submodule_span(const FiniteModule& m, const std::vector<int>& gens);
bool is_submodule(const FiniteModule& m, const Bitset& members);
/// All submodules, canonically sorted.
std::vector<Bitset> enumerate_submodules(const FiniteModule& m);

/// A generating set with a fixed representation of every element as a
/// coefficient vector over the generators.
struct GeneratingSet {
  std::vector<int> gens;
  std::vector<std::vector<int>> rep;  // rep[x] has one coefficient per gen
};
/// Greedy: repeatedly adjoin the element spanning the most new elements
/// (ties by smallest id).
GeneratingSet greedy_generators(const FiniteModule& m);

struct Presentation {
  ModulePtr module;
  std::vector<int> generators;
  /// Rows generate the full kernel of the evaluation map from the rank-k
  /// free module. The trivial kernel is reported as a single zero row.
  std::vector<std::vector<int>> relation_rows;
};
Presentation presentation(const ModulePtr& m,
                          const Budget& budget = default_budget());

/// Every R-linear map M -> N, each exactly once, ordered by the
/// generator-image tuple. Enumerated by generator extension with
/// relation checking.
std::vector<ModuleHom> hom_set(const ModulePtr& m, const ModulePtr& n,
                               const Budget& budget = default_budget());

/// Hom(M, N) realized as an explicit module with pointwise operations.
struct HomModule {
  ModulePtr module;
  std::vector<ModuleHom> homs;  // indexed by carrier element
  std::map<std::vector<int>, int> index;
  int index_of(const std::vector<int>& images) const {
    auto it = index.find(images);
    return it == index.end() ? -1 : it->second;
  }
};
HomModule hom_module(const ModulePtr& m, const ModulePtr& n,
                     const Budget& budget = default_budget());

ModuleWithHom kernel(const ModuleHom& f);
ModuleWithHom image(const ModuleHom& f);
ModuleWithHom cokernel(const ModuleHom& f);

/// M (x) N computed from presentations: the rank-(k*l) free module
/// modulo the rows K (x) e_j and e_i (x) L, realized with least-index
/// coset representatives.
class TensorProduct {
 public:
  const ModulePtr& module() const { return module_; }
  const ModulePtr& left() const { return left_; }
  const ModulePtr& right() const { return right_; }
  /// Class of the pure tensor m (x) n; bilinear, image generates.
  int pure(int m, int n) const;
  int left_rank() const { return k_; }
  int right_rank() const { return l_; }
  const GeneratingSet& left_gens() const { return lg_; }
  const GeneratingSet& right_gens() const { return rg_; }
  /// Least tuple representative of a carrier class.
  std::vector<int> rep_digits(int cls) const;

 private:
  friend TensorProduct tensor(const ModulePtr&, const ModulePtr&,
                              const Budget&);
  ModulePtr module_, left_, right_;
  GeneratingSet lg_, rg_;
  int k_ = 0, l_ = 0;
  int ring_n_ = 0;
  std::uint64_t space_ = 0;
  std::vector<int> labels_;         // tuple index -> class
  std::vector<std::uint64_t> reps_; // class -> least tuple index
};
TensorProduct tensor(const ModulePtr& m, const ModulePtr& n,
                     const Budget& budget = default_budget());

/// The linear map the bilinear function fn(m, n) induces on the tensor
/// product. Validated exhaustively, including agreement with fn on every
/// pure tensor.
ModuleHom induced_from_bilinear(const TensorProduct& t,
                                const ModulePtr& target,
                                const std::function<int(int, int)>& fn);

/// True iff for every ideal J the canonical map J (x) M -> M is
/// injective.
bool is_flat(const RingPtr& ring, const ModulePtr& m,
             const Budget& budget = default_budget());

/// S^{-1}M via pair equivalence (m,s) ~ (m',s') iff t(s'm - sm') = 0 for
/// some t in S. For the regular module the localized ring structure is
/// attached.
struct ClassicalLocalization {
  ModulePtr module;
  ModuleHom pi;
  RingPtr ring;  // set when localizing the regular module
  std::optional<RingMap> ring_map;
};
ClassicalLocalization classical_localization(
    const MultSet& s, const ModulePtr& m,
    const Budget& budget = default_budget());
ClassicalLocalization classical_localization_ring(
    const MultSet& s, const Budget& budget = default_budget());

/// Restriction of scalars along a ring map.
ModulePtr module_via_map(const RingMap& map, const ModulePtr& target_module);
/// The target ring as a module over the source.
ModulePtr module_via_map_regular(const RingMap& map);

std::optional<ModuleHom> find_module_iso(
    const ModulePtr& m, const ModulePtr& n,
    const Budget& budget = default_budget());

/// Every unital ring homomorphism A -> B, enumerated through the
/// additive-group hom set (deterministic order).
std::vector<RingMap> enumerate_ring_maps(
    const RingPtr& a, const RingPtr& b,
    const Budget& budget = default_budget());
std::optional<RingMap> find_ring_iso(const RingPtr& a, const RingPtr& b,
                                     const Budget& budget = default_budget());

/// A chain of maps with exactness asserted at chosen positions:
/// at position i, image(maps[i]) == kernel(maps[i+1]).
struct ExactSequenceWitness {
  std::vector<ModuleHom> maps;
  std::vector<int> positions;
  bool holds() const;
};

}  // namespace gloc
