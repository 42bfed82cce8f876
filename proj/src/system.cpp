#include "gloc/system.hpp"

#include <algorithm>
#include <set>

namespace gloc {

struct SystemAccess {
  static TopologizingSystem build(RingPtr ring, std::vector<Ideal> members) {
    TopologizingSystem f;
    f.ring_ = std::move(ring);
    f.members_ = std::move(members);
    return f;
  }
  static void cache_idempotent(const TopologizingSystem& f, bool v) {
    f.idempotent_ = v ? Tri::True : Tri::False;
  }
  static void cache_finite_type(const TopologizingSystem& f, bool v) {
    f.finite_type_ = v ? Tri::True : Tri::False;
  }
};

bool TopologizingSystem::contains(const Bitset& ideal_members) const {
  for (const Ideal& i : members_)
    if (i.members() == ideal_members) return true;
  return false;
}

std::string TopologizingSystem::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ";";
    s += format_ideal(members_[i]);
  }
  return s + "}";
}

bool operator==(const TopologizingSystem& a, const TopologizingSystem& b) {
  if (a.ring_ != b.ring_ || a.members_.size() != b.members_.size())
    return false;
  for (std::size_t i = 0; i < a.members_.size(); ++i)
    if (a.members_[i].members() != b.members_[i].members()) return false;
  return true;
}

std::string SystemViolation::to_string() const {
  std::string s = condition;
  if (first) s += " witness " + format_ideal(*first);
  if (second) s += ", " + format_ideal(*second);
  return s;
}

std::variant<TopologizingSystem, SystemViolation> validate_topologizing(
    const RingPtr& ring, std::vector<Ideal> family) {
  if (family.empty())
    throw std::invalid_argument("a topologizing system must be nonempty");
  for (const Ideal& i : family)
    if (i.ring() != ring)
      throw std::invalid_argument("family mixes ideals of different rings");
  std::sort(family.begin(), family.end(),
            [](const Ideal& a, const Ideal& b) { return canonical_less(a, b); });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  // Upward closure over the full lattice.
  for (const Ideal& i : family)
    for (const Bitset& mask : ring->ideal_masks()) {
      if (!i.members().is_subset_of(mask)) continue;
      bool found = false;
      for (const Ideal& j : family)
        if (j.members() == mask) {
          found = true;
          break;
        }
      if (!found)
        return SystemViolation{"upward-closure", i, Ideal(ring, mask)};
    }
  // Stability under finite intersections.
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      Bitset meet = family[a].members() & family[b].members();
      bool found = false;
      for (const Ideal& j : family)
        if (j.members() == meet) {
          found = true;
          break;
        }
      if (!found)
        return SystemViolation{"intersection", family[a], family[b]};
    }
  return SystemAccess::build(ring, std::move(family));
}

TopologizingSystem make_system(const RingPtr& ring,
                               std::vector<Ideal> family) {
  auto v = validate_topologizing(ring, std::move(family));
  if (auto* bad = std::get_if<SystemViolation>(&v))
    throw AxiomError("family is not topologizing: " + bad->to_string());
  return std::get<TopologizingSystem>(std::move(v));
}

namespace {

bool negligible_quotient(const Ideal& inner, const Ideal& outer,
                         const TopologizingSystem& f) {
  // J/I is F-negligible iff I:b lies in F for every b in J
  // (Ann(b + I) = I : b).
  for (int b : outer.elements())
    if (!f.contains(colon(inner, b).members())) return false;
  return true;
}

bool idempotent_by_criterion(const TopologizingSystem& f) {
  const RingPtr& ring = f.ring();
  for (const Ideal& i : f.members())
    for (const Bitset& jmask : ring->ideal_masks()) {
      if (f.contains(jmask)) continue;
      Ideal j(ring, jmask);
      bool all_colon_in = true;
      for (int a : i.elements())
        if (!f.contains(colon(j, a).members())) {
          all_colon_in = false;
          break;
        }
      if (all_colon_in) return false;  // J should have been a member
    }
  return true;
}

}  // namespace

TopologizingSystem product_system(const TopologizingSystem& f,
                                  const TopologizingSystem& g) {
  if (f.ring() != g.ring())
    throw std::invalid_argument("product of systems over different rings");
  const RingPtr& ring = f.ring();
  std::vector<Ideal> members;
  for (const Bitset& imask : ring->ideal_masks()) {
    Ideal i(ring, imask);
    bool in = false;
    for (const Ideal& j : g.members()) {
      if (!imask.is_subset_of(j.members())) continue;
      if (negligible_quotient(i, j, f)) {
        in = true;
        break;
      }
    }
    if (in) members.push_back(i);
  }
  TopologizingSystem fg = make_system(ring, std::move(members));
  // F.G contains both factors and all products IJ.
  for (const Ideal& i : f.members())
    require(fg.contains(i), "product system lost a left member");
  for (const Ideal& j : g.members())
    require(fg.contains(j), "product system lost a right member");
  for (const Ideal& i : f.members())
    for (const Ideal& j : g.members())
      require(fg.contains(ideal_product(i, j).members()),
              "product system misses a product ideal");
  return fg;
}

bool is_idempotent(const TopologizingSystem& f) {
  if (f.idempotent_flag() != Tri::Unknown)
    return f.idempotent_flag() == Tri::True;
  bool crit = idempotent_by_criterion(f);
  bool def = product_system(f, f) == f;
  require(crit == def,
          "idempotency criterion disagrees with F.F = F on " + f.to_string());
  SystemAccess::cache_idempotent(f, crit);
  return crit;
}

namespace {

TopologizingSystem filtered_system(
    const RingPtr& ring, const std::function<bool(const Ideal&)>& keep,
    bool assert_idempotent) {
  std::vector<Ideal> members;
  for (const Bitset& mask : ring->ideal_masks()) {
    Ideal i(ring, mask);
    if (keep(i)) members.push_back(i);
  }
  TopologizingSystem f = make_system(ring, std::move(members));
  if (assert_idempotent)
    require(is_idempotent(f),
            "standard construction is not idempotent: " + f.to_string());
  return f;
}

}  // namespace

TopologizingSystem system_unit(const RingPtr& ring) {
  return filtered_system(
      ring, [&](const Ideal& i) { return i.is_unit_ideal(); }, true);
}

TopologizingSystem system_all(const RingPtr& ring) {
  return filtered_system(ring, [](const Ideal&) { return true; }, true);
}

TopologizingSystem system_meets(const MultSet& s) {
  return filtered_system(
      s.ring(),
      [&](const Ideal& i) {
        for (int a : i.elements())
          if (s.contains(a)) return true;
        return false;
      },
      true);
}

TopologizingSystem system_comaximal(const Ideal& j) {
  return filtered_system(
      j.ring(),
      [&](const Ideal& i) { return ideal_sum(i, j).is_unit_ideal(); }, true);
}

TopologizingSystem system_primes_avoid(const RingPtr& ring,
                                       const std::vector<Ideal>& primes) {
  for (const Ideal& p : primes)
    if (!is_prime(p))
      throw std::invalid_argument("family member is not prime: " +
                                  format_ideal(p));
  return filtered_system(
      ring,
      [&](const Ideal& i) {
        for (const Ideal& p : primes)
          if (i.members().is_subset_of(p.members())) return false;
        return true;
      },
      true);
}

TopologizingSystem system_v_subset(const Ideal& j) {
  const std::vector<Ideal> vj = v_set(j);
  auto in_vj = [&](const Ideal& p) {
    for (const Ideal& q : vj)
      if (q.members() == p.members()) return true;
    return false;
  };
  return filtered_system(
      j.ring(),
      [&](const Ideal& i) {
        for (const Ideal& p : v_set(i))
          if (!in_vj(p)) return false;
        return true;
      },
      true);
}

TopologizingSystem system_from_map(const RingMap& map) {
  return filtered_system(
      map.source(),
      [&](const Ideal& i) {
        return extension_ideal(map, i).is_unit_ideal();
      },
      true);
}

TopologizingSystem system_containing(const Ideal& j) {
  TopologizingSystem f = filtered_system(
      j.ring(),
      [&](const Ideal& i) { return j.members().is_subset_of(i.members()); },
      false);
  is_idempotent(f);  // compute and cache, no assertion
  return f;
}

TopologizingSystem system_explicit(const RingPtr& ring,
                                   std::vector<Ideal> family) {
  return make_system(ring, std::move(family));
}

Bitset torsion_set(const TopologizingSystem& f, const FiniteModule& m) {
  Bitset out(m.size());
  const RingPtr& ring = f.ring();
  for (int x = 0; x < m.size(); ++x) {
    Bitset ann(ring->size());
    for (int r = 0; r < ring->size(); ++r)
      if (m.act(r, x) == m.zero()) ann.set(r);
    if (f.contains(ann)) out.set(x);
  }
  return out;
}

ModuleWithHom torsion_submodule(const TopologizingSystem& f,
                                const ModulePtr& m) {
  return submodule_module(m, torsion_set(f, *m));
}

bool is_negligible(const TopologizingSystem& f, const FiniteModule& m) {
  return torsion_set(f, m).count() == std::size_t(m.size());
}

bool is_finite_type(const TopologizingSystem& f, FiniteTypeWitness* witness) {
  if (witness) witness->generators.clear();
  for (const Ideal& i : f.members()) {
    // Every ideal of a finite ring is finitely generated; exhibit a
    // generating set of the member itself and check membership anyway.
    GeneratingSet gs = greedy_generators(*module_from_ideal(i).module);
    std::vector<int> gens;
    const std::vector<int> elems = i.elements();
    for (int g : gs.gens) gens.push_back(elems[g]);
    Ideal generated = Ideal::span(f.ring(), gens);
    if (generated.members() != i.members() || !f.contains(generated))
      return false;
    if (witness) witness->generators.push_back(std::move(gens));
  }
  SystemAccess::cache_finite_type(f, true);
  return true;
}

TopologizingSystem induced_system(const RingMap& map,
                                  const TopologizingSystem& f) {
  if (map.source() != f.ring())
    throw std::invalid_argument("system does not live on the map source");
  const RingPtr& s = map.target();
  // J in G iff IS is contained in J for some I in F; the minimum member
  // suffices since extensions are monotone.
  Ideal min_ext = extension_ideal(map, f.minimum_ideal());
  TopologizingSystem g = filtered_system(
      s,
      [&](const Ideal& j) {
        return min_ext.members().is_subset_of(j.members());
      },
      false);
  require(is_idempotent(g), "induced system is not idempotent");
  require(is_finite_type(g), "induced system is not of finite type");
  return g;
}

std::vector<TopologizingSystem> enumerate_idempotent_systems(
    const RingPtr& ring, std::size_t max_lattice) {
  const auto& masks = ring->ideal_masks();
  std::vector<TopologizingSystem> out;
  std::set<std::vector<std::size_t>> seen;  // member index sets
  auto consider = [&](TopologizingSystem f) {
    if (!is_idempotent(f)) return;
    std::vector<std::size_t> key;
    for (const Ideal& i : f.members())
      for (std::size_t t = 0; t < masks.size(); ++t)
        if (masks[t] == i.members()) key.push_back(t);
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) out.push_back(std::move(f));
  };
  if (masks.size() <= max_lattice) {
    // Upward closures of all antichain bases.
    const std::size_t t = masks.size();
    for (std::uint64_t bits = 1; bits < (std::uint64_t(1) << t); ++bits) {
      std::vector<Ideal> base;
      for (std::size_t i = 0; i < t; ++i)
        if (bits >> i & 1) base.emplace_back(ring, masks[i]);
      std::vector<Ideal> closed;
      for (const Bitset& mask : masks)
        for (const Ideal& b : base)
          if (b.members().is_subset_of(mask)) {
            closed.emplace_back(ring, mask);
            break;
          }
      auto v = validate_topologizing(ring, std::move(closed));
      if (auto* f = std::get_if<TopologizingSystem>(&v))
        consider(std::move(*f));
    }
  } else {
    consider(system_unit(ring));
    consider(system_all(ring));
    for (const Bitset& mask : masks) {
      Ideal j(ring, mask);
      consider(system_comaximal(j));
      consider(system_v_subset(j));
    }
    for (int u = 0; u < ring->size(); ++u)
      consider(system_meets(mult_closure(ring, {u})));
    auto primes = enumerate_primes(ring);
    for (std::size_t p = 0; p < primes.size(); ++p)
      consider(system_primes_avoid(ring, {primes[p]}));
  }
  std::sort(out.begin(), out.end(),
            [](const TopologizingSystem& a, const TopologizingSystem& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              for (std::size_t i = 0; i < a.size(); ++i) {
                if (a.members()[i].members() != b.members()[i].members())
                  return canonical_less(a.members()[i], b.members()[i]);
              }
              return false;
            });
  return out;
}

}  // namespace gloc
