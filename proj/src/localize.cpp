#include "gloc/localize.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace gloc {

const LocalizeChecks& LocalizeChecks::defaults() {
  static const LocalizeChecks c{};
  return c;
}

namespace {

// Position lookup of each sub element inside the super element list.
std::vector<int> positions_in(const std::vector<int>& sub,
                              const std::vector<int>& super) {
  std::vector<int> out;
  out.reserve(sub.size());
  for (int a : sub) {
    auto it = std::lower_bound(super.begin(), super.end(), a);
    require(it != super.end() && *it == a,
            "restriction outside the containing ideal");
    out.push_back(int(it - super.begin()));
  }
  return out;
}

// Images of rep (a hom out of the module of dom_elems) restricted to the
// sub ideal with element list sub_elems.
std::vector<int> restrict_images(const std::vector<int>& rep_images,
                                 const std::vector<int>& dom_elems,
                                 const std::vector<int>& sub_elems) {
  std::vector<int> out;
  out.reserve(sub_elems.size());
  for (int p : positions_in(sub_elems, dom_elems))
    out.push_back(rep_images[p]);
  return out;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// The general colimit: disjoint union of Hom(I, target) over all members,
// two representatives identified when they agree after restriction to
// some member inside both domains. Verified isomorphic (via restriction
// to I0) to the shortcut carrier.
void cross_check_general_colimit(const TopologizingSystem& f,
                                 const ModulePtr& target,
                                 const HomModule& carrier,
                                 const std::vector<int>& i0_elems,
                                 const Budget& budget) {
  struct Stage {
    std::vector<int> elems;
    std::vector<ModuleHom> homs;
  };
  std::vector<Stage> stages;
  std::vector<std::pair<int, int>> nodes;  // (stage, hom)
  for (const Ideal& i : f.members()) {
    Stage st;
    st.elems = i.elements();
    st.homs = hom_set(module_from_ideal(i).module, target, budget);
    for (std::size_t h = 0; h < st.homs.size(); ++h)
      nodes.emplace_back(int(stages.size()), int(h));
    stages.push_back(std::move(st));
  }
  // Member element lists for the candidate common domains.
  std::vector<std::vector<int>> member_elems;
  for (const Ideal& i : f.members()) member_elems.push_back(i.elements());

  Dsu dsu(int(nodes.size()));
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const auto& [sa, ha] = nodes[a];
      const auto& [sb, hb] = nodes[b];
      bool eq = false;
      for (std::size_t l = 0; l < f.members().size() && !eq; ++l) {
        const Bitset& lm = f.members()[l].members();
        if (!lm.is_subset_of(f.members()[sa].members()) ||
            !lm.is_subset_of(f.members()[sb].members()))
          continue;
        auto ra = restrict_images(stages[sa].homs[ha].images(),
                                  stages[sa].elems, member_elems[l]);
        auto rb = restrict_images(stages[sb].homs[hb].images(),
                                  stages[sb].elems, member_elems[l]);
        eq = (ra == rb);
      }
      if (eq) dsu.unite(int(a), int(b));
    }
  // Each class restricts to one carrier element; the assignment must be a
  // bijection.
  std::map<int, int> class_to_elem;
  Bitset hit(carrier.homs.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const auto& [s, h] = nodes[a];
    int elem = carrier.index_of(
        restrict_images(stages[s].homs[h].images(), stages[s].elems,
                        i0_elems));
    require(elem >= 0, "colimit node restricts outside the carrier");
    auto [it, fresh] = class_to_elem.emplace(dsu.find(int(a)), elem);
    require(it->second == elem,
            "colimit class restricts to two distinct carrier elements");
    (void)fresh;
    hit.set(elem);
  }
  require(class_to_elem.size() == carrier.homs.size(),
          "general colimit and shortcut carrier have different sizes");
  require(hit.count() == carrier.homs.size(),
          "restriction to the minimum ideal is not surjective");
  // Additivity of the identification on every pair of classes, using the
  // intersection of the domains as the common refinement.
  std::vector<std::pair<int, int>> reps;  // one node per class
  {
    std::map<int, int> seen;
    for (std::size_t a = 0; a < nodes.size(); ++a)
      if (seen.emplace(dsu.find(int(a)), int(a)).second)
        reps.push_back(nodes[a]);
  }
  const FiniteModule& tm = *target;
  for (const auto& [sa, ha] : reps)
    for (const auto& [sb, hb] : reps) {
      // Common domain: the intersection, found among the members.
      Bitset meet =
          f.members()[sa].members() & f.members()[sb].members();
      int l = -1;
      for (std::size_t t = 0; t < f.members().size(); ++t)
        if (f.members()[t].members() == meet) l = int(t);
      require(l >= 0, "member intersection missing from the system");
      auto ra = restrict_images(stages[sa].homs[ha].images(),
                                stages[sa].elems, member_elems[l]);
      auto rb = restrict_images(stages[sb].homs[hb].images(),
                                stages[sb].elems, member_elems[l]);
      std::vector<int> sum(ra.size());
      for (std::size_t p = 0; p < ra.size(); ++p)
        sum[p] = tm.add(ra[p], rb[p]);
      int via_sum =
          carrier.index_of(restrict_images(sum, member_elems[l], i0_elems));
      int ea = carrier.index_of(
          restrict_images(stages[sa].homs[ha].images(), stages[sa].elems,
                          i0_elems));
      int eb = carrier.index_of(
          restrict_images(stages[sb].homs[hb].images(), stages[sb].elems,
                          i0_elems));
      require(via_sum == carrier.module->add(ea, eb),
              "colimit addition disagrees with the carrier addition");
    }
}

Ideal verified_minimum(const TopologizingSystem& f) {
  Bitset meet = f.members().front().members();
  for (const Ideal& i : f.members()) meet &= i.members();
  Ideal i0 = f.minimum_ideal();
  require(meet == i0.members(),
          "minimum member is not the intersection of the system");
  return i0;
}

}  // namespace

PreLocalization pre_localize(const TopologizingSystem& f, const ModulePtr& m,
                             const Budget& budget,
                             const LocalizeChecks& checks) {
  if (f.ring() != m->ring())
    throw std::invalid_argument("system and module live on different rings");
  Ideal i0 = verified_minimum(f);
  ModuleWithHom i0m = module_from_ideal(i0);
  std::vector<int> elems = i0.elements();
  HomModule carrier = hom_module(i0m.module, m, budget);
  std::vector<int> delta_images(m->size());
  std::vector<int> tmp(elems.size());
  for (int x = 0; x < m->size(); ++x) {
    for (std::size_t p = 0; p < elems.size(); ++p)
      tmp[p] = m->act(elems[p], x);
    int id = carrier.index_of(tmp);
    require(id >= 0, "evaluation hom missing from the carrier");
    delta_images[x] = id;
  }
  ModuleHom delta =
      ModuleHom::unchecked(m, carrier.module, std::move(delta_images));
  require(delta.kernel_set() == torsion_set(f, *m),
          "kernel of the canonical map differs from the torsion submodule");
  // The cokernel is F-negligible: each class is annihilated by a member.
  {
    Bitset im = delta.image_set();
    const FiniteModule& c = *carrier.module;
    const RingPtr& ring = f.ring();
    for (int x = 0; x < c.size(); ++x) {
      Bitset ann(ring->size());  // annihilator of the class of x
      for (int r = 0; r < ring->size(); ++r)
        if (im.test(c.act(r, x))) ann.set(r);
      require(f.contains(ann),
              "cokernel of the canonical map is not negligible");
    }
  }
  if (checks.colimit_cross_check)
    cross_check_general_colimit(f, m, carrier, elems, budget);
  return PreLocalization{f,     m,     std::move(i0), i0m.module,
                         elems, std::move(carrier),
                         std::move(delta)};
}

GabrielLocalization localize(const TopologizingSystem& f, const ModulePtr& m,
                             const Budget& budget,
                             const LocalizeChecks& checks) {
  if (f.ring() != m->ring())
    throw std::invalid_argument("system and module live on different rings");
  if (!is_idempotent(f))
    throw std::invalid_argument("localization requires an idempotent system: " +
                                f.to_string());
  Ideal i0 = verified_minimum(f);
  ModuleWithHom i0m = module_from_ideal(i0);
  std::vector<int> elems = i0.elements();
  Bitset torsion = torsion_set(f, *m);
  ModuleWithHom q = quotient_module(m, torsion);
  require(torsion_set(f, *q.module).count() == 1,
          "the quotient by the torsion still has torsion");
  HomModule carrier = hom_module(i0m.module, q.module, budget);
  std::vector<int> j_images(m->size());
  std::vector<int> tmp(elems.size());
  for (int x = 0; x < m->size(); ++x) {
    for (std::size_t p = 0; p < elems.size(); ++p)
      tmp[p] = q.hom(m->act(elems[p], x));
    int id = carrier.index_of(tmp);
    require(id >= 0, "evaluation hom missing from the carrier");
    j_images[x] = id;
  }
  ModuleHom j = ModuleHom::unchecked(m, carrier.module, std::move(j_images));
  require(j.kernel_set() == torsion, "Ker(j) differs from the torsion");
  require(torsion_set(f, *carrier.module).count() == 1,
          "the localized module has nonzero torsion");
  {
    Bitset im = j.image_set();
    const FiniteModule& c = *carrier.module;
    const RingPtr& ring = f.ring();
    for (int x = 0; x < c.size(); ++x) {
      Bitset ann(ring->size());
      for (int r = 0; r < ring->size(); ++r)
        if (im.test(c.act(r, x))) ann.set(r);
      require(f.contains(ann), "Coker(j) is not negligible");
    }
  }
  if (checks.colimit_cross_check)
    cross_check_general_colimit(f, q.module, carrier, elems, budget);
  return GabrielLocalization{f,
                             m,
                             std::move(i0),
                             i0m.module,
                             std::move(elems),
                             std::move(torsion),
                             q.module,
                             std::move(q.hom),
                             std::move(carrier),
                             std::move(j)};
}

int GabrielLocalization::element_of(const Ideal& domain,
                                    const ModuleHom& rep) const {
  require(system.contains(domain),
          "representative domain is not a member of the system");
  require(FiniteModule::same_structure(*rep.target(), *quotient),
          "representative does not land in M/F(M)");
  int id = carrier.index_of(
      restrict_images(rep.images(), domain.elements(), ideal_elements));
  require(id >= 0, "restriction missing from the carrier");
  return id;
}

namespace {

// Pairing of two shortcut representatives: (f.g)(a) = g(lift(f(a))).
// lift picks a representative of the coset inside I0; it exists because
// the preimage of the projected minimum ideal is again a member.
int pair_indices(const GabrielLocalization& rf_base,
                 const std::vector<int>& lift,
                 const GabrielLocalization& mf, int z, int x) {
  const ModuleHom& fz = rf_base.carrier.homs[z];
  const ModuleHom& gx = mf.carrier.homs[x];
  const int len = int(rf_base.ideal_elements.size());
  std::vector<int> out(len);
  for (int p = 0; p < len; ++p) {
    int pos = lift[fz(p)];
    require(pos >= 0, "pairing lift missing: representative escapes I0");
    out[p] = gx(pos);
  }
  int id = mf.carrier.index_of(out);
  require(id >= 0, "pairing image missing from the carrier");
  return id;
}

// Sampled representative independence of the pairing: products computed
// from representatives on arbitrary member ideals agree with the
// shortcut pairing of their classes.
void sample_pairing_independence(const LocalizedRing& rf,
                                 const GabrielLocalization& mf,
                                 const Budget& budget,
                                 const LocalizeChecks& checks) {
  if (checks.pairing_samples <= 0) return;
  std::mt19937_64 rng(derive_seed(checks.seed, "pairing"));
  const TopologizingSystem& f = rf.base.system;
  const ModulePtr qr = rf.base.quotient;
  const ModulePtr qm = mf.quotient;
  // Hom sets per member, computed lazily.
  std::map<int, std::vector<ModuleHom>> homs_r, homs_m;
  std::map<int, std::vector<int>> elems_of;
  auto stage = [&](int idx, bool ring_side) -> std::vector<ModuleHom>& {
    auto& store = ring_side ? homs_r : homs_m;
    auto it = store.find(idx);
    if (it == store.end()) {
      const Ideal& ideal = f.members()[idx];
      elems_of[idx] = ideal.elements();
      it = store
               .emplace(idx, hom_set(module_from_ideal(ideal).module,
                                     ring_side ? qr : qm, budget))
               .first;
    }
    return it->second;
  };
  // Projection of each member ideal into R/F(R), for the domain
  // restriction of the left factor.
  const ModuleHom& proj_r = rf.base.quotient_proj;
  for (int s = 0; s < checks.pairing_samples; ++s) {
    int ia = int(rng() % f.members().size());
    int ib = int(rng() % f.members().size());
    auto& ha = stage(ia, true);
    auto& hb = stage(ib, false);
    if (ha.empty() || hb.empty()) continue;
    const ModuleHom& fa = ha[rng() % ha.size()];
    const ModuleHom& gb = hb[rng() % hb.size()];
    const auto& ea = elems_of[ia];
    const auto& eb = elems_of[ib];
    // J-bar: the cosets the second domain projects to, with a consistent
    // section.
    std::vector<int> section(qr->size(), -1);
    for (std::size_t p = 0; p < eb.size(); ++p) {
      int q = proj_r(eb[p]);
      if (section[q] < 0) {
        section[q] = int(p);
      } else {
        require(gb(section[q]) == gb(int(p)),
                "second factor is not constant on torsion cosets");
      }
    }
    // L = fa^{-1}(J-bar) inside the first domain.
    std::vector<int> l_elems;
    for (std::size_t p = 0; p < ea.size(); ++p)
      if (section[fa(int(p))] >= 0) l_elems.push_back(ea[p]);
    Bitset l_mask(f.ring()->size());
    for (int a : l_elems) l_mask.set(a);
    require(is_submodule(*regular_module(f.ring()), l_mask),
            "pairing domain is not an ideal");
    require(f.contains(l_mask), "pairing domain left the system");
    // General product on L, then its class.
    std::vector<int> prod(l_elems.size());
    auto pos_a = positions_in(l_elems, ea);
    for (std::size_t p = 0; p < l_elems.size(); ++p)
      prod[p] = gb(section[fa(pos_a[p])]);
    int general = mf.carrier.index_of(
        restrict_images(prod, l_elems, mf.ideal_elements));
    require(general >= 0, "general pairing image missing from the carrier");
    // Shortcut pairing of the restricted classes.
    int za = rf.base.carrier.index_of(restrict_images(
        fa.images(), ea, rf.base.ideal_elements));
    int xb = mf.carrier.index_of(restrict_images(gb.images(), eb,
                                                 mf.ideal_elements));
    require(za >= 0 && xb >= 0, "restriction missing from the carrier");
    require(rf.pair_action(za, mf, xb) == general,
            "pairing depends on the representatives");
  }
}

}  // namespace

int LocalizedRing::pair_action(int z, const GabrielLocalization& mf,
                               int x) const {
  return pair_indices(base, lift, mf, z, x);
}

LocalizedRing ring_structure(const TopologizingSystem& f, const Budget& budget,
                             const LocalizeChecks& checks) {
  GabrielLocalization base = localize(f, regular_module(f.ring()), budget,
                                      checks);
  const ModulePtr& qr = base.quotient;
  std::vector<int> lift(qr->size(), -1);
  for (std::size_t p = 0; p < base.ideal_elements.size(); ++p) {
    int q = base.quotient_proj(base.ideal_elements[p]);
    if (lift[q] < 0) lift[q] = int(p);
  }
  const int c = int(base.carrier.homs.size());
  std::vector<int> mul(std::size_t(c) * c);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j)
      mul[std::size_t(i) * c + j] = pair_indices(base, lift, base, i, j);
  // The unit is the class of the projection restricted to I0.
  std::vector<int> pi_images(base.ideal_elements.size());
  for (std::size_t p = 0; p < base.ideal_elements.size(); ++p)
    pi_images[p] = base.quotient_proj(base.ideal_elements[p]);
  int one = base.carrier.index_of(pi_images);
  require(one >= 0, "unit class missing from the carrier");
  Budget ring_budget = budget;
  ring_budget.ring_order_limit =
      std::max<int>(ring_budget.ring_order_limit, c);
  RingPtr view = FiniteRing::make(
      c, base.carrier.module->add_table(), std::move(mul),
      base.carrier.module->zero(), one,
      "(" + f.ring()->label() + ")_F", ring_budget);
  RingMap j_ring(f.ring(), view, base.j.images());
  LocalizedRing rf{std::move(base), std::move(view), std::move(j_ring),
                   std::move(lift)};
  sample_pairing_independence(rf, rf.base, budget, checks);
  return rf;
}

ModulePtr module_over_localized_ring(const LocalizedRing& rf,
                                     const GabrielLocalization& mf,
                                     const Budget& budget) {
  require(rf.base.system == mf.system,
          "ring and module were localized at different systems");
  const int c = int(mf.carrier.homs.size());
  const int n = rf.ring_view->size();
  std::vector<int> act(std::size_t(n) * c);
  for (int z = 0; z < n; ++z)
    for (int x = 0; x < c; ++x)
      act[std::size_t(z) * c + x] = rf.pair_action(z, mf, x);
  return FiniteModule::make(rf.ring_view, c, mf.carrier.module->add_table(),
                            std::move(act), mf.carrier.module->zero(),
                            mf.source->label() + "_F over " +
                                rf.ring_view->label(),
                            budget);
}

ModuleHom localize_hom(const GabrielLocalization& mf,
                       const GabrielLocalization& nf, const ModuleHom& u,
                       const LocalizedRing* rf) {
  require(mf.system == nf.system, "localizations at different systems");
  require(FiniteModule::same_structure(*u.source(), *mf.source) &&
              FiniteModule::same_structure(*u.target(), *nf.source),
          "hom endpoints do not match the localizations");
  // The induced map on the torsion-free quotients.
  const FiniteModule& qm = *mf.quotient;
  std::vector<int> preimage(qm.size(), -1);
  for (int x = 0; x < mf.source->size(); ++x) {
    int q = mf.quotient_proj(x);
    if (preimage[q] < 0) preimage[q] = x;
  }
  std::vector<int> ubar(qm.size());
  for (int q = 0; q < qm.size(); ++q)
    ubar[q] = nf.quotient_proj(u(preimage[q]));
  // u_F([f]) = [ubar o f] on the shortcut carrier.
  const int c = int(mf.carrier.homs.size());
  std::vector<int> images(c);
  for (int z = 0; z < c; ++z) {
    const ModuleHom& h = mf.carrier.homs[z];
    std::vector<int> img(mf.ideal_elements.size());
    for (std::size_t p = 0; p < img.size(); ++p) img[p] = ubar[h(int(p))];
    int id = nf.carrier.index_of(img);
    require(id >= 0, "localized image missing from the carrier");
    images[z] = id;
  }
  ModuleHom uf(mf.carrier.module, nf.carrier.module, std::move(images));
  for (int x = 0; x < mf.source->size(); ++x)
    require(uf(mf.j(x)) == nf.j(u(x)),
            "localized hom does not commute with the canonical maps");
  if (rf) {
    for (int z = 0; z < rf->ring_view->size(); ++z)
      for (int x = 0; x < c; ++x)
        require(uf(rf->pair_action(z, mf, x)) ==
                    rf->pair_action(z, nf, uf(x)),
                "localized hom is not linear over the localized ring");
  }
  return uf;
}

ModuleHom universal_map(const GabrielLocalization& nf, const ModuleHom& f,
                        const ModuleHom& g) {
  require(FiniteModule::same_structure(*f.target(), *nf.source),
          "first map must land in the module being localized");
  require(FiniteModule::same_structure(*f.source(), *g.source()),
          "maps must share their source");
  const TopologizingSystem& sys = nf.system;
  if (!is_negligible(sys, *kernel(g).module))
    throw std::invalid_argument("kernel of g is not negligible");
  if (!is_negligible(sys, *cokernel(g).module))
    throw std::invalid_argument("cokernel of g is not negligible");
  const ModulePtr& p = g.target();
  const ModulePtr& m = g.source();
  const int len = int(nf.ideal_elements.size());
  std::vector<int> images(p->size());
  std::vector<int> img(len);
  for (int x = 0; x < p->size(); ++x) {
    for (int t = 0; t < len; ++t) {
      int ax = p->act(nf.ideal_elements[t], x);
      int found = -1;
      for (int mm = 0; mm < m->size(); ++mm)
        if (g(mm) == ax) {
          found = mm;
          break;
        }
      require(found >= 0,
              "minimum ideal does not annihilate the cokernel class");
      img[t] = nf.quotient_proj(f(found));
    }
    int id = nf.carrier.index_of(img);
    require(id >= 0, "universal image missing from the carrier");
    images[x] = id;
  }
  ModuleHom h(p, nf.carrier.module, std::move(images));
  for (int x = 0; x < m->size(); ++x)
    require(h(g(x)) == nf.j(f(x)), "universal map square does not commute");
  return h;
}

SigmaMap sigma_map(const LocalizedRing& rf, const GabrielLocalization& mf,
                   const Budget& budget) {
  TensorProduct t = tensor(rf.base.carrier.module, mf.source, budget);
  ModuleHom sigma = induced_from_bilinear(
      t, mf.carrier.module,
      [&](int z, int m) { return rf.pair_action(z, mf, mf.j(m)); });
  return SigmaMap{std::move(t), std::move(sigma)};
}

bool is_closed(const TopologizingSystem& f, const ModulePtr& m,
               const Budget& budget, const LocalizeChecks& checks) {
  return localize(f, m, budget, checks).j.is_bijective();
}

bool is_strongly_closed(const TopologizingSystem& f, const ModulePtr& m,
                        const Budget& budget) {
  for (const Ideal& i : f.members()) {
    HomModule homs = hom_module(module_from_ideal(i).module, m, budget);
    const std::vector<int> elems = i.elements();
    std::vector<int> ev(m->size());
    std::vector<int> img(elems.size());
    for (int x = 0; x < m->size(); ++x) {
      for (std::size_t p = 0; p < elems.size(); ++p)
        img[p] = m->act(elems[p], x);
      int id = homs.index_of(img);
      require(id >= 0, "evaluation hom missing from Hom(I, M)");
      ev[x] = id;
    }
    ModuleHom e = ModuleHom::unchecked(m, homs.module, std::move(ev));
    if (!e.is_bijective()) return false;
  }
  return true;
}

Bitset ideal_localization(const GabrielLocalization& rf_base, const Ideal& i,
                          const Budget& budget, const LocalizeChecks& checks) {
  ModuleWithHom im = module_from_ideal(i);
  GabrielLocalization iloc = localize(rf_base.system, im.module, budget,
                                      checks);
  ModuleHom inc_f = localize_hom(iloc, rf_base, im.hom);
  require(inc_f.is_injective(), "localized inclusion is not injective");
  return inc_f.image_set();
}

Bitset extended_ideal(const LocalizedRing& rf, const Ideal& i) {
  Bitset seed(rf.ring_view->size());
  for (int a : i.elements()) seed.set(rf.j_ring(a));
  return ideal_closure(*rf.ring_view, seed);
}

PullbackReport submodule_pullback_check(const GabrielLocalization& mf,
                                        const Bitset& n, const Budget& budget,
                                        const LocalizeChecks& checks) {
  PullbackReport report;
  const ModulePtr& mfc = mf.carrier.module;
  require(is_submodule(*mfc, n), "pullback check needs a submodule of M_F");
  // Left side: localize j^{-1}(N) and push it forward.
  Bitset nprime(mf.source->size());
  for (int x = 0; x < mf.source->size(); ++x)
    if (n.test(mf.j(x))) nprime.set(x);
  ModuleWithHom npm = submodule_module(mf.source, nprime);
  GabrielLocalization nploc = localize(mf.system, npm.module, budget, checks);
  ModuleHom np_f = localize_hom(nploc, mf, npm.hom);
  Bitset lhs = np_f.image_set();
  // Right side: localize M_F and N, and pull N_F back along j_{M_F}.
  GabrielLocalization mff = localize(mf.system, mfc, budget, checks);
  ModuleWithHom nm = submodule_module(mfc, n);
  GabrielLocalization nloc = localize(mf.system, nm.module, budget, checks);
  ModuleHom n_f = localize_hom(nloc, mff, nm.hom);
  require(n_f.is_injective(), "localized inclusion is not injective");
  Bitset nf_image = n_f.image_set();
  Bitset rhs(mfc->size());
  for (int x = 0; x < mfc->size(); ++x)
    if (nf_image.test(mff.j(x))) rhs.set(x);
  report.first_equal = (lhs == rhs);
  if (!report.first_equal) report.detail = "localized pullback mismatch";
  ModuleWithHom quot = quotient_module(mfc, n);
  report.quotient_torsion_free =
      torsion_set(mf.system, *quot.module).count() == 1;
  if (report.quotient_torsion_free) {
    report.second_equal = (n == rhs);
    if (!report.second_equal) report.detail = "saturated submodule moved";
  }
  return report;
}

}  // namespace gloc
