#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gloc/localize.hpp"

using namespace gloc;

namespace {
TopologizingSystem meets4_z12() {
  auto z12 = build_ring("Z/12");
  return system_meets(mult_closure(z12, {4}));
}
}  // namespace

TEST_CASE("pre-localization") {
  auto z12 = build_ring("Z/12");
  auto unit = system_unit(z12);
  auto p = pre_localize(unit, regular_module(z12));
  CHECK(p.carrier.module->size() == 12);
  CHECK(p.delta.is_bijective());

  // A non-idempotent system still pre-localizes.
  auto z4 = build_ring("Z/4");
  auto f = make_system(z4, {Ideal::unit_ideal(z4), Ideal::span(z4, {2})});
  auto p4 = pre_localize(f, regular_module(z4));
  CHECK(p4.carrier.module->size() == 2);
  CHECK(p4.delta.kernel_set().elements() == std::vector<int>{0, 2});

  // With the zero ideal in the system everything collapses.
  auto all = system_all(z4);
  CHECK(pre_localize(all, regular_module(z4)).carrier.module->size() == 1);
}

TEST_CASE("localization worked example on Z/12") {
  auto f = meets4_z12();
  auto z12 = f.ring();
  auto mf = localize(f, regular_module(z12));
  CHECK(format_ideal(mf.witness_ideal) == "{0,4,8}");
  CHECK(mf.torsion.elements() == std::vector<int>{0, 3, 6, 9});
  CHECK(mf.carrier.module->size() == 3);
  CHECK(mf.j.kernel_set() == mf.torsion);
}

TEST_CASE("localize requires idempotent systems") {
  auto z4 = build_ring("Z/4");
  auto f = make_system(z4, {Ideal::unit_ideal(z4), Ideal::span(z4, {2})});
  CHECK_THROWS_AS(localize(f, regular_module(z4)), std::invalid_argument);
}

TEST_CASE("vanishing") {
  auto z6 = build_ring("Z/6");
  auto f = system_comaximal(Ideal::span(z6, {3}));
  auto neg = cyclic_quotient(Ideal::span(z6, {2})).module;
  CHECK(localize(f, neg).carrier.module->size() == 1);
  auto not_neg = regular_module(z6);
  CHECK(localize(f, not_neg).carrier.module->size() > 1);
}

TEST_CASE("localized ring structures") {
  auto f = meets4_z12();
  auto rf = ring_structure(f);
  CHECK(rf.ring_view->size() == 3);
  CHECK(find_ring_iso(rf.ring_view, build_ring("Z/3")).has_value());

  auto z12 = f.ring();
  auto z4 = build_ring("Z/4");
  std::vector<int> im(12);
  for (int i = 0; i < 12; ++i) im[i] = i % 4;
  auto f2 = system_from_map(RingMap(z12, z4, im));
  auto rf2 = ring_structure(f2);
  CHECK(find_ring_iso(rf2.ring_view, z4).has_value());

  auto unit = system_unit(z12);
  auto rfu = ring_structure(unit);
  CHECK(find_ring_iso(rfu.ring_view, z12).has_value());
  CHECK(rfu.base.j.is_bijective());
}

TEST_CASE("localizing homs is functorial") {
  auto f = meets4_z12();
  auto z12 = f.ring();
  auto reg = regular_module(z12);
  auto rf = ring_structure(f);
  auto mf = localize(f, reg);

  ModuleHom idf = localize_hom(mf, mf, ModuleHom::identity(reg), &rf);
  CHECK(idf == ModuleHom::identity(mf.carrier.module));

  // j_M localizes to the iterated-canonical map, which is bijective.
  auto mff = localize(f, mf.carrier.module);
  ModuleHom jf = localize_hom(mf, mff, mf.j);
  CHECK(jf.is_bijective());
  CHECK(jf.images() == mff.j.images());

  // Composition is preserved.
  auto q = cyclic_quotient(Ideal::span(z12, {4}));
  auto qf = localize(f, q.module);
  ModuleHom pf = localize_hom(mf, qf, q.hom);
  ModuleHom round = compose(pf, idf);
  CHECK(round == pf);
}

TEST_CASE("universal maps") {
  auto f = meets4_z12();
  auto z12 = f.ring();
  auto reg = regular_module(z12);
  auto nf = localize(f, reg);

  // g = identity gives h = j o f.
  ModuleHom h = universal_map(nf, ModuleHom::identity(reg),
                              ModuleHom::identity(reg));
  CHECK(h.images() == nf.j.images());

  // f = 0 forces h = 0.
  ModuleHom z = universal_map(nf, ModuleHom::zero_map(reg, reg),
                              ModuleHom::identity(reg));
  CHECK(z == ModuleHom::zero_map(reg, nf.carrier.module));

  // A kernel outside the torsion is rejected: Ker = (2), Ann(2) = (6)
  // does not meet {1,4}.
  auto proj2 = cyclic_quotient(Ideal::span(z12, {2}));
  CHECK_THROWS_AS(
      universal_map(nf, ModuleHom::identity(reg), proj2.hom),
      std::invalid_argument);
}

TEST_CASE("sigma maps") {
  auto z12 = build_ring("Z/12");
  auto z4 = build_ring("Z/4");
  std::vector<int> im(12);
  for (int i = 0; i < 12; ++i) im[i] = i % 4;
  auto f = system_from_map(RingMap(z12, z4, im));
  auto rf = ring_structure(f);

  // sigma_R is always bijective.
  auto sr = sigma_map(rf, rf.base);
  CHECK(sr.map.is_bijective());

  auto m = cyclic_quotient(Ideal::span(z12, {4})).module;
  auto mf = localize(f, m);
  auto sm = sigma_map(rf, mf);
  CHECK(sm.map.is_bijective());
  CHECK(sm.tensor_product.module()->size() == 4);

  // Naturality square against a quotient map.
  auto q = cyclic_quotient(Ideal::span(z12, {4}));
  ModuleHom uf = localize_hom(rf.base, mf, q.hom);
  auto sn = sigma_map(rf, mf);
  for (int z = 0; z < rf.ring_view->size(); ++z)
    for (int x = 0; x < 12; ++x) {
      int left = sn.map(sn.tensor_product.pure(z, q.hom(x)));
      int right = uf(sr.map(sr.tensor_product.pure(z, x)));
      CHECK(left == right);
    }
}

TEST_CASE("closed and strongly closed modules") {
  auto f = meets4_z12();
  auto z12 = f.ring();
  auto mf = localize(f, regular_module(z12));
  CHECK(is_closed(f, mf.carrier.module));
  CHECK(is_strongly_closed(f, mf.carrier.module));

  auto unit = system_unit(z12);
  CHECK(is_closed(unit, regular_module(z12)));
  CHECK(!is_closed(f, regular_module(z12)));  // kernel {0,3,6,9}
}

TEST_CASE("ideal localization against extension") {
  auto z12 = build_ring("Z/12");
  auto z4 = build_ring("Z/4");
  std::vector<int> im(12);
  for (int i = 0; i < 12; ++i) im[i] = i % 4;
  auto f = system_from_map(RingMap(z12, z4, im));
  auto rf = ring_structure(f);
  const std::size_t full = rf.ring_view->size();

  CHECK(ideal_localization(rf.base, Ideal::span(z12, {3})).count() == full);
  CHECK(ideal_localization(rf.base, Ideal::unit_ideal(z12)).count() == full);
  // An ideal inside the torsion localizes to zero.
  CHECK(ideal_localization(rf.base, Ideal::span(z12, {4})).count() == 1);
  for (const Ideal& i : enumerate_ideals(z12))
    CHECK(extended_ideal(rf, i).is_subset_of(
        ideal_localization(rf.base, i)));
}

TEST_CASE("pullback of submodules") {
  auto f = meets4_z12();
  auto mf = localize(f, regular_module(f.ring()));
  bool saw_proper = false;
  for (const Bitset& sub : enumerate_submodules(*mf.carrier.module)) {
    PullbackReport pr = submodule_pullback_check(mf, sub);
    CHECK(pr.first_equal);
    if (pr.quotient_torsion_free) CHECK(pr.second_equal);
    if (sub.count() > 1 && sub.count() < std::size_t(mf.carrier.module->size()))
      saw_proper = true;
  }
  (void)saw_proper;
}

TEST_CASE("class map accepts representatives on any member") {
  auto f = meets4_z12();
  auto z12 = f.ring();
  auto mf = localize(f, regular_module(z12));
  // A representative defined on (2) restricted to I0 = (4).
  Ideal two = Ideal::span(z12, {2});
  auto two_mod = module_from_ideal(two).module;
  auto homs = hom_set(two_mod, mf.quotient);
  REQUIRE(!homs.empty());
  for (const auto& h : homs) {
    int cls = mf.element_of(two, h);
    CHECK(cls >= 0);
    CHECK(cls < mf.carrier.module->size());
  }
}

TEST_CASE("degenerate systems") {
  auto z6 = build_ring("Z/6");
  auto all = system_all(z6);
  auto rf = ring_structure(all);
  CHECK(rf.ring_view->size() == 1);  // the zero ring
  auto z1 = build_ring("Z/1");
  auto rz1 = ring_structure(system_unit(z1));
  CHECK(rz1.ring_view->size() == 1);
}
