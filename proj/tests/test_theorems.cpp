#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gloc/theorems.hpp"

using namespace gloc;

namespace {
RingMap mod4_map() {
  auto z12 = build_ring("Z/12");
  auto z4 = build_ring("Z/4");
  std::vector<int> im(12);
  for (int i = 0; i < 12; ++i) im[i] = i % 4;
  return RingMap(z12, z4, im);
}
}  // namespace

TEST_CASE("epimorphism oracle") {
  auto z4 = build_ring("Z/4");
  CHECK(is_epimorphism(RingMap::identity(z4)));

  auto q = quotient_ring(z4, Ideal::span(z4, {2}));
  CHECK(is_epimorphism(*q.projection));

  // The diagonal into the product is not an epimorphism.
  auto z2 = build_ring("Z/2");
  auto prod = build_ring("Z/2 x Z/2");
  std::vector<int> diag{prod->zero(), prod->one()};
  RingMap d(z2, prod, diag);
  CHECK(!is_epimorphism(d));
  // Its tensor square is the free rank-2 square, of order 16.
  auto s = module_via_map_regular(d);
  CHECK(tensor(s, s).module()->size() == 16);
}

TEST_CASE("flat epimorphism classification") {
  RingMap phi = mod4_map();
  CHECK(is_flat_epi(phi));
  auto z4 = build_ring("Z/4");
  auto q = quotient_ring(z4, Ideal::span(z4, {2}));
  CHECK(is_epimorphism(*q.projection));
  CHECK(!is_flat_map(*q.projection));
  CHECK(!is_flat_epi(*q.projection));
  CHECK(is_flat_epi(RingMap::identity(z4)));
}

TEST_CASE("flat epi reconstructs as a localization") {
  TheoremReport r = flat_epi_to_localization(mod4_map());
  CHECK(r.pass);
  CHECK(r.witness.at("localized_order").get<int>() == 4);
  CHECK(r.witness.at("system").get<std::string>() ==
        "{{0,3,6,9};{0,1,2,3,4,5,6,7,8,9,10,11}}");

  // Z/12 -> Z/3 along reduction.
  auto z12 = build_ring("Z/12");
  auto z3 = build_ring("Z/3");
  std::vector<int> im(12);
  for (int i = 0; i < 12; ++i) im[i] = i % 3;
  TheoremReport r3 = flat_epi_to_localization(RingMap(z12, z3, im));
  CHECK(r3.pass);
  CHECK(r3.witness.at("localized_order").get<int>() == 3);

  TheoremReport rid =
      flat_epi_to_localization(RingMap::identity(z12));
  CHECK(rid.pass);

  auto z4 = build_ring("Z/4");
  auto q = quotient_ring(z4, Ideal::span(z4, {2}));
  CHECK_THROWS_AS(flat_epi_to_localization(*q.projection),
                  std::invalid_argument);
}

TEST_CASE("the converse route verifies j_R as a flat epimorphism") {
  auto z12 = build_ring("Z/12");
  TopologizingSystem f = system_from_map(mod4_map());
  TheoremReport r = localization_to_flat_epi(f);
  CHECK(r.pass);
  CHECK(r.witness.at("flat").get<bool>());
  CHECK(r.witness.at("epi").get<bool>());

  TheoremReport ru = localization_to_flat_epi(system_unit(z12));
  CHECK(ru.pass);

  auto z6 = build_ring("Z/6");
  TheoremReport r6 =
      localization_to_flat_epi(system_comaximal(Ideal::span(z6, {3})));
  CHECK(r6.pass);
  CHECK(r6.witness.at("localized_order").get<int>() == 3);
}

TEST_CASE("flat quotient criterion") {
  auto z6 = build_ring("Z/6");
  TheoremReport r6 = flat_quotient_report(z6);
  CHECK(r6.pass);
  auto z4 = build_ring("Z/4");
  CHECK(flat_quotient_report(z4).pass);
  CHECK(!is_flat(z4, cyclic_quotient(Ideal::span(z4, {2})).module));
  // Table rings with non-principal ideals also classify cleanly.
  CHECK(flat_quotient_report(table_ring_f2xy()).pass);
  CHECK(flat_quotient_report(table_ring_z4x()).pass);
}

TEST_CASE("seven-condition consistency") {
  auto z6 = build_ring("Z/6");
  for (const auto& f : enumerate_idempotent_systems(z6)) {
    TheoremReport r = exactness_report(f);
    CHECK(r.pass);
    // Over these rings the conditions all evaluate to true.
    for (bool v : r.witness.at("conditions").get<std::vector<bool>>())
      CHECK(v);
  }
}

TEST_CASE("prime correspondence worked example") {
  auto z12 = build_ring("Z/12");
  auto f = system_meets(mult_closure(z12, {4}));
  TheoremReport r = prime_correspondence(f);
  CHECK(r.pass);
  CHECK(r.witness.at("domain_primes").get<int>() == 1);
  CHECK(r.witness.at("codomain_primes").get<int>() == 1);

  TheoremReport ru = prime_correspondence(system_unit(z12));
  CHECK(ru.pass);
  CHECK(ru.witness.at("domain_primes").get<int>() == 2);
}

TEST_CASE("classical and Gabriel localizations coincide") {
  auto z12 = build_ring("Z/12");
  TheoremReport r = classical_vs_gabriel(mult_closure(z12, {4}),
                                         regular_module(z12));
  CHECK(r.pass);
  CHECK(r.witness.at("classical_order").get<int>() == 3);
  CHECK(r.witness.at("localized_order").get<int>() == 3);

  TheoremReport r1 = classical_vs_gabriel(mult_closure(z12, {}),
                                          regular_module(z12));
  CHECK(r1.pass);

  TheoremReport r0 = classical_vs_gabriel(mult_closure(z12, {0}),
                                          regular_module(z12));
  CHECK(r0.pass);
  CHECK(r0.witness.at("classical_order").get<int>() == 1);

  // A module instance rather than the ring.
  TheoremReport rm = classical_vs_gabriel(
      mult_closure(z12, {4}),
      cyclic_quotient(Ideal::span(z12, {3})).module);
  CHECK(rm.pass);
}

TEST_CASE("battery composition") {
  auto rings = battery_rings();
  CHECK(rings.size() == 15);
  int with_nonprincipal = 0;
  for (const auto& ring : rings) {
    bool has = false;
    for (const Ideal& i : enumerate_ideals(ring))
      if (greedy_generators(*module_from_ideal(i).module).gens.size() > 1)
        has = true;
    with_nonprincipal += has;
  }
  CHECK(with_nonprincipal >= 2);

  auto mods = battery_modules(build_ring("Z/12"));
  CHECK(mods.size() == 26);  // 6 cyclic plus the nonzero pair sums
}

TEST_CASE("shipped table rings match the built-in constructors") {
  auto f2xy = build_ring(std::string("@") + GLOC_DATA_DIR +
                         "/rings/f2xy.json");
  CHECK(f2xy->add_table() == table_ring_f2xy()->add_table());
  CHECK(f2xy->mul_table() == table_ring_f2xy()->mul_table());
  auto z4x = build_ring(std::string("@") + GLOC_DATA_DIR +
                        "/rings/z4x.json");
  CHECK(z4x->add_table() == table_ring_z4x()->add_table());
  CHECK(z4x->mul_table() == table_ring_z4x()->mul_table());
  // The advertised non-principal ideals really need two generators.
  Ideal m = Ideal::span(f2xy, {2, 4});
  CHECK(greedy_generators(*module_from_ideal(m).module).gens.size() == 2);
  Ideal m2 = Ideal::span(z4x, {2, 4});
  CHECK(greedy_generators(*module_from_ideal(m2).module).gens.size() == 2);
}

TEST_CASE("mult set enumeration") {
  auto z4 = build_ring("Z/4");
  auto sets = enumerate_mult_sets(z4);
  // {1}, {1,3}, {1,2,0(,3)}, ...: every one closed and containing 1.
  for (const auto& s : sets) {
    CHECK(s.contains(z4->one()));
    for (int a : s.elements())
      for (int b : s.elements()) CHECK(s.contains(z4->mul(a, b)));
  }
  CHECK(sets.size() >= 4);
}

TEST_CASE("report serialization round trip") {
  TheoremReport r;
  r.theorem_id = "flat-quotient-criterion";
  r.instance = {{"ring", "Z/6"}};
  r.pass = true;
  r.witness = {{"violations", nlohmann::json::array()}};
  r.ms = 42;
  nlohmann::json j = report_json(r, true);
  std::string line = j.dump();
  TheoremReport back = report_from_json(nlohmann::json::parse(line));
  CHECK(report_json(back, true).dump() == line);
  // Without timings the ms field reads 0 deterministically.
  CHECK(report_json(r, false).at("ms").get<int>() == 0);
}

TEST_CASE("lemma battery on a small ring") {
  auto z4 = build_ring("Z/4");
  auto reports = lemma_battery(z4, default_budget(), 7);
  CHECK(!reports.empty());
  for (const auto& r : reports) {
    CAPTURE(r.theorem_id);
    CAPTURE(r.instance.dump());
    CAPTURE(r.witness.dump());
    CHECK(r.pass);
  }
}

TEST_CASE("the zero ring verifies trivially") {
  auto z1 = build_ring("Z/1");
  for (const auto& r : verify_ring(z1, default_budget(), 3)) {
    CAPTURE(r.theorem_id);
    CHECK(r.pass);
  }
}

TEST_CASE("witnesses replay deterministically") {
  auto z6 = build_ring("Z/6");
  auto a = verify_ring(z6, default_budget(), 5);
  auto b = verify_ring(z6, default_budget(), 5);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(report_json(a[i], false).dump() ==
          report_json(b[i], false).dump());
  }
}
