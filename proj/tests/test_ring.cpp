#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "gloc/ring.hpp"

using namespace gloc;

TEST_CASE("ring spec grammar") {
  auto z1 = build_ring("Z/1");
  CHECK(z1->size() == 1);
  CHECK(z1->zero() == z1->one());

  auto z6 = build_ring("Z/6");
  CHECK(z6->size() == 6);
  CHECK(z6->add(4, 5) == 3);
  CHECK(z6->mul(4, 5) == 2);

  auto prod = build_ring("Z/2 x Z/3");
  CHECK(prod->size() == 6);
  CHECK(prod->label() == "Z/2 x Z/3");

  CHECK_THROWS_AS(build_ring("Z/"), ParseError);
  CHECK_THROWS_AS(build_ring("Q"), ParseError);
  CHECK_THROWS_AS(build_ring(""), ParseError);
  CHECK_THROWS_AS(build_ring("Z/0"), ParseError);
  CHECK_THROWS_AS(build_ring("Z/100"), BudgetError);
}

TEST_CASE("table ring loader validates and reports witnesses") {
  std::string good = R"({"order":2,"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]],
                         "zero":0,"one":1,"label":"F2"})";
  auto f2 = ring_from_json_text(good);
  CHECK(f2->size() == 2);
  CHECK(f2->label() == "F2");

  // A broken multiplication table names the first failing triple.
  std::string bad = R"({"order":2,"add":[[0,1],[1,0]],"mul":[[0,1],[0,1]],
                        "zero":0,"one":1,"label":"broken"})";
  CHECK_THROWS_WITH_AS(ring_from_json_text(bad),
                       doctest::Contains("mul-comm"), AxiomError);

  std::string tmp = "/tmp/gloc_test_ring.json";
  {
    std::ofstream out(tmp);
    out << good;
  }
  auto loaded = build_ring("@" + tmp);
  CHECK(loaded->size() == 2);
  std::remove(tmp.c_str());
  CHECK_THROWS_AS(build_ring("@/nonexistent/file.json"), ParseError);
}

TEST_CASE("ideal enumeration is canonical and complete") {
  auto z4 = build_ring("Z/4");
  auto i4 = enumerate_ideals(z4);
  REQUIRE(i4.size() == 3);
  CHECK(format_ideal(i4[0]) == "{0}");
  CHECK(format_ideal(i4[1]) == "{0,2}");
  CHECK(format_ideal(i4[2]) == "{0,1,2,3}");

  auto z12 = build_ring("Z/12");
  auto i12 = enumerate_ideals(z12);
  CHECK(i12.size() == 6);

  auto z7 = build_ring("Z/7");
  CHECK(enumerate_ideals(z7).size() == 2);  // fields have no proper ideals
}

TEST_CASE("ideal lattice closed under arithmetic") {
  for (const char* spec : {"Z/12", "Z/8", "Z/6", "Z/2 x Z/3"}) {
    auto ring = build_ring(spec);
    auto ideals = enumerate_ideals(ring);
    auto member = [&](const Ideal& i) {
      for (const auto& j : ideals)
        if (j.members() == i.members()) return true;
      return false;
    };
    for (const auto& a : ideals)
      for (const auto& b : ideals) {
        CHECK(member(ideal_sum(a, b)));
        CHECK(member(ideal_product(a, b)));
        CHECK(member(ideal_intersection(a, b)));
      }
  }
}

TEST_CASE("ideal arithmetic worked examples") {
  auto z12 = build_ring("Z/12");
  CHECK(format_ideal(ideal_sum(Ideal::span(z12, {4}), Ideal::span(z12, {6})))
        == "{0,2,4,6,8,10}");
  auto z6 = build_ring("Z/6");
  CHECK(format_ideal(ideal_intersection(Ideal::span(z6, {2}),
                                        Ideal::span(z6, {3}))) == "{0}");
  CHECK(ideal_sum(Ideal::span(z6, {2}), Ideal::unit_ideal(z6))
            .is_unit_ideal());
}

TEST_CASE("colon ideals") {
  auto z6 = build_ring("Z/6");
  CHECK(format_ideal(colon(Ideal::zero_ideal(z6), 3)) == "{0,2,4}");
  auto z4 = build_ring("Z/4");
  CHECK(format_ideal(colon(Ideal::zero_ideal(z4), 2)) == "{0,2}");
  // J : 0 = R always; colon(J, a) contains J; equals R iff aR inside J.
  for (const auto& j : enumerate_ideals(z6)) {
    CHECK(colon(j, 0).is_unit_ideal());
    for (int a = 0; a < z6->size(); ++a) {
      Ideal c = colon(j, a);
      CHECK(j.members().is_subset_of(c.members()));
      bool span_inside =
          Ideal::span(z6, {a}).members().is_subset_of(j.members());
      CHECK(c.is_unit_ideal() == span_inside);
    }
  }
}

TEST_CASE("primes by quotient test and by the pair characterization") {
  auto z12 = build_ring("Z/12");
  auto primes = enumerate_primes(z12);
  REQUIRE(primes.size() == 2);
  CHECK(format_ideal(primes[0]) == "{0,3,6,9}");
  CHECK(format_ideal(primes[1]) == "{0,2,4,6,8,10}");

  auto z7 = build_ring("Z/7");
  auto p7 = enumerate_primes(z7);
  REQUIRE(p7.size() == 1);
  CHECK(p7[0].count() == 1);

  auto z4 = build_ring("Z/4");
  CHECK(!is_prime(Ideal::zero_ideal(z4)));  // 2*2 = 0

  // Cross-check: prime iff ab in I forces a or b in I, for proper I.
  for (const char* spec : {"Z/12", "Z/8", "Z/2 x Z/3"}) {
    auto ring = build_ring(spec);
    for (const auto& i : enumerate_ideals(ring)) {
      bool pair_prime = !i.is_unit_ideal();
      for (int a = 0; a < ring->size() && pair_prime; ++a)
        for (int b = 0; b < ring->size() && pair_prime; ++b)
          if (i.contains(ring->mul(a, b)) && !i.contains(a) && !i.contains(b))
            pair_prime = false;
      CHECK(pair_prime == is_prime(i));
    }
  }
}

TEST_CASE("v_set") {
  auto z12 = build_ring("Z/12");
  auto v4 = v_set(Ideal::span(z12, {4}));
  REQUIRE(v4.size() == 1);
  CHECK(format_ideal(v4[0]) == "{0,2,4,6,8,10}");
  CHECK(v_set(Ideal::unit_ideal(z12)).empty());
  CHECK(v_set(Ideal::zero_ideal(z12)).size() == 2);
}

TEST_CASE("multiplicative closures") {
  auto z12 = build_ring("Z/12");
  CHECK(mult_closure(z12, {4}).elements() == std::vector<int>{1, 4});
  CHECK(mult_closure(z12, {}).elements() == std::vector<int>{1});
  auto z6 = build_ring("Z/6");
  CHECK(mult_closure(z6, {5}).elements() == std::vector<int>{1, 5});
}

TEST_CASE("quotient rings and extensions") {
  auto z12 = build_ring("Z/12");
  QuotientRing q = quotient_ring(z12, Ideal::span(z12, {4}));
  CHECK(q.ring->size() == 4);
  CHECK((*q.projection)(7) == q.coset_of[7]);

  std::vector<int> im(12);
  for (int i = 0; i < 12; ++i) im[i] = i % 4;
  RingMap phi(z12, build_ring("Z/4"), im);
  CHECK(extension_ideal(phi, Ideal::span(z12, {3})).is_unit_ideal());
  CHECK(format_ideal(extension_ideal(phi, Ideal::span(z12, {2}))) == "{0,2}");
}

TEST_CASE("units and zero ring degenerate behaviour") {
  auto z12 = build_ring("Z/12");
  CHECK(z12->units() == std::vector<int>{1, 5, 7, 11});
  auto z1 = build_ring("Z/1");
  CHECK(enumerate_ideals(z1).size() == 1);
  CHECK(enumerate_primes(z1).empty());
}

TEST_CASE("ring map validation") {
  auto z12 = build_ring("Z/12");
  auto z4 = build_ring("Z/4");
  std::vector<int> bad(12, 0);
  CHECK_THROWS_AS(RingMap(z12, z4, bad), AxiomError);  // 1 not fixed
  std::vector<int> good(12);
  for (int i = 0; i < 12; ++i) good[i] = i % 4;
  CHECK_NOTHROW(RingMap(z12, z4, good));
}
