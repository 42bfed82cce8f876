// Benchmark comparing the serial reference kernels against the OpenMP
// ones on representative workloads.

#include <chrono>
#include <cstdio>
#include <vector>

#include "gloc/kernels.hpp"
#include "gloc/module.hpp"
#include "gloc/theorems.hpp"

using gloc::kernels::Exec;

namespace {

template <class Fn>
double best_ms(Fn&& fn, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(
        best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-34s %10.2f ms %10.2f ms %7.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  gloc::Budget budget;
  budget.tuple_limit = 1ull << 24;
  budget.carrier_limit = 4096;

  std::printf("%-34s %13s %13s %8s\n", "kernel", "serial", "openmp",
              "speedup");

  {
    auto ring = gloc::ring_zmod(64, budget);
    auto serial = best_ms(
        [&] {
          gloc::kernels::check_ring_tables(ring->size(), ring->add_table(),
                                           ring->mul_table(), ring->zero(),
                                           ring->one(), Exec::Serial);
        },
        3);
    auto parallel = best_ms(
        [&] {
          gloc::kernels::check_ring_tables(ring->size(), ring->add_table(),
                                           ring->mul_table(), ring->zero(),
                                           ring->one(), Exec::Parallel);
        },
        3);
    row("ring axioms Z/64", serial, parallel);
  }

  {
    auto ring = gloc::ring_zmod(8, budget);
    auto reg = gloc::regular_module(ring);
    auto m = gloc::direct_sum({reg, reg, reg}, budget).module;  // order 512
    auto serial = best_ms(
        [&] {
          gloc::kernels::check_module_tables(
              ring->size(), ring->add_table(), ring->mul_table(), ring->one(),
              m->size(), m->add_table(), m->act_table(), m->zero(),
              Exec::Serial);
        },
        3);
    auto parallel = best_ms(
        [&] {
          gloc::kernels::check_module_tables(
              ring->size(), ring->add_table(), ring->mul_table(), ring->one(),
              m->size(), m->add_table(), m->act_table(), m->zero(),
              Exec::Parallel);
        },
        3);
    row("module axioms (Z/8)^3", serial, parallel);
  }

  {
    auto ring = gloc::ring_zmod(12, budget);
    auto reg = gloc::regular_module(ring);
    std::vector<int> gens(6, ring->one());
    std::uint64_t space = 1;
    for (int i = 0; i < 6; ++i) space *= 12;
    auto serial = best_ms(
        [&] {
          gloc::kernels::scan_syzygy_tuples(
              ring->size(), 6, space, reg->size(), reg->add_table(),
              reg->act_table(), reg->zero(), gens, Exec::Serial);
        },
        3);
    auto parallel = best_ms(
        [&] {
          gloc::kernels::scan_syzygy_tuples(
              ring->size(), 6, space, reg->size(), reg->add_table(),
              reg->act_table(), reg->zero(), gens, Exec::Parallel);
        },
        3);
    row("syzygy scan 12^6", serial, parallel);
  }

  {
    auto ring = gloc::ring_zmod(16, budget);
    auto reg = gloc::regular_module(ring);
    std::vector<std::vector<int>> rows_rel{{8, 8, 8, 8, 8},
                                           {0, 4, 0, 4, 0}};
    std::uint64_t space = 1;
    for (int i = 0; i < 5; ++i) space *= 16;
    auto serial = best_ms(
        [&] {
          gloc::kernels::scan_hom_tuples(5, space, reg->size(),
                                         reg->add_table(), reg->act_table(),
                                         reg->zero(), rows_rel, Exec::Serial);
        },
        3);
    auto parallel = best_ms(
        [&] {
          gloc::kernels::scan_hom_tuples(5, space, reg->size(),
                                         reg->add_table(), reg->act_table(),
                                         reg->zero(), rows_rel,
                                         Exec::Parallel);
        },
        3);
    row("hom candidate scan 16^5", serial, parallel);
  }

  {
    // End-to-end: the full verification of one ring under each policy.
    auto ring = gloc::build_ring("Z/8", budget);
    auto serial = best_ms(
        [&] {
          gloc::kernels::execution_policy() = Exec::Serial;
          gloc::verify_ring(ring, gloc::default_budget(), 1);
        },
        1);
    auto parallel = best_ms(
        [&] {
          gloc::kernels::execution_policy() = Exec::Parallel;
          gloc::verify_ring(ring, gloc::default_budget(), 1);
        },
        1);
    gloc::kernels::execution_policy() = Exec::Parallel;
    row("verify Z/8 end to end", serial, parallel);
  }

  return 0;
}
