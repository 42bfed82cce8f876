#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gloc/common.hpp"

// Data-parallel inner loops of the library. Every kernel has a serial
// reference implementation and an OpenMP one; both produce identical
// results (sorted outputs, lexicographically-first violations). The
// serial variants are kept as test oracles and for the benchmark.

namespace gloc::kernels {

enum class Exec { Serial, Parallel };

/// Process-wide default policy. Parallel when built with OpenMP.
Exec& execution_policy();

/// First law violation found in a table scan, in a fixed law order and
/// at the lexicographically smallest witness within each law.
struct Violation {
  std::string law;
  int i = -1;
  int j = -1;
  int k = -1;
  std::string to_string() const;
};

/// Commutative unital ring axioms over explicit n x n tables.
std::optional<Violation> check_ring_tables(int n, const std::vector<int>& add,
                                           const std::vector<int>& mul,
                                           int zero, int one, Exec exec);

/// Module axioms: abelian group on (m, madd, mzero) plus bilinear action
/// of the ring given by (n, radd, rmul, rone).
std::optional<Violation> check_module_tables(
    int n, const std::vector<int>& radd, const std::vector<int>& rmul,
    int rone, int m, const std::vector<int>& madd,
    const std::vector<int>& mact, int mzero, Exec exec);

/// All tuples (r_0..r_{k-1}) over ring ids with sum_i r_i * gens[i] == mzero
/// in the module given by (madd, mact). space = ring_n^k. Ascending order.
std::vector<std::uint64_t> scan_syzygy_tuples(
    int ring_n, int k, std::uint64_t space, int mod_m,
    const std::vector<int>& madd, const std::vector<int>& mact, int mzero,
    const std::vector<int>& gens, Exec exec);

/// All tuples (t_0..t_{k-1}) over target-module ids satisfying every
/// relation row: sum_i row[i] * t_i == tzero. space = target_m^k.
/// Ascending order.
std::vector<std::uint64_t> scan_hom_tuples(
    int k, std::uint64_t space, int target_m, const std::vector<int>& tadd,
    const std::vector<int>& tact, int tzero,
    const std::vector<std::vector<int>>& relation_rows, Exec exec);

}  // namespace gloc::kernels
