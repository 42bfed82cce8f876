#include "gloc/kernels.hpp"

#include <algorithm>
#include <limits>

#ifdef GLOC_HAVE_OPENMP
#include <omp.h>
#endif

namespace gloc::kernels {

Exec& execution_policy() {
#ifdef GLOC_HAVE_OPENMP
  static Exec policy = Exec::Parallel;
#else
  static Exec policy = Exec::Serial;
#endif
  return policy;
}

std::string Violation::to_string() const {
  std::string s = law + " at (" + std::to_string(i);
  if (j >= 0) s += "," + std::to_string(j);
  if (k >= 0) s += "," + std::to_string(k);
  s += ")";
  return s;
}

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// Scans below this size run serially even under the parallel policy; the
// team-startup cost dwarfs the loop otherwise.
constexpr std::uint64_t kGrain = 1u << 13;

// Smallest index in [0, space) failing `ok`, or kNone.
template <class Pred>
std::uint64_t first_bad(std::uint64_t space, Exec exec, Pred ok) {
  if (exec == Exec::Serial || space < kGrain) {
    for (std::uint64_t t = 0; t < space; ++t)
      if (!ok(t)) return t;
    return kNone;
  }
  std::uint64_t best = kNone;
#ifdef GLOC_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(min : best)
#endif
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(space); ++t) {
    if (!ok(static_cast<std::uint64_t>(t)))
      best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(t));
  }
  return best;
}

template <class Pred>
std::vector<std::uint64_t> collect(std::uint64_t space, Exec exec, Pred ok) {
  std::vector<std::uint64_t> out;
  if (exec == Exec::Serial || space < kGrain) {
    for (std::uint64_t t = 0; t < space; ++t)
      if (ok(t)) out.push_back(t);
    return out;
  }
#ifdef GLOC_HAVE_OPENMP
  int nt = omp_get_max_threads();
  std::vector<std::vector<std::uint64_t>> buckets(nt);
#pragma omp parallel
  {
    std::vector<std::uint64_t>& local = buckets[omp_get_thread_num()];
#pragma omp for schedule(static) nowait
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(space); ++t)
      if (ok(static_cast<std::uint64_t>(t)))
        local.push_back(static_cast<std::uint64_t>(t));
  }
  for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
#else
  for (std::uint64_t t = 0; t < space; ++t)
    if (ok(t)) out.push_back(t);
#endif
  return out;
}

}  // namespace

std::optional<Violation> check_ring_tables(int n, const std::vector<int>& add,
                                           const std::vector<int>& mul,
                                           int zero, int one, Exec exec) {
  const std::uint64_t n2 = std::uint64_t(n) * n;
  const std::uint64_t n3 = n2 * n;
  auto at = [n](const std::vector<int>& t, int i, int j) {
    return t[std::size_t(i) * n + j];
  };
  auto pair_v = [&](const std::string& law, std::uint64_t t) {
    return Violation{law, int(t / n), int(t % n), -1};
  };
  auto triple_v = [&](const std::string& law, std::uint64_t t) {
    return Violation{law, int(t / n2), int((t / n) % n), int(t % n)};
  };

  if (zero < 0 || zero >= n || one < 0 || one >= n)
    return Violation{"element-range", zero < 0 || zero >= n ? zero : one, -1,
                     -1};
  std::uint64_t t = first_bad(n2, exec, [&](std::uint64_t u) {
    int i = int(u / n), j = int(u % n);
    return at(add, i, j) >= 0 && at(add, i, j) < n && at(mul, i, j) >= 0 &&
           at(mul, i, j) < n;
  });
  if (t != kNone) return pair_v("table-range", t);

  t = first_bad(std::uint64_t(n), exec, [&](std::uint64_t u) {
    return at(add, zero, int(u)) == int(u);
  });
  if (t != kNone) return Violation{"add-identity", int(t), -1, -1};

  t = first_bad(std::uint64_t(n), exec, [&](std::uint64_t u) {
    for (int y = 0; y < n; ++y)
      if (at(add, int(u), y) == zero) return true;
    return false;
  });
  if (t != kNone) return Violation{"add-inverse", int(t), -1, -1};

  t = first_bad(n2, exec, [&](std::uint64_t u) {
    int i = int(u / n), j = int(u % n);
    return at(add, i, j) == at(add, j, i);
  });
  if (t != kNone) return pair_v("add-comm", t);

  t = first_bad(n3, exec, [&](std::uint64_t u) {
    int i = int(u / n2), j = int((u / n) % n), k = int(u % n);
    return at(add, at(add, i, j), k) == at(add, i, at(add, j, k));
  });
  if (t != kNone) return triple_v("add-assoc", t);

  t = first_bad(n2, exec, [&](std::uint64_t u) {
    int i = int(u / n), j = int(u % n);
    return at(mul, i, j) == at(mul, j, i);
  });
  if (t != kNone) return pair_v("mul-comm", t);

  t = first_bad(std::uint64_t(n), exec, [&](std::uint64_t u) {
    return at(mul, one, int(u)) == int(u);
  });
  if (t != kNone) return Violation{"mul-identity", int(t), -1, -1};

  t = first_bad(n3, exec, [&](std::uint64_t u) {
    int i = int(u / n2), j = int((u / n) % n), k = int(u % n);
    return at(mul, at(mul, i, j), k) == at(mul, i, at(mul, j, k));
  });
  if (t != kNone) return triple_v("mul-assoc", t);

  t = first_bad(n3, exec, [&](std::uint64_t u) {
    int i = int(u / n2), j = int((u / n) % n), k = int(u % n);
    return at(mul, i, at(add, j, k)) == at(add, at(mul, i, j), at(mul, i, k));
  });
  if (t != kNone) return triple_v("distributivity", t);

  return std::nullopt;
}

std::optional<Violation> check_module_tables(
    int n, const std::vector<int>& radd, const std::vector<int>& rmul,
    int rone, int m, const std::vector<int>& madd,
    const std::vector<int>& mact, int mzero, Exec exec) {
  const std::uint64_t m2 = std::uint64_t(m) * m;
  auto ra = [n, &radd](int r, int s) { return radd[std::size_t(r) * n + s]; };
  auto rm = [n, &rmul](int r, int s) { return rmul[std::size_t(r) * n + s]; };
  auto ma = [m, &madd](int x, int y) { return madd[std::size_t(x) * m + y]; };
  auto ac = [m, &mact](int r, int x) { return mact[std::size_t(r) * m + x]; };

  if (mzero < 0 || mzero >= m) return Violation{"element-range", mzero, -1, -1};
  std::uint64_t t = first_bad(m2, exec, [&](std::uint64_t u) {
    int x = int(u / m), y = int(u % m);
    return ma(x, y) >= 0 && ma(x, y) < m;
  });
  if (t != kNone) return Violation{"table-range", int(t / m), int(t % m), -1};
  t = first_bad(std::uint64_t(n) * m, exec, [&](std::uint64_t u) {
    int r = int(u / m), x = int(u % m);
    return ac(r, x) >= 0 && ac(r, x) < m;
  });
  if (t != kNone) return Violation{"action-range", int(t / m), int(t % m), -1};

  t = first_bad(std::uint64_t(m), exec,
                [&](std::uint64_t u) { return ma(mzero, int(u)) == int(u); });
  if (t != kNone) return Violation{"add-identity", int(t), -1, -1};

  t = first_bad(std::uint64_t(m), exec, [&](std::uint64_t u) {
    for (int y = 0; y < m; ++y)
      if (ma(int(u), y) == mzero) return true;
    return false;
  });
  if (t != kNone) return Violation{"add-inverse", int(t), -1, -1};

  t = first_bad(m2, exec, [&](std::uint64_t u) {
    int x = int(u / m), y = int(u % m);
    return ma(x, y) == ma(y, x);
  });
  if (t != kNone) return Violation{"add-comm", int(t / m), int(t % m), -1};

  t = first_bad(m2 * m, exec, [&](std::uint64_t u) {
    int x = int(u / m2), y = int((u / m) % m), z = int(u % m);
    return ma(ma(x, y), z) == ma(x, ma(y, z));
  });
  if (t != kNone)
    return Violation{"add-assoc", int(t / m2), int((t / m) % m), int(t % m)};

  // r(x+y) = rx + ry
  t = first_bad(std::uint64_t(n) * m2, exec, [&](std::uint64_t u) {
    int r = int(u / m2), x = int((u / m) % m), y = int(u % m);
    return ac(r, ma(x, y)) == ma(ac(r, x), ac(r, y));
  });
  if (t != kNone)
    return Violation{"action-add-left", int(t / m2), int((t / m) % m),
                     int(t % m)};

  // (r+s)x = rx + sx
  t = first_bad(std::uint64_t(n) * n * m, exec, [&](std::uint64_t u) {
    int r = int(u / (std::uint64_t(n) * m)), s = int((u / m) % n),
        x = int(u % m);
    return ac(ra(r, s), x) == ma(ac(r, x), ac(s, x));
  });
  if (t != kNone)
    return Violation{"action-add-right", int(t / (std::uint64_t(n) * m)),
                     int((t / m) % n), int(t % m)};

  // (rs)x = r(sx)
  t = first_bad(std::uint64_t(n) * n * m, exec, [&](std::uint64_t u) {
    int r = int(u / (std::uint64_t(n) * m)), s = int((u / m) % n),
        x = int(u % m);
    return ac(rm(r, s), x) == ac(r, ac(s, x));
  });
  if (t != kNone)
    return Violation{"action-assoc", int(t / (std::uint64_t(n) * m)),
                     int((t / m) % n), int(t % m)};

  t = first_bad(std::uint64_t(m), exec,
                [&](std::uint64_t u) { return ac(rone, int(u)) == int(u); });
  if (t != kNone) return Violation{"action-identity", int(t), -1, -1};

  return std::nullopt;
}

std::vector<std::uint64_t> scan_syzygy_tuples(
    int ring_n, int k, std::uint64_t space, int mod_m,
    const std::vector<int>& madd, const std::vector<int>& mact, int mzero,
    const std::vector<int>& gens, Exec exec) {
  auto ok = [&](std::uint64_t idx) {
    int acc = mzero;
    for (int i = 0; i < k; ++i) {
      int r = static_cast<int>(idx % ring_n);
      idx /= ring_n;
      acc = madd[std::size_t(acc) * mod_m +
                 mact[std::size_t(r) * mod_m + gens[i]]];
    }
    return acc == mzero;
  };
  return collect(space, exec, ok);
}

std::vector<std::uint64_t> scan_hom_tuples(
    int k, std::uint64_t space, int target_m, const std::vector<int>& tadd,
    const std::vector<int>& tact, int tzero,
    const std::vector<std::vector<int>>& relation_rows, Exec exec) {
  require(k <= 32, "scan_hom_tuples: generator count exceeds 32");
  auto ok = [&](std::uint64_t idx) {
    int digits[32];
    decode_tuple(idx, target_m, k, digits);
    for (const auto& row : relation_rows) {
      int acc = tzero;
      for (int i = 0; i < k; ++i)
        acc = tadd[std::size_t(acc) * target_m +
                   tact[std::size_t(row[i]) * target_m + digits[i]]];
      if (acc != tzero) return false;
    }
    return true;
  };
  return collect(space, exec, ok);
}

}  // namespace gloc::kernels
