#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gloc {

/// Thrown when a textual specification (ring, system, module, table file)
/// cannot be parsed.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration would exceed the configured budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when operation tables violate a structural law. The message
/// carries the first failing witness.
struct AxiomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an internally asserted invariant fails; indicates a bug,
/// not bad input.
struct CheckError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw CheckError(what);
}

/// Enumeration limits. tuple_limit bounds exhaustive tuple scans
/// (|R|^k and |N|^k spaces), carrier_limit bounds explicit carrier sizes
/// (operation tables are quadratic in it), ring_order_limit bounds ring
/// construction.
struct Budget {
  std::uint64_t tuple_limit = 1ull << 20;
  std::size_t carrier_limit = 2048;
  int ring_order_limit = 64;
};

inline const Budget& default_budget() {
  static const Budget b{};
  return b;
}

/// Membership set over a fixed-size carrier. Word-packed; value semantics.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(count());
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(static_cast<int>(i));
    return out;
  }

  /// Lexicographic order on the sorted element lists; ties broken never
  /// (equal sets compare equal). {0,2} < {0,3}, {0} < {0,2}.
  static bool lex_less(const Bitset& a, const Bitset& b) {
    // First differing bit decides: if it is set in a, the element lists
    // diverge with a holding the smaller element (or b being a longer
    // extension), so a is lexicographically smaller.
    for (std::size_t i = 0; i < a.w_.size() && i < b.w_.size(); ++i) {
      std::uint64_t diff = a.w_[i] ^ b.w_[i];
      if (diff) {
        std::uint64_t low = diff & (~diff + 1);
        return a.w_[i] & low;
      }
    }
    return false;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Canonical set order: by cardinality, then lexicographic membership.
inline bool canonical_less(const Bitset& a, const Bitset& b) {
  std::size_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return Bitset::lex_less(a, b);
}

/// base^exp, or nullopt on overflow past 2^62.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  const std::uint64_t cap = std::uint64_t(1) << 62;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return std::nullopt;
    r *= base;
  }
  return r;
}

/// Little-endian digit expansion: digits[0] = idx % radix.
inline void decode_tuple(std::uint64_t idx, int radix, int k, int* digits) {
  for (int i = 0; i < k; ++i) {
    digits[i] = static_cast<int>(idx % radix);
    idx /= radix;
  }
}

inline std::uint64_t encode_tuple(const int* digits, int radix, int k) {
  std::uint64_t idx = 0;
  for (int i = k - 1; i >= 0; --i) idx = idx * radix + digits[i];
  return idx;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Deterministic per-case seed derivation from a base seed and a tag.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  std::uint64_t h = mix64(base);
  for (char c : tag) h = mix64(h ^ static_cast<unsigned char>(c));
  return h;
}

}  // namespace gloc
