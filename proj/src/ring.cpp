#include "gloc/ring.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gloc/kernels.hpp"

namespace gloc {

RingPtr FiniteRing::make(int n, std::vector<int> add, std::vector<int> mul,
                         int zero, int one, std::string label,
                         const Budget& budget) {
  if (n < 1) throw ParseError("ring order must be >= 1: " + label);
  if (n > budget.ring_order_limit)
    throw BudgetError("ring order " + std::to_string(n) +
                      " exceeds the configured limit of " +
                      std::to_string(budget.ring_order_limit));
  if (add.size() != std::size_t(n) * n || mul.size() != std::size_t(n) * n)
    throw ParseError("operation tables must be " + std::to_string(n) + "x" +
                     std::to_string(n) + ": " + label);
  auto bad = kernels::check_ring_tables(n, add, mul, zero, one,
                                        kernels::execution_policy());
  if (bad)
    throw AxiomError("ring axiom violation in " + label + ": " +
                     bad->to_string());

  auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
  ring->n_ = n;
  ring->zero_ = zero;
  ring->one_ = one;
  ring->label_ = std::move(label);
  ring->add_ = std::move(add);
  ring->mul_ = std::move(mul);
  ring->neg_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (ring->add_[std::size_t(a) * n + b] == zero) ring->neg_[a] = b;
  return ring;
}

bool FiniteRing::is_unit(int a) const {
  for (int b = 0; b < n_; ++b)
    if (mul(a, b) == one_) return true;
  return false;
}

std::vector<int> FiniteRing::units() const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a)
    if (is_unit(a)) out.push_back(a);
  return out;
}

Bitset ideal_closure(const FiniteRing& ring, Bitset seed) {
  const int n = ring.size();
  Bitset cur(n);
  cur.set(ring.zero());
  std::vector<int> work;
  for (int a = 0; a < n; ++a)
    if (seed.test(a) && !cur.test(a)) {
      cur.set(a);
      work.push_back(a);
    }
  while (!work.empty()) {
    int a = work.back();
    work.pop_back();
    auto push = [&](int x) {
      if (!cur.test(x)) {
        cur.set(x);
        work.push_back(x);
      }
    };
    for (int b = 0; b < n; ++b) {
      if (cur.test(b)) push(ring.add(a, b));
      push(ring.mul(b, a));
    }
  }
  return cur;
}

const std::vector<Bitset>& FiniteRing::ideal_masks() const {
  std::call_once(ideals_once_, [this]() {
    const int n = n_;
    std::set<std::vector<int>> seen;  // element lists, for dedup
    std::vector<Bitset> found;
    std::vector<Bitset> frontier;
    Bitset z(n);
    z.set(zero_);
    z = ideal_closure(*this, z);
    seen.insert(z.elements());
    found.push_back(z);
    frontier.push_back(z);
    // Every ideal arises by repeatedly adjoining one element and closing.
    while (!frontier.empty()) {
      std::vector<Bitset> next;
      for (const auto& base : frontier) {
        for (int a = 0; a < n; ++a) {
          if (base.test(a)) continue;
          Bitset seed = base;
          seed.set(a);
          Bitset closed = ideal_closure(*this, seed);
          if (seen.insert(closed.elements()).second) {
            found.push_back(closed);
            next.push_back(closed);
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(found.begin(), found.end(),
              [](const Bitset& a, const Bitset& b) {
                return canonical_less(a, b);
              });
    ideals_ = std::move(found);
  });
  return ideals_;
}

Ideal::Ideal(RingPtr ring, Bitset members)
    : ring_(std::move(ring)), members_(std::move(members)) {
  const FiniteRing& r = *ring_;
  if (members_.size() != std::size_t(r.size()))
    throw std::invalid_argument("ideal membership set has wrong carrier size");
  if (!members_.test(r.zero()))
    throw AxiomError("ideal does not contain zero");
  for (int a : members_.elements()) {
    for (int b : members_.elements())
      if (!members_.test(r.add(a, b)))
        throw AxiomError("ideal not closed under addition at (" +
                         std::to_string(a) + "," + std::to_string(b) + ")");
    for (int s = 0; s < r.size(); ++s)
      if (!members_.test(r.mul(s, a)))
        throw AxiomError("ideal not closed under absorption at (" +
                         std::to_string(s) + "," + std::to_string(a) + ")");
  }
}

Ideal Ideal::zero_ideal(const RingPtr& ring) {
  Bitset m(ring->size());
  m.set(ring->zero());
  return Ideal(ring, ideal_closure(*ring, m));
}

Ideal Ideal::unit_ideal(const RingPtr& ring) {
  Bitset m(ring->size());
  for (int a = 0; a < ring->size(); ++a) m.set(a);
  return Ideal(ring, m);
}

Ideal Ideal::span(const RingPtr& ring, const std::vector<int>& gens) {
  Bitset m(ring->size());
  for (int a : gens) {
    if (a < 0 || a >= ring->size())
      throw ParseError("element id out of range: " + std::to_string(a));
    m.set(a);
  }
  return Ideal(ring, ideal_closure(*ring, m));
}

std::string format_ideal(const Ideal& ideal) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int a : ideal.elements()) {
    if (!first) os << ',';
    os << a;
    first = false;
  }
  os << '}';
  return os.str();
}

RingMap::RingMap(RingPtr source, RingPtr target, std::vector<int> images)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)) {
  const FiniteRing& r = *source_;
  const FiniteRing& s = *target_;
  if (images_.size() != std::size_t(r.size()))
    throw std::invalid_argument("ring map image table has wrong size");
  for (int v : images_)
    if (v < 0 || v >= s.size())
      throw AxiomError("ring map image out of range");
  if (images_[r.zero()] != s.zero()) throw AxiomError("ring map: 0 not fixed");
  if (images_[r.one()] != s.one()) throw AxiomError("ring map: 1 not fixed");
  for (int a = 0; a < r.size(); ++a)
    for (int b = 0; b < r.size(); ++b) {
      if (images_[r.add(a, b)] != s.add(images_[a], images_[b]))
        throw AxiomError("ring map not additive at (" + std::to_string(a) +
                         "," + std::to_string(b) + ")");
      if (images_[r.mul(a, b)] != s.mul(images_[a], images_[b]))
        throw AxiomError("ring map not multiplicative at (" +
                         std::to_string(a) + "," + std::to_string(b) + ")");
    }
}

RingMap RingMap::identity(const RingPtr& ring) {
  std::vector<int> im(ring->size());
  for (int a = 0; a < ring->size(); ++a) im[a] = a;
  return RingMap(ring, ring, std::move(im));
}

MultSet::MultSet(RingPtr ring, Bitset members)
    : ring_(std::move(ring)), members_(std::move(members)) {
  const FiniteRing& r = *ring_;
  if (!members_.test(r.one()))
    throw AxiomError("multiplicative set does not contain 1");
  for (int a : members_.elements())
    for (int b : members_.elements())
      if (!members_.test(r.mul(a, b)))
        throw AxiomError("set not multiplicatively closed at (" +
                         std::to_string(a) + "," + std::to_string(b) + ")");
}

MultSet MultSet::closure(const RingPtr& ring, const std::vector<int>& seed) {
  Bitset m(ring->size());
  m.set(ring->one());
  for (int a : seed) {
    if (a < 0 || a >= ring->size())
      throw ParseError("element id out of range: " + std::to_string(a));
    m.set(a);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    auto elems = m.elements();
    for (int a : elems)
      for (int b : elems) {
        int p = ring->mul(a, b);
        if (!m.test(p)) {
          m.set(p);
          grew = true;
        }
      }
  }
  return MultSet(ring, m);
}

MultSet mult_closure(const RingPtr& ring, const std::vector<int>& seed) {
  return MultSet::closure(ring, seed);
}

RingPtr ring_zmod(int n, const Budget& budget) {
  if (n < 1) throw ParseError("Z/n requires n >= 1");
  std::vector<int> add(std::size_t(n) * n), mul(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      add[std::size_t(a) * n + b] = (a + b) % n;
      mul[std::size_t(a) * n + b] = (a * b) % n;
    }
  return FiniteRing::make(n, std::move(add), std::move(mul), 0, n == 1 ? 0 : 1,
                          "Z/" + std::to_string(n), budget);
}

RingPtr ring_product(const RingPtr& a, const RingPtr& b,
                     const Budget& budget) {
  const int na = a->size(), nb = b->size();
  const int n = na * nb;
  auto pack = [nb](int x, int y) { return x * nb + y; };
  std::vector<int> add(std::size_t(n) * n), mul(std::size_t(n) * n);
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1)
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2) {
          int i = pack(x1, y1), j = pack(x2, y2);
          add[std::size_t(i) * n + j] = pack(a->add(x1, x2), b->add(y1, y2));
          mul[std::size_t(i) * n + j] = pack(a->mul(x1, x2), b->mul(y1, y2));
        }
  return FiniteRing::make(n, std::move(add), std::move(mul),
                          pack(a->zero(), b->zero()), pack(a->one(), b->one()),
                          a->label() + " x " + b->label(), budget);
}

RingPtr ring_from_json_text(const std::string& text, const Budget& budget) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("table ring JSON: ") + e.what());
  }
  try {
    int n = doc.at("order").get<int>();
    int zero = doc.at("zero").get<int>();
    int one = doc.at("one").get<int>();
    std::string label = doc.value("label", std::string("table-ring"));
    auto read_table = [&](const char* key) {
      std::vector<int> t;
      const auto& rows = doc.at(key);
      if (!rows.is_array() || rows.size() != std::size_t(n))
        throw ParseError(std::string("table ring: ") + key + " must have " +
                         std::to_string(n) + " rows");
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != std::size_t(n))
          throw ParseError(std::string("table ring: ") + key +
                           " rows must have " + std::to_string(n) +
                           " entries");
        for (const auto& v : row) t.push_back(v.get<int>());
      }
      return t;
    };
    return FiniteRing::make(n, read_table("add"), read_table("mul"), zero, one,
                            label, budget);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("table ring JSON: ") + e.what());
  }
}

RingPtr ring_from_json_file(const std::string& path, const Budget& budget) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table ring file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ring_from_json_text(buf.str(), budget);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

RingPtr build_atom(const std::string& atom, const Budget& budget) {
  if (atom.rfind("Z/", 0) == 0) {
    const std::string num = atom.substr(2);
    if (num.empty() ||
        num.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad ring spec: " + atom);
    return ring_zmod(std::stoi(num), budget);
  }
  if (!atom.empty() && atom[0] == '@')
    return ring_from_json_file(atom.substr(1), budget);
  throw ParseError("bad ring spec: " + atom);
}

}  // namespace

RingPtr build_ring(const std::string& spec, const Budget& budget) {
  std::vector<std::string> atoms;
  std::size_t pos = 0;
  while (true) {
    std::size_t at = spec.find(" x ", pos);
    if (at == std::string::npos) {
      atoms.push_back(trim(spec.substr(pos)));
      break;
    }
    atoms.push_back(trim(spec.substr(pos, at - pos)));
    pos = at + 3;
  }
  if (atoms.empty() || atoms.front().empty())
    throw ParseError("empty ring spec");
  RingPtr ring = build_atom(atoms[0], budget);
  for (std::size_t i = 1; i < atoms.size(); ++i)
    ring = ring_product(ring, build_atom(atoms[i], budget), budget);
  return ring;
}

std::vector<Ideal> enumerate_ideals(const RingPtr& ring) {
  std::vector<Ideal> out;
  for (const Bitset& m : ring->ideal_masks()) out.emplace_back(ring, m);
  return out;
}

namespace {
void check_same_ring(const Ideal& a, const Ideal& b) {
  if (a.ring() != b.ring())
    throw std::invalid_argument("ideals belong to different rings");
}
}  // namespace

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  check_same_ring(a, b);
  return Ideal(a.ring(), ideal_closure(*a.ring(), a.members() | b.members()));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  check_same_ring(a, b);
  Bitset seed(a.ring()->size());
  for (int x : a.elements())
    for (int y : b.elements()) seed.set(a.ring()->mul(x, y));
  return Ideal(a.ring(), ideal_closure(*a.ring(), seed));
}

Ideal ideal_intersection(const Ideal& a, const Ideal& b) {
  check_same_ring(a, b);
  return Ideal(a.ring(), a.members() & b.members());
}

Ideal colon(const Ideal& j, int a) {
  const RingPtr& ring = j.ring();
  Bitset m(ring->size());
  for (int r = 0; r < ring->size(); ++r)
    if (j.contains(ring->mul(r, a))) m.set(r);
  return Ideal(ring, m);
}

Ideal annihilator(const RingPtr& ring, int a) {
  return colon(Ideal::zero_ideal(ring), a);
}

bool is_prime(const Ideal& ideal) {
  if (ideal.is_unit_ideal()) return false;
  QuotientRing q = quotient_ring(ideal.ring(), ideal);
  const FiniteRing& qr = *q.ring;
  for (int a = 0; a < qr.size(); ++a) {
    if (a == qr.zero()) continue;
    for (int b = 0; b < qr.size(); ++b) {
      if (b == qr.zero()) continue;
      if (qr.mul(a, b) == qr.zero()) return false;
    }
  }
  return true;
}

std::vector<Ideal> enumerate_primes(const RingPtr& ring) {
  std::vector<Ideal> out;
  for (const Ideal& ideal : enumerate_ideals(ring))
    if (is_prime(ideal)) out.push_back(ideal);
  return out;
}

std::vector<Ideal> v_set(const Ideal& ideal) {
  std::vector<Ideal> out;
  for (const Ideal& p : enumerate_primes(ideal.ring()))
    if (ideal.members().is_subset_of(p.members())) out.push_back(p);
  return out;
}

QuotientRing quotient_ring(const RingPtr& ring, const Ideal& ideal,
                           const Budget& budget) {
  const FiniteRing& r = *ring;
  const int n = r.size();
  std::vector<int> canon(n, -1);
  for (int x = 0; x < n; ++x) {
    int least = x;
    for (int s : ideal.elements()) least = std::min(least, r.add(x, s));
    canon[x] = least;
  }
  std::vector<int> reps;
  for (int x = 0; x < n; ++x)
    if (canon[x] == x) reps.push_back(x);
  std::vector<int> id_of(n, -1);
  for (std::size_t i = 0; i < reps.size(); ++i) id_of[reps[i]] = int(i);
  const int m = int(reps.size());
  std::vector<int> add(std::size_t(m) * m), mul(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      add[std::size_t(i) * m + j] = id_of[canon[r.add(reps[i], reps[j])]];
      mul[std::size_t(i) * m + j] = id_of[canon[r.mul(reps[i], reps[j])]];
    }
  QuotientRing out;
  out.ring = FiniteRing::make(m, std::move(add), std::move(mul),
                              id_of[canon[r.zero()]], id_of[canon[r.one()]],
                              r.label() + "/" + format_ideal(ideal), budget);
  out.rep_of = reps;
  out.coset_of.resize(n);
  for (int x = 0; x < n; ++x) out.coset_of[x] = id_of[canon[x]];
  out.projection = std::make_unique<RingMap>(ring, out.ring, out.coset_of);
  return out;
}

Ideal extension_ideal(const RingMap& map, const Ideal& ideal) {
  Bitset seed(map.target()->size());
  for (int a : ideal.elements()) seed.set(map(a));
  return Ideal(map.target(), ideal_closure(*map.target(), seed));
}

}  // namespace gloc
