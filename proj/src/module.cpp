#include "gloc/module.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gloc/kernels.hpp"

namespace gloc {

ModulePtr FiniteModule::make(RingPtr ring, int m, std::vector<int> add,
                             std::vector<int> act, int zero, std::string label,
                             const Budget& budget) {
  if (m < 1) throw std::invalid_argument("module carrier must be nonempty");
  if (std::size_t(m) > budget.carrier_limit)
    throw BudgetError("module carrier " + std::to_string(m) +
                      " exceeds the configured limit of " +
                      std::to_string(budget.carrier_limit));
  const int n = ring->size();
  if (add.size() != std::size_t(m) * m || act.size() != std::size_t(n) * m)
    throw std::invalid_argument("module tables have wrong size: " + label);
  auto bad = kernels::check_module_tables(n, ring->add_table(),
                                          ring->mul_table(), ring->one(), m,
                                          add, act, zero,
                                          kernels::execution_policy());
  if (bad)
    throw AxiomError("module axiom violation in " + label + ": " +
                     bad->to_string());
  auto mod = std::shared_ptr<FiniteModule>(new FiniteModule());
  mod->ring_ = std::move(ring);
  mod->m_ = m;
  mod->zero_ = zero;
  mod->label_ = std::move(label);
  mod->add_ = std::move(add);
  mod->act_ = std::move(act);
  mod->neg_.assign(m, -1);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (mod->add_[std::size_t(x) * m + y] == zero) mod->neg_[x] = y;
  return mod;
}

bool FiniteModule::same_structure(const FiniteModule& a,
                                  const FiniteModule& b) {
  if (&a == &b) return true;
  return a.ring_ == b.ring_ && a.m_ == b.m_ && a.zero_ == b.zero_ &&
         a.add_ == b.add_ && a.act_ == b.act_;
}

ModuleHom::ModuleHom(ModulePtr source, ModulePtr target,
                     std::vector<int> images)
    : src_(std::move(source)), dst_(std::move(target)),
      images_(std::move(images)) {
  verify();
}

ModuleHom ModuleHom::unchecked(ModulePtr source, ModulePtr target,
                               std::vector<int> images) {
  ModuleHom h;
  h.src_ = std::move(source);
  h.dst_ = std::move(target);
  h.images_ = std::move(images);
  return h;
}

ModuleHom ModuleHom::identity(const ModulePtr& m) {
  std::vector<int> im(m->size());
  std::iota(im.begin(), im.end(), 0);
  return unchecked(m, m, std::move(im));
}

ModuleHom ModuleHom::zero_map(const ModulePtr& source,
                              const ModulePtr& target) {
  return unchecked(source, target,
                   std::vector<int>(source->size(), target->zero()));
}

void ModuleHom::verify() const {
  const FiniteModule& m = *src_;
  const FiniteModule& n = *dst_;
  if (m.ring() != n.ring())
    throw std::invalid_argument("hom between modules over different rings");
  if (images_.size() != std::size_t(m.size()))
    throw std::invalid_argument("hom image table has wrong size");
  for (int v : images_)
    if (v < 0 || v >= n.size()) throw AxiomError("hom image out of range");
  for (int x = 0; x < m.size(); ++x)
    for (int y = 0; y < m.size(); ++y)
      if (images_[m.add(x, y)] != n.add(images_[x], images_[y]))
        throw AxiomError("hom not additive at (" + std::to_string(x) + "," +
                         std::to_string(y) + ")");
  for (int r = 0; r < m.ring()->size(); ++r)
    for (int x = 0; x < m.size(); ++x)
      if (images_[m.act(r, x)] != n.act(r, images_[x]))
        throw AxiomError("hom not equivariant at (" + std::to_string(r) + "," +
                         std::to_string(x) + ")");
}

bool ModuleHom::is_injective() const {
  return kernel_set().count() == 1;
}

bool ModuleHom::is_surjective() const {
  return image_set().count() == std::size_t(dst_->size());
}

Bitset ModuleHom::kernel_set() const {
  Bitset out(src_->size());
  for (int x = 0; x < src_->size(); ++x)
    if (images_[x] == dst_->zero()) out.set(x);
  return out;
}

Bitset ModuleHom::image_set() const {
  Bitset out(dst_->size());
  for (int v : images_) out.set(v);
  return out;
}

ModuleHom compose(const ModuleHom& g, const ModuleHom& f) {
  require(FiniteModule::same_structure(*f.target(), *g.source()),
          "compose: inner modules do not match");
  std::vector<int> im(f.source()->size());
  for (int x = 0; x < f.source()->size(); ++x) im[x] = g(f(x));
  return ModuleHom::unchecked(f.source(), g.target(), std::move(im));
}

ModulePtr zero_module(const RingPtr& ring) {
  return FiniteModule::make(ring, 1, {0},
                            std::vector<int>(ring->size(), 0), 0, "0");
}

ModulePtr regular_module(const RingPtr& ring) {
  return FiniteModule::make(ring, ring->size(), ring->add_table(),
                            ring->mul_table(), ring->zero(), ring->label());
}

Bitset submodule_span(const FiniteModule& m, const std::vector<int>& gens) {
  Bitset cur(m.size());
  cur.set(m.zero());
  std::vector<int> work;
  for (int g : gens)
    if (!cur.test(g)) {
      cur.set(g);
      work.push_back(g);
    }
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    auto push = [&](int y) {
      if (!cur.test(y)) {
        cur.set(y);
        work.push_back(y);
      }
    };
    for (int y = 0; y < m.size(); ++y)
      if (cur.test(y)) push(m.add(x, y));
    for (int r = 0; r < m.ring()->size(); ++r) push(m.act(r, x));
  }
  return cur;
}

bool is_submodule(const FiniteModule& m, const Bitset& members) {
  if (!members.test(m.zero())) return false;
  auto elems = members.elements();
  for (int x : elems) {
    for (int y : elems)
      if (!members.test(m.add(x, y))) return false;
    for (int r = 0; r < m.ring()->size(); ++r)
      if (!members.test(m.act(r, x))) return false;
  }
  return true;
}

std::vector<Bitset> enumerate_submodules(const FiniteModule& m) {
  std::set<std::vector<int>> seen;
  std::vector<Bitset> found, frontier;
  Bitset z = submodule_span(m, {});
  seen.insert(z.elements());
  found.push_back(z);
  frontier.push_back(z);
  while (!frontier.empty()) {
    std::vector<Bitset> next;
    for (const auto& base : frontier)
      for (int a = 0; a < m.size(); ++a) {
        if (base.test(a)) continue;
        auto gens = base.elements();
        gens.push_back(a);
        Bitset closed = submodule_span(m, gens);
        if (seen.insert(closed.elements()).second) {
          found.push_back(closed);
          next.push_back(closed);
        }
      }
    frontier = std::move(next);
  }
  std::sort(found.begin(), found.end(),
            [](const Bitset& a, const Bitset& b) {
              return canonical_less(a, b);
            });
  return found;
}

ModuleWithHom submodule_module(const ModulePtr& parent, const Bitset& members) {
  const FiniteModule& p = *parent;
  if (!is_submodule(p, members))
    throw std::invalid_argument("member set is not a submodule of " +
                                p.label());
  const std::vector<int> elems = members.elements();
  const int m = int(elems.size());
  std::vector<int> pos(p.size(), -1);
  for (int i = 0; i < m; ++i) pos[elems[i]] = i;
  const int n = p.ring()->size();
  std::vector<int> add(std::size_t(m) * m), act(std::size_t(n) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      add[std::size_t(i) * m + j] = pos[p.add(elems[i], elems[j])];
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < m; ++i)
      act[std::size_t(r) * m + i] = pos[p.act(r, elems[i])];
  ModulePtr sub = FiniteModule::make(p.ring(), m, std::move(add),
                                     std::move(act), pos[p.zero()],
                                     "sub(" + p.label() + ")");
  std::vector<int> incl(m);
  for (int i = 0; i < m; ++i) incl[i] = elems[i];
  return {sub, ModuleHom::unchecked(sub, parent, std::move(incl))};
}

ModuleWithHom quotient_module(const ModulePtr& parent, const Bitset& sub) {
  const FiniteModule& p = *parent;
  if (!is_submodule(p, sub))
    throw std::invalid_argument("quotient by a non-submodule of " + p.label());
  const auto subs = sub.elements();
  std::vector<int> canon(p.size());
  for (int x = 0; x < p.size(); ++x) {
    int least = x;
    for (int s : subs) least = std::min(least, p.add(x, s));
    canon[x] = least;
  }
  std::vector<int> reps;
  for (int x = 0; x < p.size(); ++x)
    if (canon[x] == x) reps.push_back(x);
  std::vector<int> id_of(p.size(), -1);
  for (std::size_t i = 0; i < reps.size(); ++i) id_of[reps[i]] = int(i);
  const int m = int(reps.size());
  const int n = p.ring()->size();
  std::vector<int> add(std::size_t(m) * m), act(std::size_t(n) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      add[std::size_t(i) * m + j] = id_of[canon[p.add(reps[i], reps[j])]];
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < m; ++i)
      act[std::size_t(r) * m + i] = id_of[canon[p.act(r, reps[i])]];
  ModulePtr q = FiniteModule::make(p.ring(), m, std::move(add),
                                   std::move(act), id_of[canon[p.zero()]],
                                   p.label() + "/sub");
  std::vector<int> proj(p.size());
  for (int x = 0; x < p.size(); ++x) proj[x] = id_of[canon[x]];
  return {q, ModuleHom::unchecked(parent, q, std::move(proj))};
}

ModuleWithHom module_from_ideal(const Ideal& ideal) {
  ModulePtr reg = regular_module(ideal.ring());
  ModuleWithHom sub = submodule_module(reg, ideal.members());
  ModulePtr named = FiniteModule::make(
      sub.module->ring(), sub.module->size(), sub.module->add_table(),
      sub.module->act_table(), sub.module->zero(), format_ideal(ideal));
  return {named, ModuleHom::unchecked(named, reg, sub.hom.images())};
}

ModuleWithHom cyclic_quotient(const Ideal& ideal) {
  ModulePtr reg = regular_module(ideal.ring());
  ModuleWithHom q = quotient_module(reg, ideal.members());
  // Relabel with the canonical notation.
  ModulePtr named = FiniteModule::make(
      q.module->ring(), q.module->size(), q.module->add_table(),
      q.module->act_table(), q.module->zero(),
      ideal.ring()->label() + "/" + format_ideal(ideal));
  return {named, ModuleHom::unchecked(reg, named, q.hom.images())};
}

DirectSum direct_sum(const std::vector<ModulePtr>& parts,
                     const Budget& budget) {
  if (parts.empty()) throw std::invalid_argument("direct sum of nothing");
  RingPtr ring = parts[0]->ring();
  std::size_t total = 1;
  for (const auto& p : parts) {
    if (p->ring() != ring)
      throw std::invalid_argument("direct sum over mixed rings");
    total *= std::size_t(p->size());
    if (total > budget.carrier_limit)
      throw BudgetError("direct sum carrier exceeds the configured limit");
  }
  const int m = int(total);
  const int n = ring->size();
  const int np = int(parts.size());
  // Mixed-radix packing, first summand fastest.
  auto unpack = [&](int x, std::vector<int>& out) {
    for (int i = 0; i < np; ++i) {
      out[i] = x % parts[i]->size();
      x /= parts[i]->size();
    }
  };
  auto pack = [&](const std::vector<int>& c) {
    int x = 0;
    for (int i = np - 1; i >= 0; --i) x = x * parts[i]->size() + c[i];
    return x;
  };
  std::vector<int> add(std::size_t(m) * m), act(std::size_t(n) * m);
  std::vector<int> cx(np), cy(np), cz(np);
  for (int x = 0; x < m; ++x) {
    unpack(x, cx);
    for (int y = 0; y < m; ++y) {
      unpack(y, cy);
      for (int i = 0; i < np; ++i) cz[i] = parts[i]->add(cx[i], cy[i]);
      add[std::size_t(x) * m + y] = pack(cz);
    }
    for (int r = 0; r < n; ++r) {
      for (int i = 0; i < np; ++i) cz[i] = parts[i]->act(r, cx[i]);
      act[std::size_t(r) * m + x] = pack(cz);
    }
  }
  std::vector<int> zc(np);
  for (int i = 0; i < np; ++i) zc[i] = parts[i]->zero();
  std::string label = parts[0]->label();
  for (int i = 1; i < np; ++i) label += " (+) " + parts[i]->label();
  ModulePtr sum = FiniteModule::make(ring, m, std::move(add), std::move(act),
                                     pack(zc), label, budget);
  DirectSum out;
  out.module = sum;
  for (int i = 0; i < np; ++i) {
    std::vector<int> inj(parts[i]->size());
    for (int v = 0; v < parts[i]->size(); ++v) {
      std::vector<int> c = zc;
      c[i] = v;
      inj[v] = pack(c);
    }
    out.injections.push_back(
        ModuleHom::unchecked(parts[i], sum, std::move(inj)));
    std::vector<int> proj(m);
    std::vector<int> cc(np);
    for (int x = 0; x < m; ++x) {
      unpack(x, cc);
      proj[x] = cc[i];
    }
    out.projections.push_back(
        ModuleHom::unchecked(sum, parts[i], std::move(proj)));
  }
  return out;
}

GeneratingSet greedy_generators(const FiniteModule& m) {
  const int n = m.ring()->size();
  GeneratingSet gs;
  gs.rep.assign(m.size(), {});
  Bitset span(m.size());
  span.set(m.zero());
  while (span.count() < std::size_t(m.size())) {
    int best = -1;
    std::size_t best_size = 0;
    for (int c = 0; c < m.size(); ++c) {
      if (span.test(c)) continue;
      // One pass suffices: {x + r*c} is already a submodule.
      Bitset grown(m.size());
      for (int x : span.elements())
        for (int r = 0; r < n; ++r) grown.set(m.add(x, m.act(r, c)));
      if (grown.count() > best_size) {
        best = c;
        best_size = grown.count();
      }
    }
    require(best >= 0, "greedy generator selection stalled");
    const std::vector<int> old_elems = span.elements();
    // Old elements pick up coefficient 0 for the new generator; new ones
    // get rep[x] with the last slot set to r (first write wins, r then x
    // ascending).
    for (int x : old_elems) gs.rep[x].push_back(m.ring()->zero());
    Bitset grown = span;
    for (int r = 0; r < n; ++r)
      for (int x : old_elems) {
        int y = m.add(x, m.act(r, best));
        if (grown.test(y)) continue;
        gs.rep[y] = gs.rep[x];
        gs.rep[y].back() = r;
        grown.set(y);
      }
    gs.gens.push_back(best);
    span = grown;
  }
  return gs;
}

namespace {

// Generating rows of a submodule of the tuple space R^k, given the full
// sorted list of its tuple indices. Greedy largest-new-span selection.
std::vector<std::vector<int>> generating_rows(
    const std::vector<std::uint64_t>& kernel_tuples, const FiniteRing& ring,
    int k) {
  const int n = ring.size();
  std::vector<std::vector<int>> rows;
  if (k == 0) return rows;
  auto tuple_add = [&](std::uint64_t a, std::uint64_t b) {
    int da[32], db[32];
    decode_tuple(a, n, k, da);
    decode_tuple(b, n, k, db);
    for (int i = 0; i < k; ++i) da[i] = ring.add(da[i], db[i]);
    return encode_tuple(da, n, k);
  };
  auto tuple_scale = [&](int r, std::uint64_t a) {
    int da[32];
    decode_tuple(a, n, k, da);
    for (int i = 0; i < k; ++i) da[i] = ring.mul(r, da[i]);
    return encode_tuple(da, n, k);
  };
  int zero_digits[32];
  for (int i = 0; i < k; ++i) zero_digits[i] = ring.zero();
  const std::uint64_t zero_tuple = encode_tuple(zero_digits, n, k);
  std::set<std::uint64_t> span{zero_tuple};
  if (kernel_tuples.size() <= 1) {
    // Trivial kernel: report a single zero row.
    rows.push_back(std::vector<int>(k, ring.zero()));
    return rows;
  }
  while (span.size() < kernel_tuples.size()) {
    std::uint64_t best = 0;
    std::size_t best_size = 0;
    for (std::uint64_t t : kernel_tuples) {
      if (span.count(t)) continue;
      std::set<std::uint64_t> grown;
      for (std::uint64_t x : span)
        for (int r = 0; r < n; ++r)
          grown.insert(tuple_add(x, tuple_scale(r, t)));
      if (grown.size() > best_size) {
        best_size = grown.size();
        best = t;
      }
    }
    std::set<std::uint64_t> grown;
    for (std::uint64_t x : span)
      for (int r = 0; r < n; ++r)
        grown.insert(tuple_add(x, tuple_scale(r, best)));
    span = std::move(grown);
    int digits[32];
    decode_tuple(best, n, k, digits);
    rows.emplace_back(digits, digits + k);
  }
  return rows;
}

std::vector<std::uint64_t> full_syzygies(const FiniteModule& m,
                                         const GeneratingSet& gs,
                                         const Budget& budget) {
  const int n = m.ring()->size();
  const int k = int(gs.gens.size());
  if (k == 0) return {0};
  auto space = checked_pow(std::uint64_t(n), k);
  if (!space || *space > budget.tuple_limit)
    throw BudgetError("syzygy scan |R|^" + std::to_string(k) +
                      " exceeds the tuple budget");
  return kernels::scan_syzygy_tuples(n, k, *space, m.size(), m.add_table(),
                                     m.act_table(), m.zero(), gs.gens,
                                     kernels::execution_policy());
}

}  // namespace

Presentation presentation(const ModulePtr& m, const Budget& budget) {
  GeneratingSet gs = greedy_generators(*m);
  auto kernel_tuples = full_syzygies(*m, gs, budget);
  std::vector<int> gens = gs.gens;
  auto rows = generating_rows(kernel_tuples, *m->ring(), int(gens.size()));
  return Presentation{m, std::move(gens), std::move(rows)};
}

std::vector<ModuleHom> hom_set(const ModulePtr& m, const ModulePtr& n,
                               const Budget& budget) {
  if (m->ring() != n->ring())
    throw std::invalid_argument("hom set over different rings");
  GeneratingSet gs = greedy_generators(*m);
  const int k = int(gs.gens.size());
  auto rows = generating_rows(full_syzygies(*m, gs, budget), *m->ring(), k);
  auto space = checked_pow(std::uint64_t(n->size()), k);
  if (!space || *space > budget.tuple_limit)
    throw BudgetError("hom scan |N|^" + std::to_string(k) +
                      " exceeds the tuple budget");
  auto tuples = kernels::scan_hom_tuples(
      k, *space, n->size(), n->add_table(), n->act_table(), n->zero(), rows,
      kernels::execution_policy());
  std::vector<ModuleHom> out;
  out.reserve(tuples.size());
  int digits[32];
  for (std::uint64_t t : tuples) {
    decode_tuple(t, n->size(), k, digits);
    std::vector<int> images(m->size());
    for (int x = 0; x < m->size(); ++x) {
      int acc = n->zero();
      for (int i = 0; i < k; ++i)
        acc = n->add(acc, n->act(gs.rep[x][i], digits[i]));
      images[x] = acc;
    }
    out.push_back(ModuleHom::unchecked(m, n, std::move(images)));
  }
  return out;
}

HomModule hom_module(const ModulePtr& m, const ModulePtr& n,
                     const Budget& budget) {
  HomModule hm;
  hm.homs = hom_set(m, n, budget);
  const int c = int(hm.homs.size());
  if (std::size_t(c) > budget.carrier_limit)
    throw BudgetError("hom module carrier exceeds the configured limit");
  for (int i = 0; i < c; ++i) hm.index[hm.homs[i].images()] = i;
  const int rn = m->ring()->size();
  std::vector<int> add(std::size_t(c) * c), act(std::size_t(rn) * c);
  std::vector<int> tmp(m->size());
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) {
      for (int x = 0; x < m->size(); ++x)
        tmp[x] = n->add(hm.homs[i](x), hm.homs[j](x));
      int id = hm.index_of(tmp);
      require(id >= 0, "hom module not closed under addition");
      add[std::size_t(i) * c + j] = id;
    }
  for (int r = 0; r < rn; ++r)
    for (int i = 0; i < c; ++i) {
      for (int x = 0; x < m->size(); ++x) tmp[x] = n->act(r, hm.homs[i](x));
      int id = hm.index_of(tmp);
      require(id >= 0, "hom module not closed under the action");
      act[std::size_t(r) * c + i] = id;
    }
  int zero_id = hm.index_of(std::vector<int>(m->size(), n->zero()));
  require(zero_id >= 0, "hom module misses the zero map");
  hm.module = FiniteModule::make(
      m->ring(), c, std::move(add), std::move(act), zero_id,
      "Hom(" + m->label() + ", " + n->label() + ")", budget);
  return hm;
}

ModuleWithHom kernel(const ModuleHom& f) {
  return submodule_module(f.source(), f.kernel_set());
}

ModuleWithHom image(const ModuleHom& f) {
  return submodule_module(f.target(), f.image_set());
}

ModuleWithHom cokernel(const ModuleHom& f) {
  return quotient_module(f.target(), f.image_set());
}

TensorProduct tensor(const ModulePtr& m, const ModulePtr& n,
                     const Budget& budget) {
  if (m->ring() != n->ring())
    throw std::invalid_argument("tensor over different rings");
  const RingPtr ring = m->ring();
  const int rn = ring->size();
  TensorProduct t;
  t.left_ = m;
  t.right_ = n;
  t.lg_ = greedy_generators(*m);
  t.rg_ = greedy_generators(*n);
  t.k_ = int(t.lg_.gens.size());
  t.l_ = int(t.rg_.gens.size());
  t.ring_n_ = rn;
  const int kl = t.k_ * t.l_;
  require(kl <= 32, "tensor rank exceeds 32");
  auto space = checked_pow(std::uint64_t(rn), kl);
  if (!space || *space > budget.tuple_limit)
    throw BudgetError("tensor space |R|^" + std::to_string(kl) +
                      " exceeds the tuple budget");
  t.space_ = *space;

  auto rows_m =
      generating_rows(full_syzygies(*m, t.lg_, budget), *ring, t.k_);
  auto rows_n =
      generating_rows(full_syzygies(*n, t.rg_, budget), *ring, t.l_);

  // Position of (i, j) in the flattened tuple: left index fastest.
  auto pos = [&](int i, int j) { return i + t.k_ * j; };
  std::vector<std::vector<int>> seeds;
  for (const auto& row : rows_m)
    for (int j = 0; j < t.l_; ++j) {
      std::vector<int> s(kl, ring->zero());
      for (int i = 0; i < t.k_; ++i) s[pos(i, j)] = row[i];
      seeds.push_back(std::move(s));
    }
  for (const auto& row : rows_n)
    for (int i = 0; i < t.k_; ++i) {
      std::vector<int> s(kl, ring->zero());
      for (int j = 0; j < t.l_; ++j) s[pos(i, j)] = row[j];
      seeds.push_back(std::move(s));
    }

  auto tuple_add = [&](std::uint64_t a, std::uint64_t b) {
    int da[32], db[32];
    decode_tuple(a, rn, kl, da);
    decode_tuple(b, rn, kl, db);
    for (int i = 0; i < kl; ++i) da[i] = ring->add(da[i], db[i]);
    return encode_tuple(da, rn, kl);
  };

  // Scaled seeds generate the relation subgroup additively.
  std::vector<std::uint64_t> gen_tuples;
  for (const auto& s : seeds)
    for (int r = 0; r < rn; ++r) {
      std::vector<int> scaled(kl);
      for (int i = 0; i < kl; ++i) scaled[i] = ring->mul(r, s[i]);
      gen_tuples.push_back(encode_tuple(scaled.data(), rn, kl));
    }
  std::sort(gen_tuples.begin(), gen_tuples.end());
  gen_tuples.erase(std::unique(gen_tuples.begin(), gen_tuples.end()),
                   gen_tuples.end());
  int zero_digits[32];
  for (int i = 0; i < kl; ++i) zero_digits[i] = ring->zero();
  const std::uint64_t zero_tuple = encode_tuple(zero_digits, rn, kl);
  std::set<std::uint64_t> relset{zero_tuple};
  std::vector<std::uint64_t> work{zero_tuple};
  while (!work.empty()) {
    std::uint64_t x = work.back();
    work.pop_back();
    for (std::uint64_t g : gen_tuples) {
      std::uint64_t y = tuple_add(x, g);
      if (relset.insert(y).second) work.push_back(y);
    }
  }

  // Cosets, labelled by ascending least representative.
  t.labels_.assign(t.space_, -1);
  for (std::uint64_t u = 0; u < t.space_; ++u) {
    if (t.labels_[u] >= 0) continue;
    int cls = int(t.reps_.size());
    t.reps_.push_back(u);
    for (std::uint64_t r : relset) t.labels_[tuple_add(u, r)] = cls;
  }
  const int c = int(t.reps_.size());
  if (std::size_t(c) > budget.carrier_limit)
    throw BudgetError("tensor carrier exceeds the configured limit");
  std::vector<int> add(std::size_t(c) * c), act(std::size_t(rn) * c);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j)
      add[std::size_t(i) * c + j] = t.labels_[tuple_add(t.reps_[i],
                                                        t.reps_[j])];
  for (int r = 0; r < rn; ++r)
    for (int i = 0; i < c; ++i) {
      int da[32];
      decode_tuple(t.reps_[i], rn, kl, da);
      for (int p = 0; p < kl; ++p) da[p] = ring->mul(r, da[p]);
      act[std::size_t(r) * c + i] = t.labels_[encode_tuple(da, rn, kl)];
    }
  t.module_ = FiniteModule::make(ring, c, std::move(add), std::move(act),
                                 t.labels_[zero_tuple],
                                 m->label() + " (x) " + n->label(), budget);
  return t;
}

int TensorProduct::pure(int m, int n) const {
  const FiniteRing& ring = *left_->ring();
  const auto& a = lg_.rep[m];
  const auto& b = rg_.rep[n];
  int digits[32];
  for (int j = 0; j < l_; ++j)
    for (int i = 0; i < k_; ++i) digits[i + k_ * j] = ring.mul(a[i], b[j]);
  return labels_[encode_tuple(digits, ring_n_, k_ * l_)];
}

std::vector<int> TensorProduct::rep_digits(int cls) const {
  std::vector<int> digits(k_ * l_);
  decode_tuple(reps_[cls], ring_n_, k_ * l_, digits.data());
  return digits;
}

ModuleHom induced_from_bilinear(const TensorProduct& t,
                                const ModulePtr& target,
                                const std::function<int(int, int)>& fn) {
  const ModulePtr& tm = t.module();
  const FiniteModule& p = *target;
  // Images of the generator pure tensors.
  std::vector<std::vector<int>> gen_img(t.left_rank(),
                                        std::vector<int>(t.right_rank()));
  for (int i = 0; i < t.left_rank(); ++i)
    for (int j = 0; j < t.right_rank(); ++j)
      gen_img[i][j] = fn(t.left_gens().gens[i], t.right_gens().gens[j]);
  std::vector<int> images(tm->size());
  for (int c = 0; c < tm->size(); ++c) {
    auto digits = t.rep_digits(c);
    int acc = p.zero();
    for (int j = 0; j < t.right_rank(); ++j)
      for (int i = 0; i < t.left_rank(); ++i)
        acc = p.add(acc, p.act(digits[i + t.left_rank() * j], gen_img[i][j]));
    images[c] = acc;
  }
  ModuleHom h(tm, target, std::move(images));  // validating
  for (int x = 0; x < t.left()->size(); ++x)
    for (int y = 0; y < t.right()->size(); ++y)
      require(h(t.pure(x, y)) == fn(x, y),
              "bilinear map does not factor through the tensor product");
  return h;
}

bool is_flat(const RingPtr& ring, const ModulePtr& m, const Budget& budget) {
  for (const Ideal& ideal : enumerate_ideals(ring)) {
    ModuleWithHom jm = module_from_ideal(ideal);
    const std::vector<int> elems = ideal.elements();
    TensorProduct t = tensor(jm.module, m, budget);
    ModuleHom ev = induced_from_bilinear(
        t, m, [&](int a, int x) { return m->act(elems[a], x); });
    if (!ev.is_injective()) return false;
  }
  return true;
}

namespace {

ClassicalLocalization classical_impl(const MultSet& s, const ModulePtr& m,
                                     const Budget& budget, bool make_ring) {
  const RingPtr ring = s.ring();
  const FiniteModule& mm = *m;
  const std::vector<int> sel = s.elements();
  const int ns = int(sel.size());
  const int np = mm.size() * ns;
  auto pair_index = [&](int x, int spos) { return x * ns + spos; };
  auto equivalent = [&](int x, int sa, int y, int sb) {
    // exists t in S with t(s_b x - s_a y) = 0
    int d = mm.sub(mm.act(sel[sb], x), mm.act(sel[sa], y));
    for (int t : sel)
      if (mm.act(t, d) == mm.zero()) return true;
    return false;
  };
  std::vector<int> label(np, -1);
  std::vector<int> reps;
  for (int p = 0; p < np; ++p) {
    if (label[p] >= 0) continue;
    int cls = int(reps.size());
    reps.push_back(p);
    label[p] = cls;
    int x = p / ns, sa = p % ns;
    for (int q = p + 1; q < np; ++q) {
      if (label[q] >= 0) continue;
      if (equivalent(x, sa, q / ns, q % ns)) label[q] = cls;
    }
  }
  const int c = int(reps.size());
  const int rn = ring->size();
  auto cls_of = [&](int x, int spos) { return label[pair_index(x, spos)]; };
  std::vector<int> add(std::size_t(c) * c), act(std::size_t(rn) * c);
  for (int i = 0; i < c; ++i) {
    int xi = reps[i] / ns, si = reps[i] % ns;
    for (int j = 0; j < c; ++j) {
      int xj = reps[j] / ns, sj = reps[j] % ns;
      int num = mm.add(mm.act(sel[sj], xi), mm.act(sel[si], xj));
      int den_elem = ring->mul(sel[si], sel[sj]);
      int den = int(std::find(sel.begin(), sel.end(), den_elem) - sel.begin());
      add[std::size_t(i) * c + j] = cls_of(num, den);
    }
    for (int r = 0; r < rn; ++r)
      act[std::size_t(r) * c + i] = cls_of(mm.act(r, xi), si);
  }
  int one_pos = int(std::find(sel.begin(), sel.end(), ring->one()) -
                    sel.begin());
  int zero_id = cls_of(mm.zero(), one_pos);
  ModulePtr loc = FiniteModule::make(
      ring, c, std::move(add), std::move(act), zero_id,
      "loc(" + mm.label() + ")", budget);
  std::vector<int> pi(mm.size());
  for (int x = 0; x < mm.size(); ++x) pi[x] = cls_of(x, one_pos);
  ClassicalLocalization out{loc, ModuleHom::unchecked(m, loc, std::move(pi)),
                            nullptr, std::nullopt};
  if (make_ring) {
    std::vector<int> rmul(std::size_t(c) * c);
    for (int i = 0; i < c; ++i) {
      int xi = reps[i] / ns, si = reps[i] % ns;
      for (int j = 0; j < c; ++j) {
        int xj = reps[j] / ns, sj = reps[j] % ns;
        int den_elem = ring->mul(sel[si], sel[sj]);
        int den =
            int(std::find(sel.begin(), sel.end(), den_elem) - sel.begin());
        rmul[std::size_t(i) * c + j] = cls_of(ring->mul(xi, xj), den);
      }
    }
    out.ring = FiniteRing::make(c, loc->add_table(), std::move(rmul), zero_id,
                                cls_of(ring->one(), one_pos),
                                "S^{-1}" + ring->label(), budget);
    out.ring_map.emplace(ring, out.ring, out.pi.images());
  }
  return out;
}

}  // namespace

ClassicalLocalization classical_localization(const MultSet& s,
                                             const ModulePtr& m,
                                             const Budget& budget) {
  return classical_impl(s, m, budget, false);
}

ClassicalLocalization classical_localization_ring(const MultSet& s,
                                                  const Budget& budget) {
  return classical_impl(s, regular_module(s.ring()), budget, true);
}

ModulePtr module_via_map(const RingMap& map, const ModulePtr& target_module) {
  const FiniteModule& nm = *target_module;
  const RingPtr src = map.source();
  const int n = src->size();
  std::vector<int> act(std::size_t(n) * nm.size());
  for (int r = 0; r < n; ++r)
    for (int x = 0; x < nm.size(); ++x)
      act[std::size_t(r) * nm.size() + x] = nm.act(map(r), x);
  return FiniteModule::make(src, nm.size(), nm.add_table(), std::move(act),
                            nm.zero(), nm.label() + " over " + src->label());
}

ModulePtr module_via_map_regular(const RingMap& map) {
  return module_via_map(map, regular_module(map.target()));
}

std::optional<ModuleHom> find_module_iso(const ModulePtr& m,
                                         const ModulePtr& n,
                                         const Budget& budget) {
  if (m->size() != n->size()) return std::nullopt;
  for (const ModuleHom& h : hom_set(m, n, budget))
    if (h.is_bijective()) return h;
  return std::nullopt;
}

namespace {

int additive_order(const FiniteRing& r, int a) {
  int acc = a, ord = 1;
  while (acc != r.zero()) {
    acc = r.add(acc, a);
    ++ord;
  }
  return ord;
}

}  // namespace

std::vector<RingMap> enumerate_ring_maps(const RingPtr& a, const RingPtr& b,
                                         const Budget& budget) {
  // Additive homs A -> B are Z/e-linear maps A -> B[e] for e the additive
  // exponent of A; enumerate those with the module engine, then filter the
  // multiplicative unital ones.
  int e = 1;
  for (int x = 0; x < a->size(); ++x)
    e = std::lcm(e, additive_order(*a, x));
  Budget zb = budget;
  zb.ring_order_limit = std::max(zb.ring_order_limit, e);
  RingPtr ze = ring_zmod(e, zb);
  auto as_ze_module = [&](const FiniteRing& r,
                          const std::vector<int>& members) {
    const int m = int(members.size());
    std::vector<int> pos(r.size(), -1);
    for (int i = 0; i < m; ++i) pos[members[i]] = i;
    std::vector<int> add(std::size_t(m) * m), act(std::size_t(e) * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        add[std::size_t(i) * m + j] = pos[r.add(members[i], members[j])];
    for (int i = 0; i < m; ++i) {
      int acc = r.zero();
      for (int k = 0; k < e; ++k) {
        act[std::size_t(k) * m + i] = pos[acc];
        acc = r.add(acc, members[i]);
      }
    }
    return FiniteModule::make(ze, m, std::move(add), std::move(act),
                              pos[r.zero()], r.label() + " as Z/" +
                              std::to_string(e) + "-module", budget);
  };
  std::vector<int> a_all(a->size());
  std::iota(a_all.begin(), a_all.end(), 0);
  std::vector<int> b_tor;  // e-torsion part: orders dividing e
  for (int y = 0; y < b->size(); ++y)
    if (e % additive_order(*b, y) == 0) b_tor.push_back(y);
  ModulePtr am = as_ze_module(*a, a_all);
  ModulePtr bm = as_ze_module(*b, b_tor);
  std::vector<RingMap> out;
  for (const ModuleHom& h : hom_set(am, bm, budget)) {
    std::vector<int> images(a->size());
    for (int x = 0; x < a->size(); ++x) images[x] = b_tor[h(x)];
    if (images[a->one()] != b->one()) continue;
    bool mult = true;
    for (int x = 0; x < a->size() && mult; ++x)
      for (int y = x; y < a->size(); ++y)
        if (images[a->mul(x, y)] != b->mul(images[x], images[y])) {
          mult = false;
          break;
        }
    if (!mult) continue;
    out.emplace_back(a, b, std::move(images));
  }
  return out;
}

std::optional<RingMap> find_ring_iso(const RingPtr& a, const RingPtr& b,
                                     const Budget& budget) {
  if (a->size() != b->size()) return std::nullopt;
  for (const RingMap& f : enumerate_ring_maps(a, b, budget)) {
    Bitset im(b->size());
    for (int v : f.images()) im.set(v);
    if (im.count() == std::size_t(b->size())) return f;
  }
  return std::nullopt;
}

bool ExactSequenceWitness::holds() const {
  for (int p : positions) {
    if (p < 0 || p + 1 >= int(maps.size())) return false;
    if (!FiniteModule::same_structure(*maps[p].target(),
                                      *maps[p + 1].source()))
      return false;
    if (maps[p].image_set() != maps[p + 1].kernel_set()) return false;
  }
  return true;
}

}  // namespace gloc
