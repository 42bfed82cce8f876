#pragma once

#include <vector>

#include "gloc/module.hpp"

// Test-only oracle: enumerate every set map M -> N and keep the linear
// ones. Exponential in |M|; deliberately independent of the
// generator-extension path in hom_set.
inline std::vector<gloc::ModuleHom> brute_force_hom_set(
    const gloc::ModulePtr& m, const gloc::ModulePtr& n) {
  std::vector<gloc::ModuleHom> out;
  std::uint64_t space = 1;
  for (int i = 0; i < m->size(); ++i) space *= std::uint64_t(n->size());
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    std::vector<int> img(m->size());
    std::uint64_t t = idx;
    for (int x = 0; x < m->size(); ++x) {
      img[x] = int(t % n->size());
      t /= n->size();
    }
    bool ok = img[m->zero()] == n->zero();
    for (int x = 0; x < m->size() && ok; ++x)
      for (int y = x; y < m->size() && ok; ++y)
        if (img[m->add(x, y)] != n->add(img[x], img[y])) ok = false;
    for (int r = 0; r < m->ring()->size() && ok; ++r)
      for (int x = 0; x < m->size() && ok; ++x)
        if (img[m->act(r, x)] != n->act(r, img[x])) ok = false;
    if (ok) out.push_back(gloc::ModuleHom::unchecked(m, n, std::move(img)));
  }
  return out;
}

inline std::vector<std::vector<int>> image_tables(
    const std::vector<gloc::ModuleHom>& homs) {
  std::vector<std::vector<int>> out;
  for (const auto& h : homs) out.push_back(h.images());
  std::sort(out.begin(), out.end());
  return out;
}
