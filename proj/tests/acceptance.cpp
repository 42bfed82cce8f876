// Acceptance suite: one pass/fail line per criterion, exit 0 only when
// every criterion holds.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "gloc/theorems.hpp"
#include "support.hpp"

using namespace gloc;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string lines_of(const std::vector<TheoremReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += report_json(r, false).dump() + "\n";
  return out;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  const Budget budget;
  const std::uint64_t seed = 1;

  // 1. Classical-localization equivalence on Z/n, 2 <= n <= 12, for every
  //    multiplicative subset; exact ring isomorphism, under 60 s.
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    int instances = 0;
    std::string detail;
    for (int n = 2; n <= 12; ++n) {
      RingPtr ring = ring_zmod(n, budget);
      for (const MultSet& s : enumerate_mult_sets(ring)) {
        TheoremReport r =
            classical_vs_gabriel(s, regular_module(ring), budget);
        if (!r.pass) {
          ok = false;
          detail = r.instance.dump();
        }
        ++instances;
      }
    }
    double elapsed = seconds_since(t0);
    bool in_time = elapsed < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d instances in %.1fs", instances,
                  elapsed);
    results.push_back({1, "classical-localization equivalence",
                       ok && in_time, buf + (detail.empty() ? "" : " " +
                       detail)});
  }

  // Two full battery runs back the remaining criteria.
  auto t1 = std::chrono::steady_clock::now();
  std::vector<TheoremReport> run1 = verify_battery(budget, seed);
  double battery1 = seconds_since(t1);
  auto t2 = std::chrono::steady_clock::now();
  std::vector<TheoremReport> run2 = verify_battery(budget, seed);
  double battery2 = seconds_since(t2);

  auto all_pass = [&](const std::string& theorem, int* count = nullptr,
                      std::string* witness = nullptr) {
    bool ok = true;
    int n = 0;
    for (const auto& r : run1) {
      if (r.theorem_id != theorem) continue;
      ++n;
      if (!r.pass) {
        ok = false;
        if (witness)
          *witness = r.instance.dump() + " " + r.witness.dump();
      }
    }
    if (count) *count = n;
    return ok;
  };

  // 2. Flat-quotient criterion: tensor oracle vs annihilator criterion on
  //    every ideal of every battery ring, table rings included.
  {
    int n1 = 0, n2 = 0;
    std::string w;
    bool ok = all_pass("flat-quotient-criterion", &n1, &w) &&
              all_pass("flat-epi-classification", &n2, &w);
    int nonprincipal = 0;
    for (const RingPtr& ring : battery_rings(budget)) {
      for (const Ideal& i : enumerate_ideals(ring))
        if (greedy_generators(*module_from_ideal(i).module).gens.size() >
            1) {
          ++nonprincipal;
          break;
        }
    }
    bool table_ok = nonprincipal >= 2;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d+%d reports, %d rings with non-principal ideals", n1,
                  n2, nonprincipal);
    results.push_back({2, "flat-quotient criterion", ok && table_ok,
                       buf + (w.empty() ? "" : " " + w)});
  }

  // 3. Flat epi <-> localization round trip, both directions.
  {
    int n1 = 0, n2 = 0;
    std::string w;
    bool fwd = all_pass("flat-epi-iff-localization", &n1, &w);
    bool bwd = all_pass("localization-to-flat-epi", &n2, &w);
    int empty_hypotheses = 0;
    for (const auto& r : run1)
      if (r.theorem_id == "localization-to-flat-epi" &&
          r.witness.contains("hypothesis_not_satisfied"))
        ++empty_hypotheses;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d reconstructions, %d converse checks, %d empty "
                  "hypotheses",
                  n1, n2, empty_hypotheses);
    results.push_back({3, "flat epi <-> localization round trip",
                       fwd && bwd, buf + (w.empty() ? "" : " " + w)});
  }

  // 4. Lemma suite with at least 100 seeded sequences and maps.
  {
    bool ok = true;
    std::string w;
    long sequences = 0, maps = 0;
    int reports = 0;
    for (const auto& r : run1) {
      if (r.theorem_id.rfind("lemma-", 0) != 0) continue;
      ++reports;
      if (!r.pass) {
        ok = false;
        w = r.instance.dump() + " " + r.witness.dump();
      }
      if (r.theorem_id == "lemma-left-exactness" &&
          r.witness.contains("sequences"))
        sequences += r.witness.at("sequences").get<int>();
      if (r.theorem_id == "lemma-bijectivity" && r.witness.contains("maps"))
        maps += r.witness.at("maps").get<int>();
    }
    bool enough = sequences >= 100 && maps >= 100;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d lemma reports, %ld sequences, %ld maps", reports,
                  sequences, maps);
    results.push_back(
        {4, "lemma suite", ok && enough, buf + (w.empty() ? "" : " " + w)});
  }

  // 5. Seven-condition consistency.
  {
    int n = 0;
    std::string w;
    bool ok = all_pass("exactness-seven-conditions", &n, &w);
    results.push_back({5, "seven-condition consistency", ok,
                       std::to_string(n) + " systems" +
                           (w.empty() ? "" : " " + w)});
  }

  // 6. Prime correspondence.
  {
    int n = 0;
    std::string w;
    bool ok = all_pass("prime-correspondence", &n, &w);
    results.push_back({6, "prime correspondence", ok,
                       std::to_string(n) + " systems" +
                           (w.empty() ? "" : " " + w)});
  }

  // 7. Oracle cross-validation: the colimit cross-check runs inside every
  //    battery localization (lemma-canonical-map), and the
  //    generator-extension hom sets equal brute force on carriers <= 8.
  {
    int n = 0;
    std::string w;
    bool colimit_ok = all_pass("lemma-canonical-map", &n, &w);
    bool hom_ok = true;
    long pairs = 0;
    for (const RingPtr& ring : battery_rings(budget)) {
      std::vector<ModulePtr> smalls;
      for (const ModulePtr& m : battery_modules(ring, budget))
        if (m->size() <= 8) smalls.push_back(m);
      for (const auto& m : smalls)
        for (const auto& nmod : smalls) {
          if (image_tables(hom_set(m, nmod, budget)) !=
              image_tables(brute_force_hom_set(m, nmod))) {
            hom_ok = false;
            w = ring->label() + ": " + m->label() + " -> " + nmod->label();
          }
          ++pairs;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d cross-checked localizations, %ld hom-set pairs", n,
                  pairs);
    results.push_back({7, "oracle cross-validation", colimit_ok && hom_ok,
                       buf + (w.empty() ? "" : " " + w)});
  }

  // 8. Determinism and runtime of the full battery.
  {
    bool identical = lines_of(run1) == lines_of(run2);
    bool in_time = battery1 < 600.0 && battery2 < 600.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "runs of %.1fs and %.1fs, %s", battery1,
                  battery2,
                  identical ? "byte-identical" : "OUTPUTS DIFFER");
    results.push_back({8, "determinism and runtime", identical && in_time,
                       buf});
  }

  bool all = true;
  for (const Criterion& c : results) {
    std::printf("criterion %d [%s]: %s (%s)\n", c.id, c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.detail.c_str());
    if (!c.pass) all = false;
  }
  std::printf("%s\n", all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
  return all ? 0 : 1;
}
