#include "gloc/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace gloc {

namespace {

std::string element_set(const Bitset& b) {
  std::string s = "{";
  bool first = true;
  for (int a : b.elements()) {
    if (!first) s += ",";
    s += std::to_string(a);
    first = false;
  }
  return s + "}";
}

std::vector<int> parse_int_list(const std::string& text,
                                const std::string& what) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    if (cur.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad " + what + ": " + cur);
    out.push_back(std::stoi(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

std::string brace_body(const std::string& spec, const std::string& what) {
  if (spec.size() < 2 || spec.front() != '{' || spec.back() != '}')
    throw ParseError(what + " wants a brace list, got: " + spec);
  return spec.substr(1, spec.size() - 2);
}

// Splits {..};{..};... at top level.
std::vector<std::string> split_ideals(const std::string& body) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ';' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Ideal parse_ideal(const RingPtr& ring, const std::string& spec) {
  return Ideal::span(ring, parse_int_list(brace_body(spec, "ideal"),
                                          "ideal element"));
}

}  // namespace

TopologizingSystem parse_system_spec(const RingPtr& ring,
                                     const std::string& spec,
                                     const Budget& budget) {
  (void)budget;
  if (spec == "all") return system_all(ring);
  if (spec == "unit") return system_unit(ring);
  auto starts = [&](const char* p) { return spec.rfind(p, 0) == 0; };
  if (starts("meets:")) {
    auto seed = parse_int_list(brace_body(spec.substr(6), "meets"),
                               "element");
    return system_meets(mult_closure(ring, seed));
  }
  if (starts("comax:")) return system_comaximal(parse_ideal(ring, spec.substr(6)));
  if (starts("vsub:")) return system_v_subset(parse_ideal(ring, spec.substr(5)));
  if (starts("primes-avoid:")) {
    std::vector<Ideal> primes;
    for (const std::string& s :
         split_ideals(brace_body(spec.substr(13), "primes-avoid")))
      primes.push_back(parse_ideal(ring, s));
    return system_primes_avoid(ring, primes);
  }
  if (starts("explicit:")) {
    std::vector<Ideal> family;
    for (const std::string& s :
         split_ideals(brace_body(spec.substr(9), "explicit")))
      family.push_back(parse_ideal(ring, s));
    return system_explicit(ring, std::move(family));
  }
  if (starts("map:")) {
    std::string rest = spec.substr(4);
    std::size_t cut = rest.rfind(':');
    if (cut == std::string::npos)
      throw ParseError("map system wants map:<ring-spec>:<image-list>");
    RingPtr target = build_ring(rest.substr(0, cut), budget);
    std::vector<int> images =
        parse_int_list(rest.substr(cut + 1), "image");
    return system_from_map(RingMap(ring, target, std::move(images)));
  }
  throw ParseError("unknown system spec: " + spec);
}

ModulePtr parse_module_spec(const RingPtr& ring, const std::string& spec,
                            const Budget& budget) {
  (void)budget;
  if (spec == "R") return regular_module(ring);
  if (spec.rfind("R/", 0) == 0)
    return cyclic_quotient(parse_ideal(ring, spec.substr(2))).module;
  throw ParseError("unknown module spec (want R or R/{...}): " + spec);
}

namespace {

void print_analyze(const RingPtr& ring, const RunConfig& cfg,
                   std::ostream& out) {
  auto ideals = enumerate_ideals(ring);
  auto primes = enumerate_primes(ring);
  auto prime_mask = [&](const Ideal& i) {
    for (const Ideal& p : primes)
      if (p.members() == i.members()) return true;
    return false;
  };
  if (cfg.json) {
    nlohmann::json j;
    j["ring"] = ring->label();
    j["order"] = ring->size();
    j["zero"] = ring->zero();
    j["one"] = ring->one();
    j["units"] = ring->units();
    j["ideals"] = nlohmann::json::array();
    for (const Ideal& i : ideals)
      j["ideals"].push_back(
          {{"members", format_ideal(i)}, {"prime", prime_mask(i)}});
    out << j.dump() << "\n";
    return;
  }
  out << "ring " << ring->label() << ": order " << ring->size() << ", zero "
      << ring->zero() << ", one " << ring->one() << "\n";
  out << "units:";
  for (int u : ring->units()) out << " " << u;
  out << "\nideals (" << ideals.size() << "):\n";
  for (const Ideal& i : ideals)
    out << "  " << format_ideal(i) << (prime_mask(i) ? "  prime" : "")
        << "\n";
}

void print_systems(const RingPtr& ring, const RunConfig& cfg,
                   std::ostream& out) {
  auto systems = enumerate_idempotent_systems(ring);
  if (cfg.json) {
    nlohmann::json j;
    j["ring"] = ring->label();
    j["systems"] = nlohmann::json::array();
    for (const auto& f : systems) {
      FiniteTypeWitness w;
      is_finite_type(f, &w);
      j["systems"].push_back(
          {{"members", f.to_string()}, {"generators", w.generators}});
    }
    out << j.dump() << "\n";
    return;
  }
  out << "idempotent topologizing systems on " << ring->label() << " ("
      << systems.size() << "):\n";
  for (const auto& f : systems) out << "  " << f.to_string() << "\n";
}

int print_localize(const RingPtr& ring, const RunConfig& cfg,
                   std::ostream& out, std::ostream& err) {
  if (!cfg.system_spec) {
    err << "localize needs --system\n";
    return 2;
  }
  TopologizingSystem f =
      parse_system_spec(ring, *cfg.system_spec, cfg.budget);
  if (!is_idempotent(f)) {
    err << "system is not idempotent: " << f.to_string() << "\n";
    return 2;
  }
  LocalizeChecks checks;
  checks.seed = cfg.seed;
  const bool ring_mode = !cfg.module_spec || *cfg.module_spec == "R";
  if (ring_mode) {
    LocalizedRing rf = ring_structure(f, cfg.budget, checks);
    Bitset ker = rf.base.j.kernel_set();
    if (cfg.json) {
      nlohmann::json j;
      j["ring"] = ring->label();
      j["system"] = f.to_string();
      j["witness_ideal"] = format_ideal(rf.base.witness_ideal);
      j["torsion"] = format_ideal(Ideal(ring, rf.base.torsion));
      j["localized_order"] = rf.ring_view->size();
      j["j_images"] = rf.base.j.images();
      j["j_bijective"] = rf.base.j.is_bijective();
      out << j.dump() << "\n";
      return 0;
    }
    out << "system " << f.to_string() << " on " << ring->label() << "\n";
    out << "minimum ideal: " << format_ideal(rf.base.witness_ideal) << "\n";
    out << "localized ring order " << rf.ring_view->size()
        << ", kernel of the canonical map: "
        << format_ideal(Ideal(ring, ker)) << "\n";
    return 0;
  }
  ModulePtr m = parse_module_spec(ring, *cfg.module_spec, cfg.budget);
  LocalizeChecks checks_m;
  checks_m.seed = cfg.seed;
  GabrielLocalization mf = localize(f, m, cfg.budget, checks_m);
  if (cfg.json) {
    nlohmann::json j;
    j["ring"] = ring->label();
    j["system"] = f.to_string();
    j["module"] = m->label();
    j["witness_ideal"] = format_ideal(mf.witness_ideal);
    j["torsion"] = element_set(mf.torsion);
    j["localized_order"] = mf.carrier.module->size();
    j["j_images"] = mf.j.images();
    j["j_bijective"] = mf.j.is_bijective();
    out << j.dump() << "\n";
    return 0;
  }
  out << "module " << m->label() << ", system " << f.to_string() << "\n";
  out << "torsion submodule of order " << mf.torsion.count()
      << ", localized module order " << mf.carrier.module->size() << "\n";
  out << "canonical map " << (mf.j.is_bijective() ? "bijective" : "not bijective")
      << ", kernel size " << mf.j.kernel_set().count() << "\n";
  return 0;
}

int print_reports(const std::vector<TheoremReport>& reports,
                  const RunConfig& cfg, std::ostream& out) {
  bool all = true;
  for (const TheoremReport& r : reports) {
    if (!r.pass) all = false;
    if (cfg.json) {
      out << report_json(r, cfg.timings).dump() << "\n";
    } else {
      out << (r.pass ? "[PASS] " : "[FAIL] ") << r.theorem_id << " "
          << r.instance.dump();
      if (!r.pass) out << "  witness " << r.witness.dump();
      out << "\n";
    }
  }
  if (!cfg.json) {
    std::size_t passed = 0;
    for (const TheoremReport& r : reports) passed += r.pass;
    out << (all ? "ALL PASS" : "FAILURES PRESENT") << " (" << passed << "/"
        << reports.size() << ")\n";
  }
  return all ? 0 : 1;
}

int print_classify(const RingPtr& ring, const RunConfig& cfg,
                   std::ostream& out) {
  LocalizeChecks checks;
  checks.seed = cfg.seed;
  std::vector<TheoremReport> reports;
  for (const Ideal& j : enumerate_ideals(ring)) {
    QuotientRing q = quotient_ring(ring, j, cfg.budget);
    bool epi = is_epimorphism(*q.projection, cfg.budget);
    bool flat = is_flat_map(*q.projection, cfg.budget);
    TheoremReport r;
    r.theorem_id = "quotient-classification";
    r.instance = {{"ring", ring->label()}, {"ideal", format_ideal(j)}};
    r.witness = {{"epimorphism", epi}, {"flat", flat}};
    reports.push_back(r);
    if (epi && flat)
      reports.push_back(
          flat_epi_to_localization(*q.projection, cfg.budget, checks));
  }
  return print_reports(reports, cfg, out);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case RunConfig::Command::AnalyzeRing: {
        RingPtr ring = build_ring(config.ring_spec, config.budget);
        print_analyze(ring, config, out);
        return 0;
      }
      case RunConfig::Command::Systems: {
        RingPtr ring = build_ring(config.ring_spec, config.budget);
        print_systems(ring, config, out);
        return 0;
      }
      case RunConfig::Command::Localize: {
        RingPtr ring = build_ring(config.ring_spec, config.budget);
        return print_localize(ring, config, out, err);
      }
      case RunConfig::Command::ClassifyEpis: {
        RingPtr ring = build_ring(config.ring_spec, config.budget);
        return print_classify(ring, config, out);
      }
      case RunConfig::Command::Verify: {
        std::vector<TheoremReport> reports;
        if (config.ring_spec.empty()) {
          reports = verify_battery(config.budget, config.seed);
        } else {
          RingPtr ring = build_ring(config.ring_spec, config.budget);
          reports = verify_ring(ring, config.budget, config.seed);
          std::sort(reports.begin(), reports.end(),
                    [](const TheoremReport& a, const TheoremReport& b) {
                      if (a.theorem_id != b.theorem_id)
                        return a.theorem_id < b.theorem_id;
                      return a.instance.dump() < b.instance.dump();
                    });
        }
        return print_reports(reports, config, out);
      }
    }
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const AxiomError& e) {
    err << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "verification error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace gloc
