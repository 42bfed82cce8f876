#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "gloc/theorems.hpp"

namespace gloc {

/// A fully parsed invocation. Every sampled check derives from the single
/// seed, so equal configs produce byte-identical output.
struct RunConfig {
  enum class Command { AnalyzeRing, Systems, Localize, ClassifyEpis, Verify };
  Command command = Command::AnalyzeRing;
  std::string ring_spec;  // empty Verify spec means the whole battery
  std::optional<std::string> system_spec;
  std::optional<std::string> module_spec;
  bool json = false;
  bool timings = false;
  Budget budget;
  std::uint64_t seed = 1;
};

/// System mini-grammar: all | unit | meets:{a,b,...} | comax:{ideal} |
/// primes-avoid:{ideal;ideal} | vsub:{ideal} |
/// map:<target-ring-spec>:<image-list> | explicit:{ideal;ideal;...}
/// where an ideal is a brace list of generating elements.
TopologizingSystem parse_system_spec(const RingPtr& ring,
                                     const std::string& spec,
                                     const Budget& budget = default_budget());

/// Module grammar: `R` for the regular module or `R/{a,b,...}` for the
/// cyclic quotient by the generated ideal.
ModulePtr parse_module_spec(const RingPtr& ring, const std::string& spec,
                            const Budget& budget = default_budget());

/// Executes a command. Exit code 0 on success with all verdicts passing,
/// 1 on verification failure, 2 on parse errors, 3 on exceeded budgets.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gloc
