#include <iostream>

#include <CLI11.hpp>

#include "gloc/cli.hpp"
#include "gloc/kernels.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gabriel localization over finite commutative rings"};
  app.require_subcommand(1);

  gloc::RunConfig cfg;
  std::string ring_spec, system_spec, module_spec;
  std::uint64_t budget = gloc::default_budget().tuple_limit;
  bool serial = false;

  auto add_common = [&](CLI::App* sub, bool ring_required) {
    auto* opt = sub->add_option("--ring", ring_spec,
                                "ring spec: Z/n, products via ' x ', @file");
    if (ring_required) opt->required();
    sub->add_flag("--json", cfg.json, "emit JSON instead of text");
    sub->add_option("--budget", budget, "enumeration cap for tuple scans");
    sub->add_option("--seed", cfg.seed, "seed for sampled checks");
    sub->add_flag("--timings", cfg.timings, "include elapsed ms in reports");
    sub->add_flag("--serial", serial, "run the scan kernels serially");
  };

  auto* analyze = app.add_subcommand("analyze-ring",
                                     "ideal lattice, primes and units");
  add_common(analyze, true);
  auto* systems = app.add_subcommand(
      "systems", "enumerate the idempotent topologizing systems");
  add_common(systems, true);
  auto* localize = app.add_subcommand("localize",
                                      "localize the ring or a module");
  add_common(localize, true);
  localize->add_option("--system", system_spec, "system spec")->required();
  localize->add_option("--module", module_spec,
                       "module spec: R or R/{...} (default R)");
  auto* classify = app.add_subcommand(
      "classify-epis", "classify all quotient maps and reconstruct the "
                       "flat epimorphisms");
  add_common(classify, true);
  auto* verify = app.add_subcommand(
      "verify", "run the verification battery (default: all battery rings)");
  add_common(verify, false);

  CLI11_PARSE(app, argc, argv);

  if (serial) gloc::kernels::execution_policy() = gloc::kernels::Exec::Serial;
  cfg.budget.tuple_limit = budget;
  cfg.ring_spec = ring_spec;
  if (!system_spec.empty()) cfg.system_spec = system_spec;
  if (!module_spec.empty()) cfg.module_spec = module_spec;

  if (analyze->parsed()) cfg.command = gloc::RunConfig::Command::AnalyzeRing;
  if (systems->parsed()) cfg.command = gloc::RunConfig::Command::Systems;
  if (localize->parsed()) cfg.command = gloc::RunConfig::Command::Localize;
  if (classify->parsed()) cfg.command = gloc::RunConfig::Command::ClassifyEpis;
  if (verify->parsed()) cfg.command = gloc::RunConfig::Command::Verify;

  return gloc::run(cfg, std::cout, std::cerr);
}
