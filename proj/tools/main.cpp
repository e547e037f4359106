#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace cliff;

int main(int argc, char** argv) {
  CLI::App app{"cliffkit: Clifford index, Shiffer variation and Koszul checks on y^n = f(x)"};
  app.require_subcommand(1);
  cli::RunConfig cfg;
  uint32_t prime = 0;
  std::string json_path;
  bool json_stdout = false;

  app.add_option("--spec", cfg.spec_path, "curve file")->envname("CLIFFKIT_SPEC")->check(CLI::ExistingFile);
  app.add_option("--prime", prime, "override the characteristic")->envname("CLIFFKIT_PRIME");
  app.add_option("--seed", cfg.seed, "random seed")->envname("CLIFFKIT_SEED");
  app.add_option("--budget-deg", cfg.budget_deg, "maximal divisor degree in Clifford searches")
      ->envname("CLIFFKIT_BUDGET_DEG");
  app.add_option("--trials", cfg.trials, "samples per randomized check")->envname("CLIFFKIT_TRIALS");
  app.add_option("--parallel", cfg.parallel, "worker threads")->envname("CLIFFKIT_PARALLEL");
  app.add_option("--oversample", cfg.oversample, "cloud size factor for vanishing ideals")
      ->envname("CLIFFKIT_OVERSAMPLE");
  app.add_option("--entry-budget", cfg.entry_budget, "largest Koszul matrix, in entries")
      ->envname("CLIFFKIT_ENTRY_BUDGET");
  app.add_option("--json", json_path, "also write the report as JSON to this path")->envname("CLIFFKIT_JSON");
  app.add_flag("--json-stdout", json_stdout, "print JSON instead of text");

  std::map<std::string, std::function<Report(const cli::RunConfig&, const cli::Loaded&)>> dispatch = {
      {"info", cli::cmd_info},       {"rr", cli::cmd_rr},         {"cliff", cli::cmd_cliff},
      {"shiffer", cli::cmd_shiffer}, {"detpres", cli::cmd_detpres}, {"secant", cli::cmd_secant},
      {"koszul", cli::cmd_koszul},   {"suite", cli::cmd_suite}};

  app.add_subcommand("info", "genus, infinity structure, rational point count, tower data");
  app.add_subcommand("rr", "Riemann-Roch spaces of the declared divisors");
  auto* cliff_cmd = app.add_subcommand("cliff", "Clifford index of C and of K(D); Petri checks");
  cliff_cmd->add_option("--twist-degree", cfg.twist_degree, "deg D for the K(D) check (0 to skip)");
  app.add_subcommand("shiffer", "rank bounds, minimal-rank witnesses and the point cross-check");
  auto* dp = app.add_subcommand("detpres", "minors of the multiplication matrix against secant ideals");
  dp->add_option("--k", cfg.k, "secant level: (k+1)-minors against Sec^{k-1}");
  dp->add_option("--deg1", cfg.deg1, "degree of the first bundle");
  dp->add_option("--deg2", cfg.deg2, "degree of the second bundle");
  app.add_subcommand("secant", "rank loci, off-curve planes and tangent spaces");
  auto* kz = app.add_subcommand("koszul", "Betti table of K and the class constructions");
  kz->add_option("--pmax", cfg.pmax, "largest p in the table (default g - 1)");
  kz->add_option("--qmax", cfg.qmax, "largest q in the table");
  kz->add_option("--twist-degree", cfg.twist_degree, "deg D for the K(D) class (0 to skip)");
  auto* suite = app.add_subcommand("suite", "every check that fits the curve");
  suite->add_option("--twist-degree", cfg.twist_degree, "deg D for the K(D) checks");

  CLI11_PARSE(app, argc, argv);
  if (cfg.spec_path.empty()) {
    std::cerr << "error: --spec is required\n";
    return 2;
  }
  if (prime != 0) cfg.prime = prime;

  try {
    const auto loaded = cli::load(cfg);
    const std::string name = app.get_subcommands().front()->get_name();
    const Report rep = dispatch.at(name)(cfg, loaded);
    if (json_stdout)
      std::cout << rep.to_json();
    else
      std::cout << rep.to_text();
    if (!json_path.empty()) std::ofstream(json_path) << rep.to_json();
    return rep.all_passed() ? 0 : 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << " (raise --entry-budget or shrink the window)\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
