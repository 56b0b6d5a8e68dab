// chsh: quasi-probability solver, inequality scans and polarizer simulation.
//
//   chsh solve    --angles "-pi/3 0 pi/3 2*pi/3"
//   chsh scan     --kind chsh --out scan.csv
//   chsh simulate --mode both --samples 100 --draws 1000 --seed 7 --out sim.csv
//   chsh verify

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chsh/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"CHSH inequality toolkit: marginal-system solver, scans, Monte Carlo"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::pair<std::string, std::string>> flag_values;
  std::string angles, grid, kind, pattern, mode, sampling, samples, draws, seed, out, threads;

  struct FlagSpec {
    const char* name;
    std::string* target;
    const char* help;
  };
  const FlagSpec flags[] = {
      {"angles", &angles, "four angles in radians or k*pi/m form, e.g. \"-pi/3 0 pi/3 2*pi/3\""},
      {"grid", &grid, "\"default\" or \"theta1;list2;list3;list4\" with comma-separated lists"},
      {"kind", &kind, "chsh | bell | bell_chsh | basic | wigner_prob | chsh_conditional"},
      {"pattern", &pattern, "pmpp (E13-E14+E23+E24) or mppp (-E13+E14+E23+E24)"},
      {"mode", &mode, "estimator: conditional | unconditional | both"},
      {"sampling", &sampling, "integer | continuous"},
      {"samples", &samples, "samples per grid point (default 100)"},
      {"draws", &draws, "draws per sample (default 1000)"},
      {"seed", &seed, "64-bit seed (default 1)"},
      {"out", &out, "output CSV path (default stdout)"},
      {"threads", &threads, "worker threads, 0 = all cores (default 1)"},
  };
  std::vector<std::pair<const FlagSpec*, CLI::Option*>> options;
  for (const auto& f : flags) options.emplace_back(&f, app.add_option(std::string("--") + f.name, *f.target, f.help));
  app.add_option("--config", config_path, "key=value file; flags override its entries")->check(CLI::ExistingFile);

  auto* solve = app.add_subcommand("solve", "solve the marginal system at one angle set");
  auto* scan = app.add_subcommand("scan", "evaluate an inequality over an angle grid");
  auto* simulate = app.add_subcommand("simulate", "run the Monte Carlo experiment");
  auto* verify = app.add_subcommand("verify", "run the built-in golden checks");
  for (auto* sub : {solve, scan, simulate, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return chsh::kExitUsage;
  }

  return chsh::guarded(std::cerr, [&] {
    for (const auto& [spec, opt] : options)
      if (opt->count() > 0) flag_values.emplace_back(spec->name, *spec->target);
    const auto file_values = config_path.empty() ? std::vector<chsh::Setting>{} : chsh::read_config_file(config_path);
    const chsh::RunConfig config = chsh::resolve_config(file_values, flag_values);

    if (solve->parsed()) return chsh::cmd_solve(config, std::cout);
    if (scan->parsed()) return chsh::cmd_scan(config, std::cout);
    if (simulate->parsed()) return chsh::cmd_simulate(config, std::cout);
    return chsh::cmd_verify(std::cout);
  });
}
