#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "cqed/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Cavity QED eigensolver in several gauges"};
  app.require_subcommand(1);

  const std::map<std::string, std::string> help = {
      {"matter-solve", "bare matter eigenstates and dipole matrix"},
      {"spectrum", "polariton spectrum at cavity.gamma_over_omega"},
      {"sweep-coupling", "spectra along the coupling axis"},
      {"dispersion", "bands along the k axis (k-resolved gauges)"},
      {"dispersion2d", "bands on the k by k_beta grid"},
      {"convergence", "basis ladder study along the coupling axis"},
      {"photon-number", "Coulomb-gauge photon numbers along the sweep axis"},
      {"replay", "re-run a run.json record"},
  };

  cqed::CommandOptions opt;
  std::string gauge, out;
  for (const auto& name : cqed::command_names()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("config", opt.config, name == "replay" ? "run.json written by an earlier run" : "JSON config")
        ->required()
        ->check(CLI::ExistingFile);
    if (name != "matter-solve") sub->add_option("--gauge", gauge, "pf, pa, ad, rad, rad-k, rad-k-blwa or pa-k-blwa");
    sub->add_option("--out", out, "output directory");
    if (name != "matter-solve") sub->add_flag("--eigvecs", opt.eigvecs, "store eigenvectors in result.json");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.command = app.get_subcommands().front()->get_name();
  if (!gauge.empty()) opt.gauge = gauge;
  if (!out.empty()) opt.out = out;
  return cqed::run_command(opt, std::cout, std::cerr);
}
