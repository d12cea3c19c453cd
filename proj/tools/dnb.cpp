#include <iostream>

#include "CLI11.hpp"
#include "dnb/cli.hpp"

int main(int argc, char** argv) {
  dnb::cli::Options opt;
  CLI::App app{"Neumann eigenvalue lower bounds with density on conformal images of the disk"};
  app.set_version_flag("--version", std::string(dnb::cli::kVersion));
  app.require_subcommand(1, 1);
  app.add_option("--config", opt.config_path, "scenario config file")->required();
  app.add_option("--out", opt.out_path, "CSV output path (default stdout)");
  app.add_option("--jobs", opt.jobs, "scenarios run concurrently")->check(CLI::PositiveNumber);
  app.add_option("--fem-level", opt.fem_level, "finest FEM mesh level")->check(CLI::Range(2, 8));
  app.add_option("--tol", opt.tol, "soundness tolerance: bound <= mu_fem * (1 + tol)")
      ->check(CLI::NonNegativeNumber);
  app.fallthrough();
  app.add_subcommand("bound", "analytic lower bounds per (scenario, method)");
  app.add_subcommand("verify", "bounds plus the FEM oracle and soundness check");
  app.add_subcommand("sweep", "Gaussian density sweep with slope summary");
  app.add_subcommand("norms", "standalone K_q, K_Phi and Luxemburg norms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  opt.command = app.get_subcommands().front()->get_name();
  return dnb::cli::run(opt, std::cout, std::cerr);
}
