// eres: command-line front end over the C interface.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eres/eres.h"

namespace {

const char* kCommands[] = {"well",      "cycle", "action",      "resonance",        "harmonics",
                           "trajectory", "psi",  "dissipation", "validate-example", "sweep"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiclassical tunneling across a barrier in a magnetic field"};
  app.set_version_flag("--version", std::string(eres_version()));

  std::string config, out_dir = ".", command, field, grid;
  std::optional<int> N;
  bool quiet = false;

  app.add_option("--config", config, "INI config file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory for summary and fig*.csv");
  app.add_option("--command", command, "what to compute")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kCommands), std::end(kCommands))));
  app.add_option("--H", field, "field override in Tesla; 'HR' puts psi exactly at resonance");
  app.add_option("--N", N, "number of cycles / harmonics override");
  app.add_option("--grid", grid, "field grid lo:hi:steps (sweep, or search range)");
  app.add_flag("--quiet", quiet, "suppress diagnostics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ERES_CONFIG;
  }

  eres_run_options opt{};
  opt.out_dir = out_dir.c_str();
  opt.quiet = quiet ? 1 : 0;
  if (!field.empty()) {
    if (field == "HR") {
      opt.H_at_resonance = 1;
    } else {
      try {
        std::size_t used = 0;
        opt.H_tesla = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        std::cerr << "eres: --H expects a number in Tesla or HR, got '" << field << "'\n";
        return ERES_CONFIG;
      }
      opt.has_H = 1;
    }
  }
  if (N) {
    opt.has_N = 1;
    opt.N = *N;
  }
  if (!grid.empty()) opt.grid = grid.c_str();

  return eres_run(command.c_str(), config.c_str(), &opt);
}
