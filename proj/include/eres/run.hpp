#pragma once

// Command dispatch: one call computes, writes fig*.csv tables and a
// summary.<command>.txt record, and maps failures onto exit codes.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eres/config_io.hpp"

namespace eres {

struct FieldGrid {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

// "lo:hi:steps". Throws ConfigError on malformed text; steps == 0 is
// accepted here and rejected by the commands that need points.
FieldGrid parse_grid(const std::string& text);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<double> H;            // field override, Tesla
  bool H_at_resonance = false;        // psi: evaluate exactly at H_R
  std::optional<int> N;
  std::optional<FieldGrid> grid;
  bool write_files = true;
};

struct RunOutput {
  int exit_code = 0;
  std::string message;  // diagnostic text for failures
  std::string summary;  // JSON document
  std::vector<PlotTable> tables;
  std::filesystem::path summary_path;
};

const std::vector<std::string>& command_names();

// Never throws for computational failures; those come back as exit codes
// 2 (config), 3 (no well), 4 (no bracket), 5 (numerical), 6 (field above
// H_R for psi) or 1 (validate-example found a failing check).
RunOutput run_command(const std::string& command, const ModelConfig& cfg,
                      const RunOptions& opt = {});

const char* version_string();

}  // namespace eres
