#pragma once

// Configuration files, plot tables and run summaries.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eres/potential.hpp"

namespace eres {

struct DissipationSettings {
  double deltaE_over_E = 0.1;
  double delta_u = 0.0;  // eV
  bool operator==(const DissipationSettings&) const = default;
};

struct ModelConfig {
  BarrierPotential potential{PotentialFamily::DoubleHarmonic, 1.0, 50.0, 0.215};
  SystemConfig system{};
  DissipationSettings dissipation{};
  int N = 3;
  // Assumptions applied while loading (defaults filled in).
  std::vector<std::string> notes;

  bool operator==(const ModelConfig& o) const {
    return potential == o.potential && system == o.system && dissipation == o.dissipation &&
           N == o.N;
  }
};

// Key-value configuration, INI layout:
//
//   [potential]           family, u0_eV, a_angstrom, lambda
//   [system]              mass_me, E_eV, R_angstrom, H_tesla
//   [tolerances]          quadrature_rel_tol, root_abs_tol, ode_rel_tol
//   [dissipation]         deltaE_over_E, delta_u_eV
//   [run]                 N
//
// E_eV may be given as the (negative) energy or its magnitude. Throws
// ConfigError with the line or key at fault.
ModelConfig parse_config(const std::string& text);
ModelConfig load_config(const std::filesystem::path& path);

// Inverse of parse_config; 17 significant digits so values reload exactly.
std::string format_config(const ModelConfig& cfg);

// The worked double-harmonic example: u0 = 1 eV, a = 50 A, lambda = 0.215,
// |E| = 0.01 eV, one electron mass.
ModelConfig example_config();

struct PlotTable {
  std::string name;                  // file stem, e.g. "fig3a"
  std::vector<std::string> columns;  // headers with units, e.g. "tau [hbar/eV]"
  std::vector<std::vector<double>> rows;

  // Throws std::invalid_argument when the row width differs from columns.
  void add_row(std::vector<double> row);
  std::string to_csv() const;
};

// %.17g, the fixed number format of every emitted table.
std::string format_number(double v);

void write_table(const PlotTable& t, const std::filesystem::path& dir);

// summary.<run>.txt in dir, never overwriting an earlier record: a numeric
// suffix is appended when the name is taken. Returns the path written.
std::filesystem::path write_summary(const std::string& run, const std::string& text,
                                    const std::filesystem::path& dir);

}  // namespace eres
