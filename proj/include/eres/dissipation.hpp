#pragma once

// Validity criteria for neglecting friction and barrier inhomogeneity.

#include "eres/potential.hpp"

namespace eres {

struct CriterionResult {
  bool pass = false;
  double margin = 0.0;  // the compared quantity (0.2 gamma tau0, dE/E, ...)
  double limit = 0.0;   // what it is compared against
};

// pass = 0.2 gamma tau0 < 1 (strict). gamma in 1/t (eV/hbar), tau0 in hbar/eV.
CriterionResult friction_criterion(double gamma, double tau0);

// de Broglie length hbar / sqrt(m |E|) in Angstrom.
double de_broglie_length(const SystemConfig& cfg);

struct LinewidthResult {
  bool pass = false;
  double lhs = 0.0;    // dE/E
  double rhs = 0.0;    // 7.1 lambda_dB / R
  double R_max = 0.0;  // 7.1 lambda_dB E / dE
};

// pass = dE/E < 7.1 lambda_dB / R.
LinewidthResult linewidth_criterion(double deltaE_over_E, double lambda_dB, double R);

// pass = delta_u < 4 |E|.
CriterionResult inhomogeneity_criterion(double delta_u, double energy_depth);

// Both friction forms at R = N Delta x, tau0 = N Delta tau, gamma = dE / hbar.
struct DissipationReport {
  double gamma = 0.0;
  double tau0 = 0.0;
  double lambda_dB = 0.0;
  CriterionResult friction;
  LinewidthResult linewidth;
  CriterionResult inhomogeneity;
  // (7.1 lambda_dB / R) / (5 hbar / (|E| tau0)): ratio of the two
  // thresholds on dE/E, 1 when Delta x = sqrt(2|E|/m) Delta tau exactly.
  double form_ratio = 0.0;
};

DissipationReport dissipation_report(const SystemConfig& cfg, double delta_tau, double delta_x,
                                     int N, double deltaE_over_E, double delta_u);

}  // namespace eres
