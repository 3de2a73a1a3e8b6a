#pragma once

// Per-cycle quantities of the transverse oscillation: period, advance along
// the tunneling direction, and action reduction.

#include "eres/effective_well.hpp"
#include "eres/potential.hpp"

namespace eres {

struct CycleResult {
  double delta_tau = 0.0;  // hbar/eV
  double delta_x = 0.0;    // Angstrom
  double delta_A = 0.0;    // dimensionless
  // Relative error estimates of the three quadratures.
  double err_tau = 0.0;
  double err_x = 0.0;
  double err_A = 0.0;

  // Delta x / (sqrt(2|E|/m) Delta tau): how far the "speed times period"
  // estimate of the advance is from the exact one (>= 1).
  double speed_ratio = 0.0;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  // Where [0, Delta eta] is split between the two square-root substitutions,
  // as a fraction of Delta eta.
  double split = 0.5;
};

// Delta tau = sqrt(2m) Int_0^{Delta eta} d eta / sqrt(E - v).
double compute_delta_tau(const TransverseWell& w, const QuadratureOptions& opt = {},
                         double* rel_err = nullptr);

// Delta x = wc sqrt(2m) Int_0^{Delta eta} (eta0 + eta) d eta / sqrt(E - v).
double compute_delta_x(const TransverseWell& w, const QuadratureOptions& opt = {},
                       double* rel_err = nullptr);

// Delta A = (4 sqrt(2m) / hbar) Int_0^{Delta eta} sqrt(E - v) d eta.
double compute_delta_A(const TransverseWell& w, const QuadratureOptions& opt = {},
                       double* rel_err = nullptr);

CycleResult compute_cycle(const TransverseWell& w, const QuadratureOptions& opt = {});

// Builds the effective well at cfg.field (throws NoWellError) and integrates.
CycleResult compute_cycle(const BarrierPotential& p, const SystemConfig& cfg);

}  // namespace eres
