#pragma once

// Euclidean action over commensurate barrier lengths, the resonance field
// where it vanishes, and the fields at which R is a whole number of cycles.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eres/cycle_integrals.hpp"
#include "eres/errors.hpp"
#include "eres/potential.hpp"

namespace eres {

struct ActionResult {
  double A = 0.0;
  double A_wkb = 0.0;
  int N = 0;
  double R_used = 0.0;  // N * Delta x
  // (2 sqrt(2m|E|)/hbar - Delta A/Delta x) * R_used; equals A up to rounding.
  double A_per_length_form = 0.0;
};

// A = A_wkb - N Delta A over R = N Delta x. N == 0 is the empty barrier.
ActionResult action_at(const SystemConfig& cfg, const CycleResult& cycle, int N);

// 2 sqrt(2 m |E|) R / hbar.
double wkb_action(const SystemConfig& cfg, double R);

// f(H) = 2 sqrt(2m|E|)/hbar - Delta A(H)/Delta x(H), the action per unit
// length; A = f R at commensurate R. Throws NoWellError when no well forms.
double action_rate(const BarrierPotential& p, const SystemConfig& cfg);

struct ActionCurvePoint {
  double H = 0.0;
  double A = 0.0;  // f(H) * cfg.barrier_length
  double delta_x = 0.0;
  double delta_A = 0.0;
};

struct CommensurateField {
  int N = 0;
  std::optional<double> h;
  std::string diagnosis;  // set when h is missing
};

struct ResonanceResult {
  double H_R = 0.0;
  double residual = 0.0;     // f(H_R), 1/A
  double peak_width = 0.0;   // H_R / A_wkb(R)
  CycleResult cycle_at_resonance;
  double delta_eta_at_resonance = 0.0;
  std::vector<CommensurateField> h_list;
  // One-instanton branch only (H < H_R).
  std::vector<ActionCurvePoint> action_curve;
  // The scan itself: (H, f) with nullopt where no well forms.
  std::vector<std::pair<double, std::optional<double>>> scan;
};

// NoBracket carrying the scanned f-curve.
struct ResonanceNoBracketError : NoBracketError {
  std::vector<std::pair<double, std::optional<double>>> scan;
  ResonanceNoBracketError(const std::string& w,
                          std::vector<std::pair<double, std::optional<double>>> s)
      : NoBracketError(w), scan(std::move(s)) {}
};

struct ResonanceOptions {
  int scan_points = 64;
  // Points on the H < H_R action curve.
  int curve_points = 64;
  // N values whose commensurate fields are reported alongside H_R.
  std::vector<int> harmonics = {1, 2, 3, 4, 5};
};

// Root of f(H) on [H_lo, H_hi]: log-spaced bracket scan, then bisection in
// log H to a relative width of cfg.tolerances.root_abs_tol. Fields without a
// well are skipped. Throws ResonanceNoBracketError if f keeps its sign.
ResonanceResult find_resonance_field(const BarrierPotential& p, const SystemConfig& cfg,
                                     double H_lo, double H_hi, const ResonanceOptions& opt = {});

// For each N, solves R = N Delta x(H) for the lowest such H in [H_lo, H_hi].
std::vector<CommensurateField> find_commensurate_fields(const BarrierPotential& p,
                                                        const SystemConfig& cfg,
                                                        const std::vector<int>& Ns, double H_lo,
                                                        double H_hi, int scan_points = 64);

// H_R / A_wkb(R) with R = cfg.barrier_length.
double peak_width_estimate(double H_R, const SystemConfig& cfg);

struct HarmonicStepDiagnostic {
  int N = 0;
  double h_prev = 0.0;  // h_{N-1}
  double h = 0.0;       // h_N
  double A_prev = 0.0;
  double A = 0.0;
  double delta_A = 0.0;  // Delta A(h_N)
  // [A(h_{N-1}) - A(h_N)] - Delta A(h_N): log-violation of
  // w(h_{N-1}) = w(h_N) exp(-Delta A).
  double discrepancy = 0.0;
};

// Needs N >= 2; throws NoBracketError when h_{N-1} or h_N is missing.
HarmonicStepDiagnostic harmonic_step_diagnostic(const BarrierPotential& p,
                                                const SystemConfig& cfg, int N, double H_lo,
                                                double H_hi);

// Same from already-known cycle data at the two fields.
HarmonicStepDiagnostic harmonic_step_from_cycles(const SystemConfig& cfg, int N,
                                                 double h_prev, const CycleResult& prev,
                                                 double h, const CycleResult& cur);

}  // namespace eres
