#pragma once

// Imaginary-time trajectory: eta(tau) oscillates in the effective well while
// x(tau) advances by the first integral dx/dtau = -wc (eta + eta0).

#include <vector>

#include "eres/effective_well.hpp"
#include "eres/potential.hpp"

namespace eres {

struct TrajectoryState {
  double tau = 0.0;
  double eta = 0.0;
  double eta_dot = 0.0;
  double x = 0.0;
};

struct TrajectoryOptions {
  double rel_tol = 1e-12;
  // Stored samples per cycle; rounded up to a multiple of 8 so both halves
  // of an arch align with 4-interval quadrature panels.
  int samples_per_cycle = 4096;
  // Integrate all N cycles as one ODE solve instead of repeating one cycle.
  bool continuous = false;
};

struct TrajectoryRecord {
  std::vector<TrajectoryState> states;  // uniform in tau over [0, N * delta_tau]
  int N_cycles = 0;
  double measured_delta_tau = 0.0;
  double measured_delta_x = 0.0;  // |x(delta_tau) - x(0)|
  double eta_at_turning = 0.0;    // eta at the half-period event
  // max |(m/2) eta_dot^2 + v(eta) - E| / |E| over the stored states.
  double max_energy_drift = 0.0;
  // Worst |eta| and |eta_dot| over the cycle joints tau = k delta_tau.
  double max_joint_eta = 0.0;
  double max_joint_eta_dot = 0.0;
  double x_dot_start = 0.0;
  double x_dot_end = 0.0;
};

// One period from eta = eta_dot = 0; the half-period event eta_dot = 0 is
// located on the ODE solution and the second half is completed by
// time-reversal symmetry. Throws EventMissError when no event occurs before
// the time cap and EnergyDriftError when the drift exceeds 100 rel_tol.
TrajectoryRecord integrate_cycle(const TransverseWell& w, const TrajectoryOptions& opt = {});

// N cycles, either by periodic repetition of integrate_cycle or, with
// opt.continuous, as one uninterrupted solve.
TrajectoryRecord integrate_full(const TransverseWell& w, int N, const TrajectoryOptions& opt = {});

// (2/hbar) Int L dtau along the record, L being the Euclidean Lagrangian with
// the first integral substituted:
//   (m/2) xdot^2 - (m/2) eta_dot^2 + m wc eta xdot + u(i eta) - E
// = (m wc^2 / 2)(eta0^2 - eta^2) - (m/2) eta_dot^2 - (E - u(i eta)),
// evaluated on the stored states by composite Boole quadrature.
double action_direct(const TransverseWell& w, const TrajectoryRecord& r);

// The same Lagrangian written as in the reduced form
//   -(m/2) eta_dot^2 + v - E - m wc eta0 xdot.
double action_direct_reduced(const TransverseWell& w, const TrajectoryRecord& r);

// Cumulative action at every fourth stored state (panel ends), paired with
// the distance travelled |x(tau) - x(0)|.
struct ActionSample {
  double tau = 0.0;
  double distance = 0.0;
  double action = 0.0;
};
std::vector<ActionSample> accumulated_action(const TransverseWell& w, const TrajectoryRecord& r);

// Envelope of |psi(x, 0)|^2 relative to the entry point, to exponential
// accuracy: log ratio = -A(x).
struct EnvelopePoint {
  double x = 0.0;
  double log_ratio = 0.0;
  double wkb_log_ratio = 0.0;  // -2 sqrt(2m|E|) x / hbar, the field-free line
  bool node = false;           // x is a whole number of cycles
};

// Requires cfg.field <= H_R (one-instanton validity), else throws
// BeyondOneInstantonError.
std::vector<EnvelopePoint> psi_envelope(const BarrierPotential& p, const SystemConfig& cfg,
                                        double H_R, int N_max,
                                        const TrajectoryOptions& opt = {});

}  // namespace eres
