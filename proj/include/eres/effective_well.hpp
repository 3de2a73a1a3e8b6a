#pragma once

// Effective transverse potential v(eta) = u(i eta) - (m wc^2 / 2)(eta + eta0)^2
// and the well it forms below the particle energy E.

#include <string>
#include <utility>
#include <vector>

#include "eres/potential.hpp"

namespace eres {

// Everything the cycle integrals and the trajectory need to know about a
// transverse well: the gap E - v(eta) on [0, turning_point()] plus the
// coupling constants. gap(0) == 0 and gap(turning_point()) == 0.
class TransverseWell {
 public:
  virtual ~TransverseWell() = default;

  virtual double gap(double eta) const = 0;
  virtual double gap_slope(double eta) const = 0;
  // gap(eta) / eta, finite at eta = 0.
  virtual double gap_over_eta(double eta) const = 0;

  virtual double turning_point() const = 0;
  virtual double eta0() const = 0;
  virtual double omega_c() const = 0;
  // Inertial mass, internal units.
  virtual double mass() const = 0;
  virtual double energy_depth() const = 0;

  // omega_c * eta0 == sqrt(2 |E| / m), kept separate so it stays exact when
  // omega_c is tiny and eta0 huge.
  virtual double terminal_speed() const = 0;
};

struct EffectiveWell final : TransverseWell {
  BarrierPotential potential;
  SystemConfig config;
  double eta0_value = 0.0;
  double omega = 0.0;
  double inertia = 0.0;
  double delta_eta = 0.0;
  bool valid = false;
  std::string diagnosis;  // why the well is invalid, empty when valid

  EffectiveWell(const BarrierPotential& p, const SystemConfig& c);

  double energy() const { return config.energy(); }
  // v(eta) itself, for plotting; E - gap(eta).
  double v(double eta) const { return energy() - gap(eta); }

  double gap(double eta) const override;
  double gap_slope(double eta) const override;
  double gap_over_eta(double eta) const override;
  double turning_point() const override { return delta_eta; }
  double eta0() const override { return eta0_value; }
  double omega_c() const override { return omega; }
  double mass() const override { return inertia; }
  double energy_depth() const override { return config.energy_depth; }
  double terminal_speed() const override { return config.terminal_speed(); }
};

// Exactly solvable well with E - v = c * eta * (width - eta). Coupling
// constants are free so cycle quantities can be checked in closed form.
struct ToyWell final : TransverseWell {
  double curvature;     // c, eV / A^2
  double width;         // Delta eta, A
  double inertia;       // internal mass units
  double omega;         // 1/t
  double eta0_value;    // A

  ToyWell(double c, double w, double m, double wc, double e0)
      : curvature(c), width(w), inertia(m), omega(wc), eta0_value(e0) {}

  double gap(double eta) const override { return curvature * eta * (width - eta); }
  double gap_slope(double eta) const override { return curvature * (width - 2.0 * eta); }
  double gap_over_eta(double eta) const override { return curvature * (width - eta); }
  double turning_point() const override { return width; }
  double eta0() const override { return eta0_value; }
  double omega_c() const override { return omega; }
  double mass() const override { return inertia; }
  double energy_depth() const override {
    const double s = terminal_speed();
    return 0.5 * inertia * s * s;
  }
  double terminal_speed() const override { return omega * eta0_value; }
};

// sqrt(2|E| / (m wc^2)); throws ConfigError for H == 0.
double eta0_of(const SystemConfig& cfg);

// v(eta) = u(i eta) - (m wc^2/2)(eta + eta0)^2. Rejects H == 0.
double v_of_eta(const BarrierPotential& p, const SystemConfig& cfg, double eta);

// Builds the well and locates the turning point; never throws for an
// inadmissible shape, sets valid = false with a diagnosis instead.
EffectiveWell analyze_well(const BarrierPotential& p, const SystemConfig& cfg);

// As analyze_well but throws NoWellError when no well forms.
EffectiveWell find_turning_point(const BarrierPotential& p, const SystemConfig& cfg);

// (eta, v(eta)) on [0, eta_max], n points; stops early at the overflow guard.
std::vector<std::pair<double, double>> sample_effective_potential(const BarrierPotential& p,
                                                                  const SystemConfig& cfg,
                                                                  double eta_max, int n);

}  // namespace eres
