#pragma once

// Barrier potential families, their continuation to imaginary transverse
// coordinate, and the unit system shared by the whole library.
//
// Units: energy in eV, length in Angstrom, field in Tesla, mass in electron
// masses, imaginary time in hbar/eV. In these units hbar == 1 and the
// inertial mass of a particle is mass_me * m_e c^2 / (hbar c)^2 [eV t^2 / A^2].

#include <string>
#include <string_view>

namespace eres {

struct PhysicalConstants {
  double hbar_c = 1973.269804;                 // eV * Angstrom
  double electron_rest_energy = 510998.95;     // eV
  double cyclotron_energy_per_tesla = 1.15767e-4;  // eV / T, one electron mass
};

inline constexpr PhysicalConstants kCodata{};

// Inertial mass in internal units for a particle of `mass_me` electron masses.
double inertial_mass(const PhysicalConstants& c, double mass_me);

// hbar * omega_c in eV (numerically equal to omega_c in 1/t).
double cyclotron_frequency(const PhysicalConstants& c, double mass_me, double field_tesla);

enum class PotentialFamily { DoubleHarmonic, PureHarmonic, Quadratic, QuadraticQuartic };

std::string_view to_string(PotentialFamily f);
PotentialFamily parse_family(std::string_view name);

// Guard on |eta| / a for the cosh continuation.
inline constexpr double kCoshArgumentLimit = 700.0;

class BarrierPotential {
 public:
  // Throws ConfigError when u0 <= 0, a <= 0, or (DoubleHarmonic) lambda
  // outside (0, 1).
  BarrierPotential(PotentialFamily family, double u0, double a, double lambda = 0.0);

  static BarrierPotential double_harmonic(double u0, double a, double lambda) {
    return {PotentialFamily::DoubleHarmonic, u0, a, lambda};
  }

  PotentialFamily family() const noexcept { return family_; }
  double u0() const noexcept { return u0_; }
  double a() const noexcept { return a_; }
  double lambda() const noexcept { return lambda_; }

  // u(y) on the real transverse axis.
  double u(double y) const noexcept;

  // u(i eta); throws RangeError once |eta|/a exceeds kCoshArgumentLimit.
  double u_imag(double eta) const;

  // d u(i eta) / d eta.
  double du_imag(double eta) const;

  // -u(i eta) / eta^2, finite at eta = 0. Used to evaluate E - v without
  // cancellation near the well bottom.
  double neg_u_imag_over_eta2(double eta) const;

  bool operator==(const BarrierPotential&) const = default;

 private:
  void check_range(double eta) const;

  PotentialFamily family_;
  double u0_;
  double a_;
  double lambda_;
};

struct Tolerances {
  double quadrature_rel_tol = 1e-9;
  double root_abs_tol = 1e-12;
  double ode_rel_tol = 1e-12;

  bool operator==(const Tolerances&) const = default;
};

struct SystemConfig {
  double mass_me = 1.0;
  double energy_depth = 0.01;  // |E| in eV; the particle energy is E = -|E|
  double barrier_length = 1000.0;  // R in Angstrom
  double field = 10.0;  // H in Tesla
  Tolerances tolerances{};
  PhysicalConstants constants{};

  // Throws ConfigError naming the violated invariant.
  void validate() const;

  double energy() const noexcept { return -energy_depth; }
  double mass() const { return inertial_mass(constants, mass_me); }
  double omega_c() const { return cyclotron_frequency(constants, mass_me, field); }
  // 2 sqrt(2 m |E|) / hbar in 1/Angstrom: WKB action per unit barrier length.
  double wkb_rate() const;
  // sqrt(2 |E| / m): the terminal tunneling-direction speed.
  double terminal_speed() const;

  SystemConfig with_field(double h) const {
    SystemConfig c = *this;
    c.field = h;
    return c;
  }

  bool operator==(const SystemConfig& o) const {
    return mass_me == o.mass_me && energy_depth == o.energy_depth &&
           barrier_length == o.barrier_length && field == o.field &&
           tolerances == o.tolerances;
  }
};

}  // namespace eres
