#include "eres/potential.hpp"

#include <cmath>
#include <sstream>

#include "eres/errors.hpp"

namespace eres {

double inertial_mass(const PhysicalConstants& c, double mass_me) {
  return mass_me * c.electron_rest_energy / (c.hbar_c * c.hbar_c);
}

double cyclotron_frequency(const PhysicalConstants& c, double mass_me, double field_tesla) {
  return c.cyclotron_energy_per_tesla * field_tesla / mass_me;
}

std::string_view to_string(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::DoubleHarmonic: return "double_harmonic";
    case PotentialFamily::PureHarmonic: return "pure_harmonic";
    case PotentialFamily::Quadratic: return "quadratic";
    case PotentialFamily::QuadraticQuartic: return "quadratic_quartic";
  }
  return "unknown";
}

PotentialFamily parse_family(std::string_view name) {
  for (auto f : {PotentialFamily::DoubleHarmonic, PotentialFamily::PureHarmonic,
                 PotentialFamily::Quadratic, PotentialFamily::QuadraticQuartic}) {
    if (name == to_string(f)) return f;
  }
  throw ConfigError("unknown potential.family '" + std::string(name) +
                    "' (expected double_harmonic, pure_harmonic, quadratic or "
                    "quadratic_quartic)");
}

BarrierPotential::BarrierPotential(PotentialFamily family, double u0, double a, double lambda)
    : family_(family), u0_(u0), a_(a), lambda_(lambda) {
  if (!(u0 > 0.0) || !std::isfinite(u0)) throw ConfigError("potential.u0_eV must be > 0");
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("potential.a_angstrom must be > 0");
  if (family == PotentialFamily::DoubleHarmonic && !(lambda > 0.0 && lambda < 1.0))
    throw ConfigError("potential.lambda must lie in (0, 1) for double_harmonic");
  if (family != PotentialFamily::DoubleHarmonic) lambda_ = 0.0;
}

double BarrierPotential::u(double y) const noexcept {
  const double t = y / a_;
  switch (family_) {
    case PotentialFamily::DoubleHarmonic: {
      const double c = std::cos(t);
      return u0_ * (1.0 - c) * (1.0 - lambda_ * c);
    }
    case PotentialFamily::PureHarmonic: return u0_ * (1.0 - std::cos(t));
    case PotentialFamily::Quadratic: return u0_ * t * t;
    case PotentialFamily::QuadraticQuartic: return u0_ * (t * t + t * t * t * t);
  }
  return 0.0;
}

void BarrierPotential::check_range(double eta) const {
  if (std::abs(eta) / a_ > kCoshArgumentLimit) {
    std::ostringstream os;
    os << "u(i eta) out of range: |eta|/a = " << std::abs(eta) / a_ << " exceeds "
       << kCoshArgumentLimit;
    throw RangeError(os.str());
  }
}

// 1 - cosh(t) is written as -2 sinh^2(t/2) so that small arguments keep full
// relative precision.
double BarrierPotential::u_imag(double eta) const {
  check_range(eta);
  const double t = eta / a_;
  switch (family_) {
    case PotentialFamily::DoubleHarmonic: {
      const double sh = std::sinh(0.5 * t);
      return -2.0 * u0_ * sh * sh * (1.0 - lambda_ * std::cosh(t));
    }
    case PotentialFamily::PureHarmonic: {
      const double sh = std::sinh(0.5 * t);
      return -2.0 * u0_ * sh * sh;
    }
    case PotentialFamily::Quadratic: return -u0_ * t * t;
    case PotentialFamily::QuadraticQuartic: return u0_ * (-t * t + t * t * t * t);
  }
  return 0.0;
}

double BarrierPotential::du_imag(double eta) const {
  check_range(eta);
  const double t = eta / a_;
  switch (family_) {
    case PotentialFamily::DoubleHarmonic: {
      // d/dt [(1 - C)(1 - lC)] = -S (1 - lC) - l S (1 - C) = -S (1 + l - 2 l C)
      const double s = std::sinh(t);
      return -u0_ / a_ * s * (1.0 + lambda_ - 2.0 * lambda_ * std::cosh(t));
    }
    case PotentialFamily::PureHarmonic: return -u0_ / a_ * std::sinh(t);
    case PotentialFamily::Quadratic: return -2.0 * u0_ / a_ * t;
    case PotentialFamily::QuadraticQuartic: return u0_ / a_ * (-2.0 * t + 4.0 * t * t * t);
  }
  return 0.0;
}

double BarrierPotential::neg_u_imag_over_eta2(double eta) const {
  check_range(eta);
  const double t = eta / a_;
  const double a2 = a_ * a_;
  // sinh(t/2)/(t/2), finite and accurate at t -> 0.
  const auto sinhc = [](double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; };
  switch (family_) {
    case PotentialFamily::DoubleHarmonic: {
      const double s = sinhc(0.5 * t);
      return 0.5 * u0_ / a2 * s * s * (1.0 - lambda_ * std::cosh(t));
    }
    case PotentialFamily::PureHarmonic: {
      const double s = sinhc(0.5 * t);
      return 0.5 * u0_ / a2 * s * s;
    }
    case PotentialFamily::Quadratic: return u0_ / a2;
    case PotentialFamily::QuadraticQuartic: return u0_ / a2 * (1.0 - t * t);
  }
  return 0.0;
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(mass_me > 0.0) || !std::isfinite(mass_me)) fail("system.mass_me must be > 0");
  if (!(energy_depth > 0.0) || !std::isfinite(energy_depth))
    fail("system.E_eV must be nonzero (the bound-state energy E = -|E| is negative)");
  if (!(barrier_length > 0.0) || !std::isfinite(barrier_length))
    fail("system.R_angstrom must be > 0");
  if (!(field >= 0.0) || !std::isfinite(field)) fail("system.H_tesla must be >= 0");
  auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(tolerances.quadrature_rel_tol))
    fail("tolerances.quadrature_rel_tol must lie in (0, 1)");
  if (!in_unit(tolerances.root_abs_tol)) fail("tolerances.root_abs_tol must lie in (0, 1)");
  if (!in_unit(tolerances.ode_rel_tol)) fail("tolerances.ode_rel_tol must lie in (0, 1)");
}

double SystemConfig::wkb_rate() const { return 2.0 * std::sqrt(2.0 * mass() * energy_depth); }

double SystemConfig::terminal_speed() const { return std::sqrt(2.0 * energy_depth / mass()); }

}  // namespace eres
