#include "eres/effective_well.hpp"

#include <cmath>
#include <sstream>

#include "eres/errors.hpp"
#include "eres/roots.hpp"

namespace eres {

namespace {

constexpr double kScanStart = 1e-6;  // in units of a
constexpr int kPositivitySamples = 1000;

}  // namespace

double eta0_of(const SystemConfig& cfg) {
  const double wc = cfg.omega_c();
  if (!(wc > 0.0)) throw ConfigError("effective well needs H > 0 (eta0 diverges at H = 0)");
  return cfg.terminal_speed() / wc;
}

EffectiveWell::EffectiveWell(const BarrierPotential& p, const SystemConfig& c)
    : potential(p), config(c) {
  config.validate();
  eta0_value = eta0_of(config);
  omega = config.omega_c();
  inertia = config.mass();
}

// E - v = -u(i eta) + (m wc^2/2)[(eta + eta0)^2 - eta0^2]
//       = -u(i eta) + |E| (2 eta/eta0 + eta^2/eta0^2)
// using (m wc^2/2) eta0^2 = |E|; no cancellation against eta0^2.
double EffectiveWell::gap(double eta) const {
  const double r = eta / eta0_value;
  return -potential.u_imag(eta) + config.energy_depth * r * (2.0 + r);
}

double EffectiveWell::gap_slope(double eta) const {
  const double r = eta / eta0_value;
  return -potential.du_imag(eta) + 2.0 * config.energy_depth / eta0_value * (1.0 + r);
}

double EffectiveWell::gap_over_eta(double eta) const {
  return eta * potential.neg_u_imag_over_eta2(eta) +
         config.energy_depth / eta0_value * (2.0 + eta / eta0_value);
}

double v_of_eta(const BarrierPotential& p, const SystemConfig& cfg, double eta) {
  const double e0 = eta0_of(cfg);
  const double r = eta / e0;
  return cfg.energy() + p.u_imag(eta) - cfg.energy_depth * r * (2.0 + r);
}

EffectiveWell analyze_well(const BarrierPotential& p, const SystemConfig& cfg) {
  EffectiveWell w(p, cfg);
  const double a = p.a();
  const double eta_max = kCoshArgumentLimit * a;
  auto gap = [&w](double eta) { return w.gap(eta); };

  double lo = kScanStart * a;
  if (!(gap(lo) > 0.0)) {
    w.diagnosis = "E - v(eta) is not positive next to eta = 0";
    return w;
  }
  double hi = lo;
  bool crossed = false;
  while (hi < eta_max) {
    lo = hi;
    hi = std::min(2.0 * hi, eta_max);
    if (gap(hi) <= 0.0) {
      crossed = true;
      break;
    }
  }
  if (!crossed) {
    std::ostringstream os;
    os << "E - v(eta) stays positive up to eta = " << eta_max
       << " A: v(eta) does not return to E, no transverse well";
    w.diagnosis = os.str();
    return w;
  }

  w.delta_eta = bisect(gap, lo, hi, cfg.tolerances.root_abs_tol);

  for (int i = 1; i < kPositivitySamples + 1; ++i) {
    const double eta = w.delta_eta * i / (kPositivitySamples + 1);
    if (!(gap(eta) > 0.0)) {
      std::ostringstream os;
      os << "E - v(eta) vanishes inside (0, " << w.delta_eta << ") at eta ~ " << eta
         << " A: disconnected well regions";
      w.diagnosis = os.str();
      w.delta_eta = 0.0;
      return w;
    }
  }
  w.valid = true;
  return w;
}

EffectiveWell find_turning_point(const BarrierPotential& p, const SystemConfig& cfg) {
  EffectiveWell w = analyze_well(p, cfg);
  if (!w.valid) {
    throw NoWellError("no transverse well for " + std::string(to_string(p.family())) +
                      " at H = " + std::to_string(cfg.field) + " T: " + w.diagnosis);
  }
  return w;
}

std::vector<std::pair<double, double>> sample_effective_potential(const BarrierPotential& p,
                                                                  const SystemConfig& cfg,
                                                                  double eta_max, int n) {
  std::vector<std::pair<double, double>> out;
  if (n < 2) return out;
  eta_max = std::min(eta_max, kCoshArgumentLimit * p.a());
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double eta = eta_max * i / (n - 1);
    out.emplace_back(eta, v_of_eta(p, cfg, eta));
  }
  return out;
}

}  // namespace eres
