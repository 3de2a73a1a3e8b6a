#include "eres/dissipation.hpp"

#include <cmath>
#include <limits>

#include "eres/errors.hpp"

namespace eres {

namespace {
constexpr double kFrictionFactor = 0.2;
constexpr double kLinewidthFactor = 7.1;
constexpr double kInhomogeneityFactor = 4.0;
}  // namespace

CriterionResult friction_criterion(double gamma, double tau0) {
  if (!(gamma >= 0.0)) throw ConfigError("friction rate gamma must be >= 0");
  if (!(tau0 > 0.0)) throw ConfigError("tau0 must be > 0");
  const double margin = kFrictionFactor * gamma * tau0;
  return {margin < 1.0, margin, 1.0};
}

double de_broglie_length(const SystemConfig& cfg) {
  return 1.0 / std::sqrt(cfg.mass() * cfg.energy_depth);
}

LinewidthResult linewidth_criterion(double deltaE_over_E, double lambda_dB, double R) {
  if (!(deltaE_over_E >= 0.0)) throw ConfigError("dE/E must be >= 0");
  if (!(lambda_dB > 0.0) || !(R > 0.0)) throw ConfigError("lambda_dB and R must be > 0");
  LinewidthResult r;
  r.lhs = deltaE_over_E;
  r.rhs = kLinewidthFactor * lambda_dB / R;
  r.pass = r.lhs < r.rhs;
  r.R_max = deltaE_over_E > 0.0 ? kLinewidthFactor * lambda_dB / deltaE_over_E
                                : std::numeric_limits<double>::infinity();
  return r;
}

CriterionResult inhomogeneity_criterion(double delta_u, double energy_depth) {
  if (!(delta_u >= 0.0)) throw ConfigError("delta_u must be >= 0");
  const double limit = kInhomogeneityFactor * energy_depth;
  return {delta_u < limit, delta_u, limit};
}

DissipationReport dissipation_report(const SystemConfig& cfg, double delta_tau, double delta_x,
                                     int N, double deltaE_over_E, double delta_u) {
  if (N < 1) throw ConfigError("dissipation report needs N >= 1");
  DissipationReport d;
  // hbar == 1 in internal units.
  d.gamma = deltaE_over_E * cfg.energy_depth;
  d.tau0 = N * delta_tau;
  d.lambda_dB = de_broglie_length(cfg);
  d.friction = friction_criterion(d.gamma, d.tau0);
  d.linewidth = linewidth_criterion(deltaE_over_E, d.lambda_dB, N * delta_x);
  d.inhomogeneity = inhomogeneity_criterion(delta_u, cfg.energy_depth);
  const double friction_threshold = 1.0 / (kFrictionFactor * cfg.energy_depth * d.tau0);
  d.form_ratio = d.linewidth.rhs / friction_threshold;
  return d;
}

}  // namespace eres
