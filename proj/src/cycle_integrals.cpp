#include "eres/cycle_integrals.hpp"

#include <cmath>
#include <sstream>

#include "eres/errors.hpp"
#include "eres/quadrature.hpp"

namespace eres {

namespace {

// Below this distance from the turning point (relative to Delta eta) the
// divided difference (E - v)/(Delta eta - eta) is replaced by a midpoint slope.
constexpr double kDividedDifferenceFloor = 1e-6;

enum class Power { InverseSqrt, Sqrt };

// Int_0^{Delta eta} weight(eta) (E - v)^{+-1/2} d eta with eta = s^2 on the
// left piece and eta = Delta eta - s^2 on the right piece. Both endpoint
// zeros of E - v are simple, so the substituted integrands stay bounded.
template <class Weight>
detail::QuadratureValue regularized_integral(const TransverseWell& w, Weight&& weight, Power power,
                                             const QuadratureOptions& opt) {
  const double de = w.turning_point();
  if (!(de > 0.0)) return {};

  const double left_slope = w.gap_over_eta(0.0);
  const double right_slope = -w.gap_slope(de);
  if (!(left_slope > 0.0) || !(right_slope > 0.0) || !std::isfinite(left_slope) ||
      !std::isfinite(right_slope)) {
    std::ostringstream os;
    os << "endpoint zero of E - v is not simple (slopes " << left_slope << " at 0, "
       << -right_slope << " at Delta eta = " << de << "); degenerate well";
    throw SingularityOrderError(os.str());
  }

  const double split = opt.split * de;
  const double gap_at_turning = w.gap(de);

  // (E - v) / eta on the left piece.
  auto left = [&](double s) {
    const double eta = s * s;
    const double h = w.gap_over_eta(eta);
    return power == Power::InverseSqrt ? 2.0 * weight(eta) / std::sqrt(h)
                                       : 2.0 * s * s * weight(eta) * std::sqrt(h);
  };
  // (E - v) / (Delta eta - eta) on the right piece.
  auto right = [&](double s) {
    const double d = s * s;
    const double eta = de - d;
    const double q = d > kDividedDifferenceFloor * de ? (w.gap(eta) - gap_at_turning) / d
                                                      : -w.gap_slope(de - 0.5 * d);
    return power == Power::InverseSqrt ? 2.0 * weight(eta) / std::sqrt(q)
                                       : 2.0 * s * s * weight(eta) * std::sqrt(q);
  };

  const auto l = detail::integrate(left, 0.0, std::sqrt(split), opt.rel_tol);
  const auto r = detail::integrate(right, 0.0, std::sqrt(de - split), opt.rel_tol);
  return {l.value + r.value, l.abs_error + r.abs_error};
}

double finish(const detail::QuadratureValue& q, double prefactor, double rel_tol, double* rel_err,
              const char* what) {
  const double value = prefactor * q.value;
  const double err = q.value != 0.0 ? q.abs_error / std::abs(q.value) : 0.0;
  if (!std::isfinite(value) || err > rel_tol) {
    std::ostringstream os;
    os << what << " quadrature did not converge: value " << value << ", relative error " << err
       << " > " << rel_tol;
    throw QuadratureError(os.str());
  }
  if (rel_err) *rel_err = err;
  return value;
}

}  // namespace

double compute_delta_tau(const TransverseWell& w, const QuadratureOptions& opt, double* rel_err) {
  const auto q = regularized_integral(w, [](double) { return 1.0; }, Power::InverseSqrt, opt);
  return finish(q, std::sqrt(2.0 * w.mass()), opt.rel_tol, rel_err, "Delta tau");
}

double compute_delta_x(const TransverseWell& w, const QuadratureOptions& opt, double* rel_err) {
  const double speed = w.terminal_speed();
  const double wc = w.omega_c();
  const auto q = regularized_integral(
      w, [speed, wc](double eta) { return speed + wc * eta; }, Power::InverseSqrt, opt);
  return finish(q, std::sqrt(2.0 * w.mass()), opt.rel_tol, rel_err, "Delta x");
}

double compute_delta_A(const TransverseWell& w, const QuadratureOptions& opt, double* rel_err) {
  const auto q = regularized_integral(w, [](double) { return 1.0; }, Power::Sqrt, opt);
  return finish(q, 4.0 * std::sqrt(2.0 * w.mass()), opt.rel_tol, rel_err, "Delta A");
}

CycleResult compute_cycle(const TransverseWell& w, const QuadratureOptions& opt) {
  CycleResult c;
  c.delta_tau = compute_delta_tau(w, opt, &c.err_tau);
  c.delta_x = compute_delta_x(w, opt, &c.err_x);
  c.delta_A = compute_delta_A(w, opt, &c.err_A);
  c.speed_ratio = c.delta_x / (w.terminal_speed() * c.delta_tau);
  return c;
}

CycleResult compute_cycle(const BarrierPotential& p, const SystemConfig& cfg) {
  const EffectiveWell w = find_turning_point(p, cfg);
  return compute_cycle(w, QuadratureOptions{cfg.tolerances.quadrature_rel_tol, 0.5});
}

}  // namespace eres
