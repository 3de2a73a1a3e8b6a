#include "eres/trajectory.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "eres/cycle_integrals.hpp"
#include "eres/errors.hpp"

namespace eres {

namespace {

namespace odeint = boost::numeric::odeint;

using State = std::array<double, 3>;  // eta, eta_dot, x
using Stepper = odeint::runge_kutta_fehlberg78<State>;

// Event search stops after this many characteristic well-crossing times.
constexpr double kEventCapCrossings = 1e4;

struct ReducedSystem {
  const TransverseWell& w;
  double inv_mass;
  double speed;
  double wc;
  void operator()(const State& s, State& ds, double /*tau*/) const {
    ds[0] = s[1];
    ds[1] = w.gap_slope(s[0]) * inv_mass;  // m eta'' = -dv/deta = d(E - v)/deta
    ds[2] = -(speed + wc * s[0]);
  }
};

// Crossing time of the well at the mid-well speed; sets the event cap and
// the chunk size of the event scan.
double crossing_time(const TransverseWell& w) {
  const double de = w.turning_point();
  const double g = w.gap(0.5 * de);
  return de * std::sqrt(w.mass() / (2.0 * g));
}

class Integrator {
 public:
  Integrator(const TransverseWell& w, double rel_tol)
      : w_(w),
        sys_{w, 1.0 / w.mass(), w.terminal_speed(), w.omega_c()},
        stepper_(odeint::make_controlled(0.0, rel_tol, Stepper())) {}

  // State at a short time after the start, from the Taylor expansion about
  // eta = eta_dot = 0; keeps every component nonzero so pure relative error
  // control applies from the first step.
  std::pair<double, State> seed(double t_scale) const {
    const double accel = sys_.w.gap_slope(0.0) * sys_.inv_mass;
    // eta''' = g'' eta_dot / m vanishes at tau = 0; eta'''' = g''(0) accel / m.
    const double g2 = second_slope();
    const double t = 1e-6 * t_scale;
    const double t2 = t * t;
    State s;
    s[0] = accel * t2 / 2.0 + g2 * sys_.inv_mass * accel * t2 * t2 / 24.0;
    s[1] = accel * t + g2 * sys_.inv_mass * accel * t2 * t / 6.0;
    s[2] = -sys_.speed * t - sys_.wc * accel * t2 * t / 6.0;
    return {t, s};
  }

  // Advance s from t0 to t1.
  void advance(State& s, double t0, double t1) {
    if (t1 == t0) return;
    double dt = (t1 - t0) / 8.0;
    odeint::integrate_adaptive(stepper_, sys_, s, t0, t1, dt);
  }

  // Integrate onto each time in `times` (ascending, times[0] == t0).
  void sample(State s, double t0, const std::vector<double>& times, std::vector<State>& out) {
    out.clear();
    out.reserve(times.size());
    double t = t0;
    for (double tt : times) {
      advance(s, t, tt);
      t = tt;
      out.push_back(s);
    }
  }

  const ReducedSystem& system() const { return sys_; }

 private:
  double second_slope() const {
    // g''(0) by a symmetric difference on the scale of the well.
    const double h = 1e-4 * w_.turning_point();
    return (w_.gap_slope(h) - w_.gap_slope(0.0)) / h;
  }

  const TransverseWell& w_;
  ReducedSystem sys_;
  decltype(odeint::make_controlled(0.0, 1e-12, Stepper())) stepper_;
};

struct HalfPeriod {
  double t_seed;
  State s_seed;
  double tau_half;
  State at_turning;
};

HalfPeriod find_half_period(Integrator& in, const TransverseWell& w) {
  const double tc = crossing_time(w);
  auto [t, s] = in.seed(tc);
  HalfPeriod hp{t, s, 0.0, {}};
  const double chunk = tc / 64.0;
  const double cap = kEventCapCrossings * tc;

  double t_prev = t;
  State s_prev = s;
  while (true) {
    if (t > cap) {
      std::ostringstream os;
      os << "half-period event eta_dot = 0 not found before tau = " << cap;
      throw EventMissError(os.str());
    }
    t_prev = t;
    s_prev = s;
    in.advance(s, t, t + chunk);
    t += chunk;
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]))
      throw EventMissError("trajectory diverged before the half-period event");
    if (s[1] <= 0.0) break;
  }

  // Illinois false position on eta_dot(tau), re-integrating from s_prev.
  auto eta_dot_at = [&](double tau, State& out) {
    out = s_prev;
    in.advance(out, t_prev, tau);
    return out[1];
  };
  double a = t_prev, b = t;
  double fa = s_prev[1], fb = s[1];
  State sb = s;
  int side = 0;
  for (int i = 0; i < 200 && fb != 0.0; ++i) {
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    State sc;
    const double fc = eta_dot_at(c, sc);
    if ((fc > 0.0) == (fa > 0.0)) {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = fc;
      sb = sc;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * b) break;
  }
  hp.tau_half = b;
  hp.at_turning = sb;
  return hp;
}

int round_samples(int n) {
  const int k = std::max(8, n);
  return (k + 7) / 8 * 8;
}

double energy_drift(const TransverseWell& w, const TrajectoryState& s) {
  const double kinetic = 0.5 * w.mass() * s.eta_dot * s.eta_dot;
  return std::abs(kinetic - w.gap(s.eta)) / w.energy_depth();
}

void finalize(const TransverseWell& w, TrajectoryRecord& r, double rel_tol) {
  const double speed = w.terminal_speed();
  const double wc = w.omega_c();
  r.max_energy_drift = 0.0;
  for (const auto& s : r.states) r.max_energy_drift = std::max(r.max_energy_drift, energy_drift(w, s));
  const std::size_t per_cycle = (r.states.size() - 1) / static_cast<std::size_t>(r.N_cycles);
  r.max_joint_eta = 0.0;
  r.max_joint_eta_dot = 0.0;
  for (int k = 0; k <= r.N_cycles; ++k) {
    const auto& s = r.states[static_cast<std::size_t>(k) * per_cycle];
    r.max_joint_eta = std::max(r.max_joint_eta, std::abs(s.eta));
    r.max_joint_eta_dot = std::max(r.max_joint_eta_dot, std::abs(s.eta_dot));
  }
  r.x_dot_start = -(speed + wc * r.states.front().eta);
  r.x_dot_end = -(speed + wc * r.states.back().eta);
  if (r.max_energy_drift > 100.0 * rel_tol) {
    std::ostringstream os;
    os << "energy drift " << r.max_energy_drift << " |E| exceeds 100 x ode_rel_tol = "
       << 100.0 * rel_tol;
    throw EnergyDriftError(os.str());
  }
}

// Uniform grid on [0, tau_end] with n intervals; element 0 is the seed time
// stand-in and is handled by the caller.
std::vector<double> uniform(double tau_end, int n) {
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = tau_end * i / n;
  return g;
}

// Stored samples from the ODE on [t_seed, ...], with the exact start state at
// tau = 0 prepended.
std::vector<TrajectoryState> sample_from_seed(Integrator& in, const HalfPeriod& hp,
                                              const std::vector<double>& grid) {
  std::vector<double> times(grid.begin() + 1, grid.end());
  std::vector<State> raw;
  State s = hp.s_seed;
  double t = hp.t_seed;
  raw.reserve(times.size());
  for (double tt : times) {
    in.advance(s, t, tt);
    t = tt;
    raw.push_back(s);
  }
  std::vector<TrajectoryState> out;
  out.reserve(grid.size());
  out.push_back({0.0, 0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < raw.size(); ++i)
    out.push_back({times[i], raw[i][0], raw[i][1], raw[i][2]});
  return out;
}

}  // namespace

TrajectoryRecord integrate_cycle(const TransverseWell& w, const TrajectoryOptions& opt) {
  Integrator in(w, opt.rel_tol);
  const HalfPeriod hp = find_half_period(in, w);
  const int n = round_samples(opt.samples_per_cycle);
  const int half = n / 2;

  const auto first_half = sample_from_seed(in, hp, uniform(hp.tau_half, half));
  TrajectoryRecord r;
  r.N_cycles = 1;
  r.measured_delta_tau = 2.0 * hp.tau_half;
  r.eta_at_turning = hp.at_turning[0];
  const double x_half = hp.at_turning[2];
  r.states = first_half;
  // Mirror: eta(dtau - s) = eta(s), eta_dot flips, x(dtau - s) = 2 x_half - x(s).
  for (int i = half - 1; i >= 0; --i) {
    const auto& s = first_half[static_cast<std::size_t>(i)];
    r.states.push_back({r.measured_delta_tau - s.tau, s.eta, -s.eta_dot, 2.0 * x_half - s.x});
  }
  r.states[static_cast<std::size_t>(half)] = {hp.tau_half, hp.at_turning[0], 0.0, x_half};
  r.measured_delta_x = std::abs(r.states.back().x - r.states.front().x);
  finalize(w, r, opt.rel_tol);
  return r;
}

TrajectoryRecord integrate_full(const TransverseWell& w, int N, const TrajectoryOptions& opt) {
  if (N < 1) throw ConfigError("trajectory needs N >= 1 cycles");
  if (!opt.continuous) {
    const TrajectoryRecord one = integrate_cycle(w, opt);
    if (N == 1) return one;
    TrajectoryRecord r = one;
    r.N_cycles = N;
    const double dx = one.states.back().x - one.states.front().x;
    for (int k = 1; k < N; ++k) {
      for (std::size_t i = 1; i < one.states.size(); ++i) {
        auto s = one.states[i];
        s.tau += k * one.measured_delta_tau;
        s.x += k * dx;
        r.states.push_back(s);
      }
    }
    finalize(w, r, opt.rel_tol);
    return r;
  }

  Integrator in(w, opt.rel_tol);
  const HalfPeriod hp = find_half_period(in, w);
  const int n = round_samples(opt.samples_per_cycle);
  TrajectoryRecord r;
  r.N_cycles = N;
  r.measured_delta_tau = 2.0 * hp.tau_half;
  r.eta_at_turning = hp.at_turning[0];
  r.states = sample_from_seed(in, hp, uniform(N * r.measured_delta_tau, N * n));
  r.measured_delta_x = std::abs(r.states[static_cast<std::size_t>(n)].x - r.states.front().x);
  finalize(w, r, opt.rel_tol);
  return r;
}

namespace {

// Composite Boole weights over 4-interval panels; n intervals, n % 4 == 0.
template <class F>
double boole(const TrajectoryRecord& r, F&& integrand, std::size_t from, std::size_t to) {
  double sum = 0.0;
  for (std::size_t i = from; i + 4 <= to; i += 4) {
    const double h = (r.states[i + 4].tau - r.states[i].tau) / 4.0;
    sum += 2.0 * h / 45.0 *
           (7.0 * integrand(r.states[i]) + 32.0 * integrand(r.states[i + 1]) +
            12.0 * integrand(r.states[i + 2]) + 32.0 * integrand(r.states[i + 3]) +
            7.0 * integrand(r.states[i + 4]));
  }
  return sum;
}

}  // namespace

double action_direct(const TransverseWell& w, const TrajectoryRecord& r) {
  const double m = w.mass(), wc = w.omega_c(), speed = w.terminal_speed();
  // u(i eta) - E = (m/2) xdot^2 - (E - v): the continued barrier recovered
  // from the gap and the first integral.
  auto lagrangian = [&](const TrajectoryState& s) {
    const double xdot = -(speed + wc * s.eta);
    const double u_minus_e = 0.5 * m * xdot * xdot - w.gap(s.eta);
    return 0.5 * m * xdot * xdot - 0.5 * m * s.eta_dot * s.eta_dot + m * wc * s.eta * xdot +
           u_minus_e;
  };
  return 2.0 * boole(r, lagrangian, 0, r.states.size() - 1);
}

double action_direct_reduced(const TransverseWell& w, const TrajectoryRecord& r) {
  const double m = w.mass(), wc = w.omega_c(), speed = w.terminal_speed();
  // m wc eta0 == m * speed.
  auto lagrangian = [&](const TrajectoryState& s) {
    const double xdot = -(speed + wc * s.eta);
    return -0.5 * m * s.eta_dot * s.eta_dot - w.gap(s.eta) - m * speed * xdot;
  };
  return 2.0 * boole(r, lagrangian, 0, r.states.size() - 1);
}

std::vector<ActionSample> accumulated_action(const TransverseWell& w, const TrajectoryRecord& r) {
  const double m = w.mass(), wc = w.omega_c(), speed = w.terminal_speed();
  auto lagrangian = [&](const TrajectoryState& s) {
    const double xdot = -(speed + wc * s.eta);
    return -0.5 * m * s.eta_dot * s.eta_dot - w.gap(s.eta) - m * speed * xdot;
  };
  std::vector<ActionSample> out;
  const double x0 = r.states.front().x;
  double acc = 0.0;
  out.push_back({r.states.front().tau, 0.0, 0.0});
  for (std::size_t i = 0; i + 4 < r.states.size(); i += 4) {
    acc += 2.0 * boole(r, lagrangian, i, i + 4);
    const auto& s = r.states[i + 4];
    out.push_back({s.tau, std::abs(s.x - x0), acc});
  }
  return out;
}

std::vector<EnvelopePoint> psi_envelope(const BarrierPotential& p, const SystemConfig& cfg,
                                        double H_R, int N_max, const TrajectoryOptions& opt) {
  if (N_max < 1) throw ConfigError("psi envelope needs N_max >= 1");
  if (cfg.field > H_R * (1.0 + cfg.tolerances.root_abs_tol)) {
    std::ostringstream os;
    os << "H = " << cfg.field << " T is above H_R = " << H_R
       << " T: beyond one-instanton validity, no envelope emitted";
    throw BeyondOneInstantonError(os.str());
  }
  const EffectiveWell w = find_turning_point(p, cfg);
  const TrajectoryRecord r = integrate_full(w, N_max, opt);
  const auto acc = accumulated_action(w, r);
  const double k = cfg.wkb_rate();
  const std::size_t panels_per_cycle = (acc.size() - 1) / static_cast<std::size_t>(N_max);

  std::vector<EnvelopePoint> out;
  out.reserve(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    out.push_back({acc[i].distance, -acc[i].action, -k * acc[i].distance,
                   i % panels_per_cycle == 0});
  }
  return out;
}

}  // namespace eres
