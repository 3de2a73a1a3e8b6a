#include "eres/action_resonance.hpp"

#include <cmath>
#include <sstream>

#include "eres/effective_well.hpp"
#include "eres/parallel.hpp"
#include "eres/roots.hpp"

namespace eres {

namespace {

QuadratureOptions quad_opts(const SystemConfig& cfg) {
  return {cfg.tolerances.quadrature_rel_tol, 0.5};
}

// Cycle data at one field, or nullopt when no well forms there.
std::optional<CycleResult> try_cycle(const BarrierPotential& p, const SystemConfig& cfg) {
  const EffectiveWell w = analyze_well(p, cfg);
  if (!w.valid) return std::nullopt;
  return compute_cycle(w, quad_opts(cfg));
}

std::vector<std::optional<CycleResult>> scan_cycles(const BarrierPotential& p,
                                                    const SystemConfig& cfg,
                                                    const std::vector<double>& fields) {
  return detail::parallel_map<std::optional<CycleResult>>(
      fields.size(), [&](std::size_t i) -> std::optional<CycleResult> {
        try {
          return try_cycle(p, cfg.with_field(fields[i]));
        } catch (const Error&) {
          return std::nullopt;
        }
      });
}

void check_range(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw ConfigError("field range must satisfy 0 < H_lo < H_hi");
  if (n < 2) throw ConfigError("field scan needs at least two points");
}

}  // namespace

double wkb_action(const SystemConfig& cfg, double R) { return cfg.wkb_rate() * R; }

ActionResult action_at(const SystemConfig& cfg, const CycleResult& cycle, int N) {
  ActionResult r;
  r.N = N;
  if (N <= 0) return r;
  r.R_used = N * cycle.delta_x;
  r.A_wkb = wkb_action(cfg, r.R_used);
  r.A = r.A_wkb - N * cycle.delta_A;
  r.A_per_length_form = (cfg.wkb_rate() - cycle.delta_A / cycle.delta_x) * r.R_used;
  return r;
}

double action_rate(const BarrierPotential& p, const SystemConfig& cfg) {
  const CycleResult c = compute_cycle(p, cfg);
  return cfg.wkb_rate() - c.delta_A / c.delta_x;
}

double peak_width_estimate(double H_R, const SystemConfig& cfg) {
  return H_R / wkb_action(cfg, cfg.barrier_length);
}

std::vector<CommensurateField> find_commensurate_fields(const BarrierPotential& p,
                                                        const SystemConfig& cfg,
                                                        const std::vector<int>& Ns, double H_lo,
                                                        double H_hi, int scan_points) {
  check_range(H_lo, H_hi, scan_points);
  if (Ns.empty()) throw ConfigError("commensurate-field search needs a nonempty N range");
  const auto fields = log_grid(H_lo, H_hi, scan_points);
  const auto cycles = scan_cycles(p, cfg, fields);
  const double R = cfg.barrier_length;

  std::vector<CommensurateField> out;
  for (int N : Ns) {
    CommensurateField cf{N, std::nullopt, {}};
    if (N < 1) {
      cf.diagnosis = "N must be >= 1";
      out.push_back(cf);
      continue;
    }
    std::vector<std::optional<double>> g(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (cycles[i]) g[i] = N * cycles[i]->delta_x - R;
    const auto br = first_sign_change(g);
    if (!br) {
      std::ostringstream os;
      os << "R = " << R << " A is not " << N << " Delta x(H) for any H in [" << H_lo << ", "
         << H_hi << "] T";
      cf.diagnosis = os.str();
      out.push_back(cf);
      continue;
    }
    const double a = fields[br->first], b = fields[br->second];
    if (a == b) {
      cf.h = a;
    } else {
      try {
        cf.h = bisect_log(
            [&](double H) { return N * compute_cycle(p, cfg.with_field(H)).delta_x - R; }, a, b,
            cfg.tolerances.root_abs_tol);
      } catch (const Error& e) {
        cf.diagnosis = e.what();
      }
    }
    out.push_back(cf);
  }
  return out;
}

ResonanceResult find_resonance_field(const BarrierPotential& p, const SystemConfig& cfg,
                                     double H_lo, double H_hi, const ResonanceOptions& opt) {
  check_range(H_lo, H_hi, opt.scan_points);
  const auto fields = log_grid(H_lo, H_hi, opt.scan_points);
  const auto cycles = scan_cycles(p, cfg, fields);
  const double k = cfg.wkb_rate();

  ResonanceResult res;
  std::vector<std::optional<double>> f(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (cycles[i]) f[i] = k - cycles[i]->delta_A / cycles[i]->delta_x;
    res.scan.emplace_back(fields[i], f[i]);
  }

  const auto br = first_sign_change(f);
  if (!br) {
    std::ostringstream os;
    os << "f(H) = 2 sqrt(2m|E|)/hbar - Delta A/Delta x keeps its sign on [" << H_lo << ", "
       << H_hi << "] T";
    for (const auto& v : f)
      if (v) {
        os << " (f = " << *v << " 1/A at the lowest admissible field)";
        break;
      }
    throw ResonanceNoBracketError(os.str(), res.scan);
  }

  const auto rate = [&](double H) {
    const CycleResult c = compute_cycle(p, cfg.with_field(H));
    return k - c.delta_A / c.delta_x;
  };
  const double a = fields[br->first], b = fields[br->second];
  res.H_R = a == b ? a : bisect_log(rate, a, b, cfg.tolerances.root_abs_tol);

  const SystemConfig at_root = cfg.with_field(res.H_R);
  const EffectiveWell w = find_turning_point(p, at_root);
  res.delta_eta_at_resonance = w.delta_eta;
  res.cycle_at_resonance = compute_cycle(w, quad_opts(cfg));
  res.residual = k - res.cycle_at_resonance.delta_A / res.cycle_at_resonance.delta_x;
  res.peak_width = peak_width_estimate(res.H_R, cfg);

  // One-instanton branch: from the low end of the range up to H_R.
  if (opt.curve_points >= 2 && res.H_R > H_lo) {
    const auto curve_fields = log_grid(H_lo, res.H_R, opt.curve_points);
    const auto curve_cycles = scan_cycles(p, cfg, curve_fields);
    for (std::size_t i = 0; i < curve_fields.size(); ++i) {
      if (!curve_cycles[i]) continue;
      const auto& c = *curve_cycles[i];
      res.action_curve.push_back({curve_fields[i],
                                  (k - c.delta_A / c.delta_x) * cfg.barrier_length, c.delta_x,
                                  c.delta_A});
    }
  }

  if (!opt.harmonics.empty())
    res.h_list = find_commensurate_fields(p, cfg, opt.harmonics, H_lo, res.H_R, opt.scan_points);
  return res;
}

HarmonicStepDiagnostic harmonic_step_from_cycles(const SystemConfig& cfg, int N,
                                                 double h_prev, const CycleResult& prev,
                                                 double h, const CycleResult& cur) {
  HarmonicStepDiagnostic d;
  d.N = N;
  d.h_prev = h_prev;
  d.h = h;
  const double R = cfg.barrier_length;
  d.A_prev = wkb_action(cfg, R) - (N - 1) * prev.delta_A;
  d.A = wkb_action(cfg, R) - N * cur.delta_A;
  d.delta_A = cur.delta_A;
  d.discrepancy = (d.A_prev - d.A) - d.delta_A;
  return d;
}

HarmonicStepDiagnostic harmonic_step_diagnostic(const BarrierPotential& p,
                                                const SystemConfig& cfg, int N, double H_lo,
                                                double H_hi) {
  if (N < 2) throw ConfigError("the h_{N-1}/h_N relation needs N >= 2");
  const auto hs = find_commensurate_fields(p, cfg, {N - 1, N}, H_lo, H_hi);
  for (const auto& cf : hs)
    if (!cf.h) throw NoBracketError("h_" + std::to_string(cf.N) + " not found: " + cf.diagnosis);
  const double h_prev = *hs[0].h, h = *hs[1].h;
  return harmonic_step_from_cycles(cfg, N, h_prev, compute_cycle(p, cfg.with_field(h_prev)),
                                   h, compute_cycle(p, cfg.with_field(h)));
}

}  // namespace eres
