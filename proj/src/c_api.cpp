#include "eres/eres.h"

#include <iostream>
#include <memory>
#include <string>

#include "eres/action_resonance.hpp"
#include "eres/config_io.hpp"
#include "eres/cycle_integrals.hpp"
#include "eres/dissipation.hpp"
#include "eres/effective_well.hpp"
#include "eres/errors.hpp"
#include "eres/run.hpp"
#include "eres/trajectory.hpp"

struct eres_model {
  eres::ModelConfig cfg;
};

struct eres_trajectory {
  eres::TrajectoryRecord record;
  double action = 0.0;
};

namespace {

thread_local std::string g_last_error;

eres_status fail(eres_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
eres_status guarded(F&& f) {
  try {
    f();
    return ERES_OK;
  } catch (const eres::Error& e) {
    return fail(static_cast<eres_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ERES_FAILURE, "out of memory");
  } catch (const std::exception& e) {
    return fail(ERES_FAILURE, e.what());
  }
}

eres_status null_arg(const char* name) {
  return fail(ERES_CONFIG, std::string("null argument: ") + name);
}

eres::PotentialFamily to_family(eres_family f) {
  switch (f) {
    case ERES_DOUBLE_HARMONIC: return eres::PotentialFamily::DoubleHarmonic;
    case ERES_PURE_HARMONIC: return eres::PotentialFamily::PureHarmonic;
    case ERES_QUADRATIC: return eres::PotentialFamily::Quadratic;
    case ERES_QUADRATIC_QUARTIC: return eres::PotentialFamily::QuadraticQuartic;
  }
  throw eres::ConfigError("unknown potential family " + std::to_string(static_cast<int>(f)));
}

eres_family from_family(eres::PotentialFamily f) {
  switch (f) {
    case eres::PotentialFamily::DoubleHarmonic: return ERES_DOUBLE_HARMONIC;
    case eres::PotentialFamily::PureHarmonic: return ERES_PURE_HARMONIC;
    case eres::PotentialFamily::Quadratic: return ERES_QUADRATIC;
    case eres::PotentialFamily::QuadraticQuartic: return ERES_QUADRATIC_QUARTIC;
  }
  return ERES_DOUBLE_HARMONIC;
}

eres_cycle_info cycle_info(const eres::SystemConfig& s, double delta_eta,
                           const eres::CycleResult& c) {
  return {delta_eta, c.delta_tau, c.delta_x, c.delta_A, s.wkb_rate() - c.delta_A / c.delta_x};
}

}  // namespace

extern "C" {

const char* eres_version(void) { return eres::version_string(); }

const char* eres_last_error(void) { return g_last_error.c_str(); }

void eres_params_example(eres_params* out) {
  if (!out) return;
  const auto cfg = eres::example_config();
  const auto& p = cfg.potential;
  const auto& s = cfg.system;
  *out = {from_family(p.family()), p.u0(), p.a(), p.lambda(), s.mass_me, s.energy(),
          s.barrier_length, s.field, s.tolerances.quadrature_rel_tol,
          s.tolerances.root_abs_tol, s.tolerances.ode_rel_tol};
}

eres_status eres_model_create(const eres_params* params, eres_model** out) {
  if (!params) return null_arg("params");
  if (!out) return null_arg("out");
  return guarded([&] {
    eres::ModelConfig cfg;
    cfg.potential = eres::BarrierPotential(to_family(params->family), params->u0_eV,
                                           params->a_angstrom, params->lambda);
    auto& s = cfg.system;
    s.mass_me = params->mass_me;
    s.energy_depth = params->E_eV < 0 ? -params->E_eV : params->E_eV;
    s.barrier_length = params->R_angstrom;
    s.field = params->H_tesla;
    s.tolerances = {params->quadrature_rel_tol, params->root_abs_tol, params->ode_rel_tol};
    s.validate();
    *out = new eres_model{std::move(cfg)};
  });
}

eres_status eres_model_load(const char* config_path, eres_model** out) {
  if (!config_path) return null_arg("config_path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new eres_model{eres::load_config(config_path)}; });
}

void eres_model_destroy(eres_model* model) { delete model; }

eres_status eres_model_params(const eres_model* model, eres_params* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  const auto& p = model->cfg.potential;
  const auto& s = model->cfg.system;
  *out = {from_family(p.family()), p.u0(), p.a(), p.lambda(), s.mass_me, s.energy(),
          s.barrier_length, s.field, s.tolerances.quadrature_rel_tol,
          s.tolerances.root_abs_tol, s.tolerances.ode_rel_tol};
  return ERES_OK;
}

eres_status eres_model_set_field(eres_model* model, double H_tesla) {
  if (!model) return null_arg("model");
  return guarded([&] {
    eres::SystemConfig s = model->cfg.system.with_field(H_tesla);
    s.validate();
    model->cfg.system = s;
  });
}

eres_status eres_well(const eres_model* model, eres_well_info* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto w = eres::analyze_well(model->cfg.potential, model->cfg.system);
    *out = {w.valid ? 1 : 0, w.eta0_value, w.valid ? w.delta_eta : 0.0, w.omega};
  });
}

eres_status eres_cycle(const eres_model* model, eres_cycle_info* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& s = model->cfg.system;
    const auto w = eres::find_turning_point(model->cfg.potential, s);
    const auto c = eres::compute_cycle(w, {s.tolerances.quadrature_rel_tol, 0.5});
    *out = cycle_info(s, w.delta_eta, c);
  });
}

eres_status eres_action(const eres_model* model, int N, eres_action_info* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    if (N < 1) throw eres::ConfigError("N must be >= 1");
    const auto& s = model->cfg.system;
    const auto a = eres::action_at(s, eres::compute_cycle(model->cfg.potential, s), N);
    *out = {a.N, a.R_used, a.A, a.A_wkb};
  });
}

eres_status eres_resonance(const eres_model* model, double H_lo, double H_hi, int scan_points,
                           eres_resonance_info* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    eres::ResonanceOptions opt;
    opt.scan_points = scan_points;
    opt.curve_points = 0;
    opt.harmonics.clear();
    const auto& s = model->cfg.system;
    const auto r = eres::find_resonance_field(model->cfg.potential, s, H_lo, H_hi, opt);
    *out = {r.H_R, r.residual, r.peak_width, r.delta_eta_at_resonance,
            cycle_info(s, r.delta_eta_at_resonance, r.cycle_at_resonance)};
  });
}

eres_status eres_dissipation(const eres_model* model, int N, double deltaE_over_E,
                             double delta_u_eV, eres_dissipation_info* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& s = model->cfg.system;
    const auto c = eres::compute_cycle(model->cfg.potential, s);
    const auto d =
        eres::dissipation_report(s, c.delta_tau, c.delta_x, N, deltaE_over_E, delta_u_eV);
    *out = {d.gamma,
            d.tau0,
            d.lambda_dB,
            d.friction.pass ? 1 : 0,
            d.linewidth.pass ? 1 : 0,
            d.inhomogeneity.pass ? 1 : 0,
            d.linewidth.R_max,
            d.inhomogeneity.limit};
  });
}

eres_status eres_trajectory_create(const eres_model* model, int N, int continuous,
                                   eres_trajectory** out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& s = model->cfg.system;
    const auto w = eres::find_turning_point(model->cfg.potential, s);
    auto t = std::make_unique<eres_trajectory>();
    t->record = eres::integrate_full(w, N, {s.tolerances.ode_rel_tol, 4096, continuous != 0});
    t->action = eres::action_direct(w, t->record);
    *out = t.release();
  });
}

void eres_trajectory_destroy(eres_trajectory* traj) { delete traj; }

size_t eres_trajectory_size(const eres_trajectory* traj) {
  return traj ? traj->record.states.size() : 0;
}

eres_status eres_trajectory_state(const eres_trajectory* traj, size_t i, eres_state* out) {
  if (!traj) return null_arg("traj");
  if (!out) return null_arg("out");
  if (i >= traj->record.states.size())
    return fail(ERES_CONFIG, "state index " + std::to_string(i) + " out of range");
  const auto& s = traj->record.states[i];
  *out = {s.tau, s.eta, s.eta_dot, s.x};
  return ERES_OK;
}

eres_status eres_trajectory_summary(const eres_trajectory* traj, eres_trajectory_info* out) {
  if (!traj) return null_arg("traj");
  if (!out) return null_arg("out");
  const auto& r = traj->record;
  *out = {r.N_cycles,         r.measured_delta_tau, r.measured_delta_x,
          r.max_energy_drift, r.max_joint_eta,      r.max_joint_eta_dot,
          r.x_dot_start,      r.x_dot_end,          traj->action};
  return ERES_OK;
}

int eres_run(const char* command, const char* config_path, const eres_run_options* options) {
  const bool quiet = options && options->quiet;
  const auto report = [&](int code, const std::string& msg) {
    g_last_error = msg;
    if (!quiet) std::cerr << "eres: " << msg << "\n";
    return code;
  };
  if (!command) return report(ERES_CONFIG, "no command given");
  if (!config_path) return report(ERES_CONFIG, "no config file given");

  eres::RunOptions opt;
  eres::ModelConfig cfg;
  try {
    if (options) {
      if (options->out_dir) opt.out_dir = options->out_dir;
      if (options->has_H) opt.H = options->H_tesla;
      opt.H_at_resonance = options->H_at_resonance != 0;
      if (options->has_N) opt.N = options->N;
      if (options->grid) opt.grid = eres::parse_grid(options->grid);
    }
    cfg = eres::load_config(config_path);
  } catch (const eres::Error& e) {
    return report(static_cast<int>(e.code()), e.what());
  } catch (const std::exception& e) {
    return report(ERES_FAILURE, e.what());
  }
  if (!quiet)
    for (const auto& note : cfg.notes) std::cerr << "eres: note: " << note << "\n";

  const auto out = eres::run_command(command, cfg, opt);
  if (out.exit_code != 0) return report(out.exit_code, out.message);
  if (!quiet) std::cerr << "eres: wrote " << out.summary_path.string() << "\n";
  return 0;
}

}  // extern "C"
