#include "eres/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "eres/action_resonance.hpp"
#include "eres/cycle_integrals.hpp"
#include "eres/dissipation.hpp"
#include "eres/effective_well.hpp"
#include "eres/errors.hpp"
#include "eres/parallel.hpp"
#include "eres/trajectory.hpp"
#include "eres/validation.hpp"

namespace eres {

using nlohmann::ordered_json;

namespace {

constexpr double kDefaultFieldLo = 1e-35;
constexpr double kDefaultFieldHi = 100.0;
constexpr int kDefaultScanPoints = 64;
constexpr int kWellSamples = 401;

// JSON has no NaN/inf; emit null instead.
ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json cycle_json(const CycleResult& c, const SystemConfig& s) {
  return {{"delta_tau_hbar_per_eV", num(c.delta_tau)},
          {"delta_x_A", num(c.delta_x)},
          {"delta_A", num(c.delta_A)},
          {"rel_err_tau", num(c.err_tau)},
          {"rel_err_x", num(c.err_x)},
          {"rel_err_A", num(c.err_A)},
          {"speed_ratio", num(c.speed_ratio)},
          {"action_rate_per_A", num(s.wkb_rate() - c.delta_A / c.delta_x)}};
}

ordered_json scan_json(const std::vector<std::pair<double, std::optional<double>>>& scan) {
  ordered_json arr = ordered_json::array();
  for (const auto& [H, f] : scan)
    arr.push_back({{"H_T", num(H)}, {"f_per_A", f ? num(*f) : ordered_json(nullptr)}});
  return arr;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Job {
  ModelConfig cfg;
  RunOptions opt;
  ordered_json results = ordered_json::object();
  std::vector<PlotTable> tables;
  int exit_code = 0;
  std::string message;

  const BarrierPotential& p() const { return cfg.potential; }
  const SystemConfig& sys() const { return cfg.system; }

  FieldGrid search_grid() const {
    FieldGrid g{kDefaultFieldLo, kDefaultFieldHi, kDefaultScanPoints};
    if (opt.grid) {
      g = *opt.grid;
      if (g.steps < 2) throw ConfigError("a field search grid needs at least 2 steps");
    }
    return g;
  }
};

EffectiveWell checked_well(Job& job) {
  const EffectiveWell w = analyze_well(job.p(), job.sys());
  if (!w.valid) throw NoWellError(w.diagnosis);
  return w;
}

void cmd_well(Job& job) {
  const auto& s = job.sys();
  const EffectiveWell w = analyze_well(job.p(), s);
  job.results["eta0_A"] = num(w.eta0_value);
  job.results["hbar_omega_c_eV"] = num(w.omega);
  job.results["terminal_speed_A_per_t"] = num(s.terminal_speed());
  job.results["valid"] = w.valid;
  job.results["delta_eta_A"] = w.valid ? num(w.delta_eta) : ordered_json(nullptr);
  job.results["diagnosis"] = w.diagnosis;

  const double eta_max = w.valid ? 1.25 * w.delta_eta : 3.0 * job.p().a();
  PlotTable t{"fig2", {"eta [A]", "v [eV]", "E [eV]"}, {}};
  for (const auto& [eta, v] : sample_effective_potential(job.p(), s, eta_max, kWellSamples))
    t.add_row({eta, v, s.energy()});
  job.tables.push_back(std::move(t));
  if (!w.valid) throw NoWellError(w.diagnosis);
}

void cmd_cycle(Job& job) {
  const EffectiveWell w = checked_well(job);
  const CycleResult c = compute_cycle(w, {job.sys().tolerances.quadrature_rel_tol, 0.5});
  job.results["eta0_A"] = num(w.eta0_value);
  job.results["delta_eta_A"] = num(w.delta_eta);
  job.results["cycle"] = cycle_json(c, job.sys());
}

ordered_json action_json(const ActionResult& a) {
  return {{"N", a.N},
          {"R_A", num(a.R_used)},
          {"A", num(a.A)},
          {"A_wkb", num(a.A_wkb)},
          {"A_per_length_form", num(a.A_per_length_form)}};
}

void cmd_action(Job& job) {
  const auto& s = job.sys();
  const EffectiveWell w = checked_well(job);
  const CycleResult c = compute_cycle(w, {s.tolerances.quadrature_rel_tol, 0.5});
  const double R = s.barrier_length;
  const double cycles = R / c.delta_x;
  const int N_lo = static_cast<int>(std::floor(cycles));
  const int N_hi = static_cast<int>(std::ceil(cycles));

  job.results["cycle"] = cycle_json(c, s);
  job.results["action"] = action_json(action_at(s, c, job.cfg.N));
  job.results["R_A"] = num(R);
  job.results["cycles_in_R"] = num(cycles);
  job.results["A_at_R_per_length_form"] = num((s.wkb_rate() - c.delta_A / c.delta_x) * R);
  job.results["A_wkb_at_R"] = num(wkb_action(s, R));
  ordered_json bracket = ordered_json::array();
  for (int N : {N_lo, N_hi})
    if (N >= 1) bracket.push_back(action_json(action_at(s, c, N)));
  job.results["bracketing_N"] = bracket;

  const int N_max = std::clamp(std::max(job.cfg.N, N_hi), 1, 100000);
  PlotTable t{"fig4a", {"N [1]", "R [A]", "A [1]", "A_wkb [1]"}, {}};
  for (int N = 1; N <= N_max; ++N) {
    const ActionResult a = action_at(s, c, N);
    t.add_row({double(N), a.R_used, a.A, a.A_wkb});
  }
  job.tables.push_back(std::move(t));
}

void cmd_resonance(Job& job) {
  const FieldGrid g = job.search_grid();
  ResonanceOptions ro;
  ro.scan_points = g.steps;
  ro.harmonics.resize(static_cast<std::size_t>(job.cfg.N));
  std::iota(ro.harmonics.begin(), ro.harmonics.end(), 1);
  ResonanceResult r;
  try {
    r = find_resonance_field(job.p(), job.sys(), g.lo, g.hi, ro);
  } catch (const ResonanceNoBracketError& e) {
    job.results["scan"] = scan_json(e.scan);
    throw;
  }
  job.results["H_R_T"] = num(r.H_R);
  job.results["residual_per_A"] = num(r.residual);
  job.results["peak_width_T"] = num(r.peak_width);
  job.results["delta_eta_at_resonance_A"] = num(r.delta_eta_at_resonance);
  job.results["cycle_at_resonance"] = cycle_json(r.cycle_at_resonance, job.sys());
  ordered_json hl = ordered_json::array();
  for (const auto& h : r.h_list)
    hl.push_back({{"N", h.N},
                  {"h_T", h.h ? num(*h.h) : ordered_json(nullptr)},
                  {"diagnosis", h.diagnosis}});
  job.results["h_list"] = hl;
  job.results["scan"] = scan_json(r.scan);

  PlotTable t{"fig5", {"H [T]", "A [1]", "delta_x [A]", "delta_A [1]"}, {}};
  for (const auto& pt : r.action_curve) t.add_row({pt.H, pt.A, pt.delta_x, pt.delta_A});
  job.tables.push_back(std::move(t));
}

void cmd_harmonics(Job& job) {
  const auto& s = job.sys();
  const FieldGrid g = job.search_grid();
  std::vector<int> Ns(static_cast<std::size_t>(job.cfg.N));
  std::iota(Ns.begin(), Ns.end(), 1);
  const auto hs = find_commensurate_fields(job.p(), s, Ns, g.lo, g.hi, g.steps);

  ordered_json hl = ordered_json::array();
  ordered_json diag = ordered_json::array();
  PlotTable t{"fig5_harmonics", {"N [1]", "h_N [T]", "delta_x [A]", "delta_A [1]", "A [1]"}, {}};
  std::optional<std::pair<double, CycleResult>> prev;
  bool any = false;
  for (const auto& h : hs) {
    ordered_json e = {{"N", h.N}, {"h_T", h.h ? num(*h.h) : ordered_json(nullptr)}};
    if (!h.h) {
      e["diagnosis"] = h.diagnosis;
      hl.push_back(e);
      prev.reset();
      continue;
    }
    any = true;
    const CycleResult c = compute_cycle(job.p(), s.with_field(*h.h));
    const ActionResult a = action_at(s, c, h.N);
    e["A"] = num(a.A);
    hl.push_back(e);
    t.add_row({double(h.N), *h.h, c.delta_x, c.delta_A, a.A});
    if (prev && h.N >= 2) {
      const HarmonicStepDiagnostic d = harmonic_step_from_cycles(s, h.N, prev->first, prev->second, *h.h, c);
      diag.push_back({{"N", d.N},
                      {"A_prev", num(d.A_prev)},
                      {"A", num(d.A)},
                      {"delta_A", num(d.delta_A)},
                      {"discrepancy", num(d.discrepancy)}});
    }
    prev = std::make_pair(*h.h, c);
  }
  job.results["R_A"] = num(s.barrier_length);
  job.results["h_list"] = hl;
  job.results["consecutive_relation"] = diag;
  job.tables.push_back(std::move(t));
  if (!any) throw NoBracketError("no commensurate field found for N = 1.." +
                                 std::to_string(job.cfg.N));
}

void cmd_trajectory(Job& job) {
  const auto& s = job.sys();
  const EffectiveWell w = checked_well(job);
  const int N = job.cfg.N;
  const TrajectoryRecord r = integrate_full(w, N, {s.tolerances.ode_rel_tol, 4096, false});
  const CycleResult c = compute_cycle(w, {s.tolerances.quadrature_rel_tol, 0.5});
  const double A_direct = action_direct(w, r);
  job.results["N"] = N;
  job.results["measured_delta_tau"] = num(r.measured_delta_tau);
  job.results["measured_delta_x_A"] = num(r.measured_delta_x);
  job.results["eta_at_turning_A"] = num(r.eta_at_turning);
  job.results["max_energy_drift"] = num(r.max_energy_drift);
  job.results["max_joint_eta"] = num(r.max_joint_eta);
  job.results["max_joint_eta_dot"] = num(r.max_joint_eta_dot);
  job.results["x_dot_start"] = num(r.x_dot_start);
  job.results["x_dot_end"] = num(r.x_dot_end);
  job.results["action_direct"] = num(A_direct);
  job.results["action_direct_reduced"] = num(action_direct_reduced(w, r));
  job.results["action_closed_form"] = num(action_at(s, c, N).A);
  job.results["cycle_quadrature"] = cycle_json(c, s);

  PlotTable a{"fig3a", {"tau [hbar/eV]", "eta [A]", "eta_dot [A eV/hbar]"}, {}};
  PlotTable b{"fig3b", {"tau [hbar/eV]", "x [A]"}, {}};
  for (const auto& st : r.states) {
    a.add_row({st.tau, st.eta, st.eta_dot});
    b.add_row({st.tau, st.x});
  }
  job.tables.push_back(std::move(a));
  job.tables.push_back(std::move(b));
}

void cmd_psi(Job& job) {
  const FieldGrid g = job.search_grid();
  ResonanceOptions ro;
  ro.scan_points = g.steps;
  ro.curve_points = 0;
  ro.harmonics.clear();
  const ResonanceResult r = find_resonance_field(job.p(), job.sys(), g.lo, g.hi, ro);
  const double H = job.opt.H_at_resonance ? r.H_R : job.sys().field;
  const SystemConfig s = job.sys().with_field(H);
  job.results["H_R_T"] = num(r.H_R);
  job.results["H_T"] = num(H);
  job.results["N_max"] = job.cfg.N;
  const auto env = psi_envelope(job.p(), s, r.H_R, job.cfg.N);

  const bool at_resonance = std::abs(H - r.H_R) <= s.tolerances.root_abs_tol * r.H_R;
  PlotTable t{at_resonance ? "fig6" : "fig4b",
              {"x [A]", "log_psi_ratio [1]", "wkb_log_psi_ratio [1]", "node [1]"},
              {}};
  ordered_json nodes = ordered_json::array();
  for (const auto& e : env) {
    t.add_row({e.x, e.log_ratio, e.wkb_log_ratio, e.node ? 1.0 : 0.0});
    if (e.node) nodes.push_back({{"x_A", num(e.x)}, {"log_psi_ratio", num(e.log_ratio)}});
  }
  job.results["nodes"] = nodes;
  job.tables.push_back(std::move(t));
}

void cmd_dissipation(Job& job) {
  const auto& s = job.sys();
  const EffectiveWell w = checked_well(job);
  const CycleResult c = compute_cycle(w, {s.tolerances.quadrature_rel_tol, 0.5});
  const auto& d = job.cfg.dissipation;
  const DissipationReport rep =
      dissipation_report(s, c.delta_tau, c.delta_x, job.cfg.N, d.deltaE_over_E, d.delta_u);
  job.results["N"] = job.cfg.N;
  job.results["gamma_eV"] = num(rep.gamma);
  job.results["tau0_hbar_per_eV"] = num(rep.tau0);
  job.results["lambda_dB_A"] = num(rep.lambda_dB);
  job.results["friction"] = {{"pass", rep.friction.pass},
                             {"value", num(rep.friction.margin)},
                             {"limit", num(rep.friction.limit)}};
  job.results["linewidth"] = {{"pass", rep.linewidth.pass},
                              {"deltaE_over_E", num(rep.linewidth.lhs)},
                              {"limit", num(rep.linewidth.rhs)},
                              {"R_max_A", num(rep.linewidth.R_max)}};
  job.results["inhomogeneity"] = {{"pass", rep.inhomogeneity.pass},
                                  {"delta_u_eV", num(rep.inhomogeneity.margin)},
                                  {"limit_eV", num(rep.inhomogeneity.limit)}};
  job.results["form_ratio"] = num(rep.form_ratio);
}

void cmd_validate(Job& job) {
  ordered_json arr = ordered_json::array();
  bool all = true;
  for (const auto& o : validate_example()) {
    all = all && o.pass;
    arr.push_back({{"id", o.id}, {"name", o.name}, {"pass", o.pass}, {"detail", o.detail}});
  }
  job.results["criteria"] = arr;
  if (!all) {
    job.exit_code = 1;
    job.message = "validate-example: one or more checks failed";
  }
}

void cmd_sweep(Job& job) {
  if (!job.opt.grid || job.opt.grid->steps < 1)
    throw ConfigError("sweep needs a nonempty field grid (--grid lo:hi:steps with steps >= 1)");
  const FieldGrid g = *job.opt.grid;
  std::vector<double> fields(static_cast<std::size_t>(g.steps));
  for (int i = 0; i < g.steps; ++i)
    fields[i] = g.steps == 1 ? g.lo : g.lo + (g.hi - g.lo) * i / (g.steps - 1);

  const auto& s = job.sys();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto rows = detail::parallel_map<std::vector<double>>(fields.size(), [&](std::size_t i) {
    std::vector<double> row{fields[i], 0.0, nan, nan, nan, nan, nan, nan};
    try {
      const SystemConfig si = s.with_field(fields[i]);
      const EffectiveWell w = analyze_well(job.p(), si);
      if (!w.valid) return row;
      const CycleResult c = compute_cycle(w, {si.tolerances.quadrature_rel_tol, 0.5});
      const double f = si.wkb_rate() - c.delta_A / c.delta_x;
      row = {fields[i], 1.0, w.delta_eta, c.delta_tau, c.delta_x, c.delta_A, f,
             f * si.barrier_length};
    } catch (const Error&) {
    }
    return row;
  });

  PlotTable t{"fig5_sweep",
              {"H [T]", "valid [1]", "delta_eta [A]", "delta_tau [hbar/eV]", "delta_x [A]",
               "delta_A [1]", "action_rate [1/A]", "A [1]"},
              {}};
  int valid = 0;
  for (const auto& r : rows) {
    valid += r[1] > 0.0;
    t.add_row(r);
  }
  job.results["points"] = g.steps;
  job.results["valid_points"] = valid;
  job.tables.push_back(std::move(t));
}

using Handler = void (*)(Job&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"well", cmd_well},           {"cycle", cmd_cycle},
      {"action", cmd_action},       {"resonance", cmd_resonance},
      {"harmonics", cmd_harmonics}, {"trajectory", cmd_trajectory},
      {"psi", cmd_psi},             {"dissipation", cmd_dissipation},
      {"validate-example", cmd_validate}, {"sweep", cmd_sweep}};
  return h;
}

ordered_json config_json(const ModelConfig& cfg) {
  const auto& p = cfg.potential;
  const auto& s = cfg.system;
  return {{"potential",
           {{"family", to_string(p.family())},
            {"u0_eV", p.u0()},
            {"a_angstrom", p.a()},
            {"lambda", p.lambda()}}},
          {"system",
           {{"mass_me", s.mass_me},
            {"E_eV", s.energy()},
            {"R_angstrom", s.barrier_length},
            {"H_tesla", s.field}}},
          {"dissipation",
           {{"deltaE_over_E", cfg.dissipation.deltaE_over_E},
            {"delta_u_eV", cfg.dissipation.delta_u}}},
          {"run", {{"N", cfg.N}}},
          {"text", format_config(cfg)},
          {"notes", cfg.notes}};
}

}  // namespace

const char* version_string() { return "0.1.0"; }

FieldGrid parse_grid(const std::string& text) {
  const auto bad = [&] {
    return ConfigError("grid '" + text + "' is not of the form lo:hi:steps");
  };
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) throw bad();
  FieldGrid g;
  try {
    std::size_t n1 = 0, n2 = 0, n3 = 0;
    const std::string a = text.substr(0, c1), b = text.substr(c1 + 1, c2 - c1 - 1),
                      c = text.substr(c2 + 1);
    g.lo = std::stod(a, &n1);
    g.hi = std::stod(b, &n2);
    const long steps = std::stol(c, &n3);
    if (n1 != a.size() || n2 != b.size() || n3 != c.size()) throw bad();
    if (steps < 0 || steps > 1000000) throw ConfigError("grid steps must be in [0, 1e6]");
    g.steps = static_cast<int>(steps);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !(g.lo > 0.0) || g.hi < g.lo)
    throw ConfigError("grid bounds must satisfy 0 < lo <= hi");
  return g;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, h] : handlers()) n.push_back(name);
    return n;
  }();
  return names;
}

RunOutput run_command(const std::string& command, const ModelConfig& cfg, const RunOptions& opt) {
  Job job;
  job.cfg = cfg;
  job.opt = opt;
  RunOutput out;
  Handler handler = nullptr;
  for (const auto& [name, h] : handlers())
    if (name == command) handler = h;

  try {
    if (!handler) throw ConfigError("unknown command '" + command + "'");
    if (opt.H) {
      job.cfg.system.field = *opt.H;
      job.cfg.system.validate();
    }
    if (opt.N) {
      if (*opt.N < 1) throw ConfigError("--N must be >= 1");
      job.cfg.N = *opt.N;
    }
    handler(job);
  } catch (const Error& e) {
    job.exit_code = static_cast<int>(e.code());
    job.message = e.what();
  } catch (const std::exception& e) {
    job.exit_code = static_cast<int>(ErrorCode::Failure);
    job.message = e.what();
  }

  ordered_json doc;
  doc["command"] = command;
  doc["status"] = job.exit_code == 0 ? "ok" : "error";
  doc["exit_code"] = job.exit_code;
  if (!job.message.empty()) doc["message"] = job.message;
  const auto& t = job.cfg.system.tolerances;
  doc["provenance"] = {{"tool", "eres"},
                       {"version", version_string()},
                       {"timestamp_utc", utc_timestamp()},
                       {"tolerances",
                        {{"quadrature_rel_tol", t.quadrature_rel_tol},
                         {"root_abs_tol", t.root_abs_tol},
                         {"ode_rel_tol", t.ode_rel_tol}}}};
  doc["config"] = config_json(job.cfg);
  doc["results"] = job.results;
  ordered_json names = ordered_json::array();
  for (const auto& tab : job.tables) names.push_back(tab.name + ".csv");
  doc["tables"] = names;

  out.exit_code = job.exit_code;
  out.message = job.message;
  out.summary = doc.dump(2) + "\n";
  out.tables = std::move(job.tables);

  if (opt.write_files) {
    try {
      for (const auto& tab : out.tables) write_table(tab, opt.out_dir);
      const std::string run = handler ? command : "invalid";
      out.summary_path = write_summary(run, out.summary, opt.out_dir);
    } catch (const std::exception& e) {
      if (out.exit_code == 0) out.exit_code = static_cast<int>(ErrorCode::Failure);
      out.message = e.what();
    }
  }
  return out;
}

}  // namespace eres
