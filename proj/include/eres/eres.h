#ifndef ERES_ERES_H
#define ERES_ERES_H

/*
 * C interface to the eres library.
 *
 * Units: eV, Angstrom, Tesla, electron masses; imaginary time in hbar/eV.
 * Every call returns an eres_status. On failure the message is available
 * from eres_last_error() until the next failing call on the same thread.
 * Output structs are written only on success.
 */

#include <stddef.h>

#if defined(_WIN32)
#define ERES_API __declspec(dllexport)
#else
#define ERES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eres_status {
  ERES_OK = 0,
  ERES_FAILURE = 1,
  ERES_CONFIG = 2,
  ERES_NO_WELL = 3,
  ERES_NO_BRACKET = 4,
  ERES_NUMERICAL = 5,
  ERES_BEYOND_ONE_INSTANTON = 6
} eres_status;

typedef enum eres_family {
  ERES_DOUBLE_HARMONIC = 0,
  ERES_PURE_HARMONIC = 1,
  ERES_QUADRATIC = 2,
  ERES_QUADRATIC_QUARTIC = 3
} eres_family;

typedef struct eres_params {
  eres_family family;
  double u0_eV;
  double a_angstrom;
  double lambda; /* double harmonic only */
  double mass_me;
  double E_eV; /* sign ignored */
  double R_angstrom;
  double H_tesla;
  double quadrature_rel_tol;
  double root_abs_tol;
  double ode_rel_tol;
} eres_params;

typedef struct eres_model eres_model;
typedef struct eres_trajectory eres_trajectory;

typedef struct eres_well_info {
  int valid;
  double eta0;
  double delta_eta; /* 0 when no well */
  double hbar_omega_c;
} eres_well_info;

typedef struct eres_cycle_info {
  double delta_eta;
  double delta_tau;
  double delta_x;
  double delta_A;
  double action_rate; /* 2 sqrt(2m|E|) - delta_A/delta_x, 1/Angstrom */
} eres_cycle_info;

typedef struct eres_action_info {
  int N;
  double R_used;
  double A;
  double A_wkb;
} eres_action_info;

typedef struct eres_resonance_info {
  double H_R;
  double residual;
  double peak_width;
  double delta_eta;
  eres_cycle_info cycle;
} eres_resonance_info;

typedef struct eres_state {
  double tau;
  double eta;
  double eta_dot;
  double x;
} eres_state;

typedef struct eres_trajectory_info {
  int N_cycles;
  double measured_delta_tau;
  double measured_delta_x;
  double max_energy_drift;
  double max_joint_eta;
  double max_joint_eta_dot;
  double x_dot_start;
  double x_dot_end;
  double action_direct;
} eres_trajectory_info;

typedef struct eres_dissipation_info {
  double gamma;
  double tau0;
  double lambda_dB;
  int friction_ok;
  int linewidth_ok;
  int inhomogeneity_ok;
  double R_max;
  double inhomogeneity_limit;
} eres_dissipation_info;

typedef struct eres_run_options {
  const char* out_dir;   /* NULL: current directory */
  int has_H;
  double H_tesla;
  int H_at_resonance;    /* psi only */
  int has_N;
  int N;
  const char* grid;      /* "lo:hi:steps" or NULL */
  int quiet;             /* nonzero: no diagnostics on stderr */
} eres_run_options;

ERES_API const char* eres_version(void);
ERES_API const char* eres_last_error(void);

ERES_API void eres_params_example(eres_params* out);

ERES_API eres_status eres_model_create(const eres_params* params, eres_model** out);
ERES_API eres_status eres_model_load(const char* config_path, eres_model** out);
ERES_API void eres_model_destroy(eres_model* model);
ERES_API eres_status eres_model_params(const eres_model* model, eres_params* out);
ERES_API eres_status eres_model_set_field(eres_model* model, double H_tesla);

ERES_API eres_status eres_well(const eres_model* model, eres_well_info* out);
ERES_API eres_status eres_cycle(const eres_model* model, eres_cycle_info* out);
ERES_API eres_status eres_action(const eres_model* model, int N, eres_action_info* out);
ERES_API eres_status eres_resonance(const eres_model* model, double H_lo, double H_hi,
                                    int scan_points, eres_resonance_info* out);
ERES_API eres_status eres_dissipation(const eres_model* model, int N, double deltaE_over_E,
                                      double delta_u_eV, eres_dissipation_info* out);

ERES_API eres_status eres_trajectory_create(const eres_model* model, int N, int continuous,
                                            eres_trajectory** out);
ERES_API void eres_trajectory_destroy(eres_trajectory* traj);
ERES_API size_t eres_trajectory_size(const eres_trajectory* traj);
ERES_API eres_status eres_trajectory_state(const eres_trajectory* traj, size_t i,
                                           eres_state* out);
ERES_API eres_status eres_trajectory_summary(const eres_trajectory* traj,
                                             eres_trajectory_info* out);

/* Runs one CLI command against a config file. Returns the exit code
   (0 ok, 2 config, 3 no well, 4 no bracket, 5 numerical, 6 above H_R,
   1 other failure or failed validation). */
ERES_API int eres_run(const char* command, const char* config_path,
                      const eres_run_options* options);

#ifdef __cplusplus
}
#endif

#endif
