#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "eres/eres.h"

namespace {

struct Model {
  eres_model* m = nullptr;
  Model() {
    eres_params p;
    eres_params_example(&p);
    REQUIRE(eres_model_create(&p, &m) == ERES_OK);
  }
  ~Model() { eres_model_destroy(m); }
};

}  // namespace

TEST_CASE("example parameters round trip through a handle") {
  Model h;
  eres_params p;
  REQUIRE(eres_model_params(h.m, &p) == ERES_OK);
  CHECK(p.family == ERES_DOUBLE_HARMONIC);
  CHECK(p.u0_eV == 1.0);
  CHECK(p.lambda == 0.215);
  CHECK(p.E_eV == -0.01);
  CHECK(p.H_tesla == 10.0);
  CHECK(std::strlen(eres_version()) > 0);
}

TEST_CASE("invalid parameters") {
  eres_params p;
  eres_params_example(&p);
  p.lambda = 1.5;
  eres_model* m = nullptr;
  CHECK(eres_model_create(&p, &m) == ERES_CONFIG);
  CHECK(m == nullptr);
  CHECK(std::string(eres_last_error()).find("lambda") != std::string::npos);
  p.lambda = 0.215;
  p.family = static_cast<eres_family>(42);
  CHECK(eres_model_create(&p, &m) == ERES_CONFIG);
  CHECK(eres_model_create(nullptr, &m) == ERES_CONFIG);
  CHECK(eres_well(nullptr, nullptr) == ERES_CONFIG);
}

TEST_CASE("well, cycle and action") {
  Model h;
  eres_well_info w;
  REQUIRE(eres_well(h.m, &w) == ERES_OK);
  CHECK(w.valid == 1);
  CHECK(w.eta0 == doctest::Approx(337.2).epsilon(2e-4));
  CHECK(w.hbar_omega_c == doctest::Approx(1.15767e-3));

  eres_cycle_info c;
  REQUIRE(eres_cycle(h.m, &c) == ERES_OK);
  CHECK(c.delta_eta == doctest::Approx(w.delta_eta));
  CHECK(c.delta_x == doctest::Approx(125.63).epsilon(1e-4));

  eres_action_info a;
  REQUIRE(eres_action(h.m, 3, &a) == ERES_OK);
  CHECK(a.A == doctest::Approx(a.A_wkb - 3 * c.delta_A));
  CHECK(eres_action(h.m, 0, &a) == ERES_CONFIG);
}

TEST_CASE("no well maps to its status") {
  eres_params p;
  eres_params_example(&p);
  p.family = ERES_QUADRATIC;
  eres_model* m = nullptr;
  REQUIRE(eres_model_create(&p, &m) == ERES_OK);
  eres_well_info w;
  REQUIRE(eres_well(m, &w) == ERES_OK);
  CHECK(w.valid == 0);
  eres_cycle_info c;
  CHECK(eres_cycle(m, &c) == ERES_NO_WELL);
  eres_model_destroy(m);
}

TEST_CASE("resonance statuses") {
  Model h;
  eres_resonance_info r;
  CHECK(eres_resonance(h.m, 0.1, 0.2, 16, &r) == ERES_NO_BRACKET);
  REQUIRE(eres_resonance(h.m, 1e-35, 100.0, 64, &r) == ERES_OK);
  CHECK(std::abs(r.residual) <= 1e-12);
  CHECK(std::abs(r.cycle.action_rate) <= 1e-12);
}

TEST_CASE("trajectory handle") {
  Model h;
  eres_trajectory* t = nullptr;
  REQUIRE(eres_trajectory_create(h.m, 3, 0, &t) == ERES_OK);
  const size_t n = eres_trajectory_size(t);
  REQUIRE(n > 100);
  eres_state first, last;
  REQUIRE(eres_trajectory_state(t, 0, &first) == ERES_OK);
  REQUIRE(eres_trajectory_state(t, n - 1, &last) == ERES_OK);
  CHECK(eres_trajectory_state(t, n, &last) == ERES_CONFIG);
  eres_trajectory_info info;
  REQUIRE(eres_trajectory_summary(t, &info) == ERES_OK);
  CHECK(info.N_cycles == 3);
  CHECK(std::abs(last.x - first.x) == doctest::Approx(3 * info.measured_delta_x).epsilon(1e-9));
  eres_action_info a;
  REQUIRE(eres_action(h.m, 3, &a) == ERES_OK);
  CHECK(std::abs(info.action_direct - a.A) <= 1e-9 * a.A_wkb);
  eres_trajectory_destroy(t);
}

TEST_CASE("field changes through the handle") {
  Model h;
  CHECK(eres_model_set_field(h.m, -2.0) == ERES_CONFIG);
  REQUIRE(eres_model_set_field(h.m, 8.0) == ERES_OK);
  eres_cycle_info c;
  REQUIRE(eres_cycle(h.m, &c) == ERES_OK);
  CHECK(c.delta_x == doctest::Approx(127.826).epsilon(1e-5));
}

TEST_CASE("dissipation through the handle") {
  Model h;
  eres_dissipation_info d;
  REQUIRE(eres_dissipation(h.m, 3, 0.1, 0.05, &d) == ERES_OK);
  CHECK(d.lambda_dB == doctest::Approx(27.604).epsilon(1e-4));
  CHECK(d.inhomogeneity_limit == 0.04);
  CHECK(d.inhomogeneity_ok == 0);
}

TEST_CASE("run entry point") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "eres_test_capi_run";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path ini = dir / "example.ini";
  std::ofstream(ini) << "[potential]\nfamily = double_harmonic\nu0_eV = 1\na_angstrom = 50\n"
                        "lambda = 0.215\n[system]\nE_eV = -0.01\nR_angstrom = 1000\nH_tesla = 10\n";
  const std::string out = (dir / "out").string();
  eres_run_options opt{};
  opt.out_dir = out.c_str();
  opt.quiet = 1;
  CHECK(eres_run("well", ini.string().c_str(), &opt) == 0);
  CHECK(fs::exists(dir / "out" / "fig2.csv"));
  CHECK(eres_run("psi", ini.string().c_str(), &opt) == ERES_BEYOND_ONE_INSTANTON);
  opt.grid = "1:2:0";
  CHECK(eres_run("sweep", ini.string().c_str(), &opt) == ERES_CONFIG);
  opt.grid = "1:2:x";
  CHECK(eres_run("sweep", ini.string().c_str(), &opt) == ERES_CONFIG);
  CHECK(eres_run("well", (dir / "missing.ini").string().c_str(), &opt) == ERES_CONFIG);
  CHECK(eres_run(nullptr, ini.string().c_str(), &opt) == ERES_CONFIG);
}
