#include <doctest.h>

#include <cmath>

#include "eres/errors.hpp"
#include "eres/potential.hpp"
#include "oracles.hpp"

using namespace eres;

namespace {
const BarrierPotential dh = BarrierPotential::double_harmonic(1.0, 50.0, 0.215);
const BarrierPotential pure(PotentialFamily::PureHarmonic, 1.0, 50.0);
const BarrierPotential quad(PotentialFamily::Quadratic, 1.0, 50.0);
const BarrierPotential qq(PotentialFamily::QuadraticQuartic, 1.0, 50.0);
}  // namespace

TEST_CASE("real-axis barrier values") {
  CHECK(dh.u(0.0) == 0.0);
  CHECK(dh.u(M_PI * 50.0) == doctest::Approx(2.43).epsilon(1e-14));
  CHECK(qq.u(50.0) == doctest::Approx(2.0).epsilon(1e-15));
  for (const auto* p : {&dh, &pure, &quad, &qq}) {
    CHECK(p->u(0.0) == 0.0);
    CHECK(p->u(-17.3) == p->u(17.3));
  }
}

TEST_CASE("continued barrier against extended-precision cosh") {
  CHECK(dh.u_imag(0.0) == 0.0);
  const double pure50 = static_cast<double>(1.0L - std::cosh(1.0L));
  CHECK(pure.u_imag(50.0) == doctest::Approx(pure50).epsilon(1e-14));
  CHECK(pure.u_imag(50.0) == doctest::Approx(-0.5431).epsilon(1e-4));
  CHECK(qq.u_imag(50.0) == doctest::Approx(0.0).epsilon(1e-15));
  for (double eta : {1e-3, 0.7, 12.0, 80.0, 300.0, 2000.0}) {
    const double ref = static_cast<double>(oracle::u_imag_dh(1, 50, 0.215L, eta));
    CHECK(dh.u_imag(eta) == doctest::Approx(ref).epsilon(1e-13));
    CHECK(dh.u_imag(-eta) == dh.u_imag(eta));
  }
}

TEST_CASE("continued barrier slope") {
  for (const auto* p : {&dh, &pure, &quad, &qq}) CHECK(p->du_imag(0.0) == 0.0);
  const double h = 1e-4;
  const double fd = (dh.u_imag(25.0 + h) - dh.u_imag(25.0 - h)) / (2 * h);
  CHECK(std::abs(dh.du_imag(25.0) - fd) <= 1e-6 * std::abs(fd));
  CHECK(quad.du_imag(10.0) == doctest::Approx(-0.008).epsilon(1e-14));
}

TEST_CASE("small-eta quotient matches the quadratic coefficient") {
  // u(i eta) ~ -u0 (1 - lambda) eta^2 / (2 a^2) near the origin.
  const double c0 = (1.0 - 0.215) / (2 * 50.0 * 50.0);
  CHECK(dh.neg_u_imag_over_eta2(1e-9) == doctest::Approx(c0).epsilon(1e-12));
  // Richardson on the raw quotient at eta and eta/2 recovers the same limit.
  const auto raw = [](double e) { return -dh.u_imag(e) / (e * e); };
  const double e = 0.5;
  const double rich = (4 * raw(e / 2) - raw(e)) / 3;
  CHECK(rich == doctest::Approx(c0).epsilon(1e-8));
  CHECK(dh.neg_u_imag_over_eta2(30.0) == doctest::Approx(raw(30.0)).epsilon(1e-13));
}

TEST_CASE("cosh overflow guard") {
  CHECK_THROWS_AS((void)dh.u_imag(800 * 50.0), RangeError);
  CHECK_NOTHROW((void)dh.u_imag(600 * 50.0));
}

TEST_CASE("cyclotron frequency") {
  CHECK(cyclotron_frequency(kCodata, 1.0, 10.0) == doctest::Approx(1.15767e-3).epsilon(1e-12));
  CHECK(cyclotron_frequency(kCodata, 1.0, 0.0) == 0.0);
  CHECK(cyclotron_frequency(kCodata, 2.0, 10.0) == doctest::Approx(5.78835e-4).epsilon(1e-12));
  CHECK(inertial_mass(kCodata, 1.0) ==
        doctest::Approx(static_cast<double>(oracle::mass(1))).epsilon(1e-15));
}

TEST_CASE("barrier parameter validation") {
  using PF = PotentialFamily;
  CHECK_THROWS_AS(BarrierPotential(PF::DoubleHarmonic, 0.0, 50, 0.2), ConfigError);
  CHECK_THROWS_AS(BarrierPotential(PF::DoubleHarmonic, 1.0, -1, 0.2), ConfigError);
  CHECK_THROWS_AS(BarrierPotential(PF::DoubleHarmonic, 1.0, 50, 1.5), ConfigError);
  CHECK_THROWS_AS(BarrierPotential(PF::DoubleHarmonic, 1.0, 50, 0.0), ConfigError);
  CHECK_NOTHROW(BarrierPotential(PF::Quadratic, 1.0, 50));
}

TEST_CASE("system config validation") {
  SystemConfig s;
  CHECK_NOTHROW(s.validate());
  auto bad = [](auto mutate) {
    SystemConfig c;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(bad([](SystemConfig& c) { c.energy_depth = 0; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SystemConfig& c) { c.barrier_length = -5; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SystemConfig& c) { c.field = -1; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SystemConfig& c) { c.mass_me = 0; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SystemConfig& c) { c.tolerances.ode_rel_tol = 1.0; }).validate(),
                  ConfigError);
  CHECK_NOTHROW(bad([](SystemConfig& c) { c.field = 0; }).validate());
}

TEST_CASE("derived rates") {
  SystemConfig s;
  CHECK(s.wkb_rate() == doctest::Approx(0.1024633444).epsilon(1e-9));
  CHECK(s.energy() == -0.01);
  // v0 = wc eta0 = sqrt(2|E|/m)
  CHECK(s.terminal_speed() ==
        doctest::Approx(std::sqrt(2 * 0.01 / s.mass())).epsilon(1e-15));
}

TEST_CASE("family names round trip") {
  for (auto f : {PotentialFamily::DoubleHarmonic, PotentialFamily::PureHarmonic,
                 PotentialFamily::Quadratic, PotentialFamily::QuadraticQuartic})
    CHECK(parse_family(to_string(f)) == f);
  CHECK_THROWS_AS(parse_family("cubic"), ConfigError);
}
