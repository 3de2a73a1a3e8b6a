#include <doctest.h>

#include <cmath>

#include "eres/effective_well.hpp"
#include "eres/errors.hpp"
#include "oracles.hpp"

using namespace eres;

namespace {
const BarrierPotential dh = BarrierPotential::double_harmonic(1.0, 50.0, 0.215);
const SystemConfig cfg{};  // |E| = 0.01 eV, one electron mass, 10 T
}  // namespace

TEST_CASE("transverse offset and origin value") {
  CHECK(eta0_of(cfg) == doctest::Approx(337.2).epsilon(2e-4));
  CHECK(eta0_of(cfg) == doctest::Approx(static_cast<double>(oracle::Example{}.eta0())).epsilon(1e-13));
  CHECK(v_of_eta(dh, cfg, 0.0) == -0.01);
  CHECK_THROWS_AS((void)eta0_of(cfg.with_field(0.0)), ConfigError);
}

TEST_CASE("effective potential against the raw formula") {
  const oracle::Example ex;
  for (double eta : {1e-4, 0.5, 20.0, 60.0, 110.0, 140.0}) {
    const double ref = static_cast<double>(-ex.depth - ex.gap(eta));
    CHECK(v_of_eta(dh, cfg, eta) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("example well and its turning point") {
  const EffectiveWell w = find_turning_point(dh, cfg);
  CHECK(w.valid);
  CHECK(w.diagnosis.empty());
  CHECK(w.delta_eta == doctest::Approx(110.0).epsilon(0.02));
  const double ref = static_cast<double>(oracle::Example{}.turning_point());
  CHECK(std::abs(w.delta_eta - ref) <= 1e-9 * ref);
  CHECK(std::abs(w.v(w.delta_eta) - w.energy()) <= 1e-12);
  for (int i = 1; i < 500; ++i) CHECK(w.v(w.delta_eta * i / 500.0) < w.energy());
}

TEST_CASE("gap forms agree") {
  const EffectiveWell w = find_turning_point(dh, cfg);
  for (double eta : {1e-6, 1.0, 50.0, 100.0}) {
    CHECK(w.gap(eta) == doctest::Approx(w.energy() - w.v(eta)).epsilon(1e-10));
    CHECK(w.gap_over_eta(eta) * eta == doctest::Approx(w.gap(eta)).epsilon(1e-13));
    const double h = 1e-5 * std::max(1.0, eta);
    CHECK(w.gap_slope(eta) ==
          doctest::Approx((w.gap(eta + h) - w.gap(eta - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("linear coefficient at the origin") {
  // E - v ~ m wc^2 eta0 eta for small eta, the magnetic push away from zero.
  const EffectiveWell w = find_turning_point(dh, cfg);
  const double lin = w.mass() * w.omega_c() * w.omega_c() * w.eta0();
  CHECK(w.gap_over_eta(1e-8) == doctest::Approx(lin).epsilon(1e-4));
}

TEST_CASE("admissibility across families") {
  const BarrierPotential quad(PotentialFamily::Quadratic, 1.0, 50.0);
  const BarrierPotential pure(PotentialFamily::PureHarmonic, 1.0, 50.0);
  const BarrierPotential qq(PotentialFamily::QuadraticQuartic, 1.0, 50.0);
  CHECK_THROWS_AS(find_turning_point(quad, cfg), NoWellError);
  CHECK_THROWS_AS(find_turning_point(pure, cfg), NoWellError);
  CHECK_FALSE(analyze_well(quad, cfg).valid);
  CHECK_FALSE(analyze_well(pure, cfg).diagnosis.empty());
  const EffectiveWell w = find_turning_point(qq, cfg);
  CHECK(w.valid);
  CHECK(w.delta_eta > 0.0);
}

TEST_CASE("pure harmonic never returns to E") {
  const BarrierPotential pure(PotentialFamily::PureHarmonic, 1.0, 50.0);
  for (double H : {0.1, 1.0, 10.0, 100.0}) {
    const auto s = cfg.with_field(H);
    double prev = v_of_eta(pure, s, 1.0);
    for (int i = 2; i < 2000; ++i) {
      const double v = v_of_eta(pure, s, i * 1.0);
      CHECK(v < prev);
      CHECK(v < s.energy());
      prev = v;
    }
  }
}

TEST_CASE("double harmonic well forms for every lambda") {
  for (int k = 1; k <= 19; ++k) {
    const double lambda = 0.05 * k;
    CAPTURE(lambda);
    CHECK(analyze_well(BarrierPotential::double_harmonic(1.0, 50.0, lambda), cfg).valid);
  }
}

TEST_CASE("sampled effective potential") {
  const auto pts = sample_effective_potential(dh, cfg, 150.0, 31);
  REQUIRE(pts.size() == 31);
  CHECK(pts.front().first == 0.0);
  CHECK(pts.back().first == doctest::Approx(150.0));
  CHECK(pts.front().second == -0.01);
}
