#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eres/action_resonance.hpp"
#include "eres/effective_well.hpp"
#include "eres/errors.hpp"
#include "oracles.hpp"

using namespace eres;

namespace {
const BarrierPotential dh = BarrierPotential::double_harmonic(1.0, 50.0, 0.215);
const SystemConfig cfg{};
}  // namespace

TEST_CASE("action algebra") {
  const CycleResult c = compute_cycle(dh, cfg);
  const ActionResult zero = action_at(cfg, c, 0);
  CHECK(zero.A == 0.0);
  CHECK(zero.R_used == 0.0);
  for (int N : {1, 3, 8}) {
    const ActionResult a = action_at(cfg, c, N);
    CHECK(a.R_used == N * c.delta_x);
    CHECK(a.A_wkb == doctest::Approx(2 * std::sqrt(2 * cfg.mass() * 0.01) * a.R_used).epsilon(1e-14));
    CHECK(a.A == a.A_wkb - N * c.delta_A);
    CHECK(a.A_per_length_form == doctest::Approx(a.A).epsilon(1e-12));
  }
}

TEST_CASE("vanishing cycle action leaves the WKB value") {
  CycleResult c;
  c.delta_x = 100.0;
  c.delta_A = 0.0;
  const ActionResult a = action_at(cfg, c, 4);
  CHECK(a.A == a.A_wkb);
}

TEST_CASE("no sign change on a narrow weak-field range") {
  CHECK_THROWS_AS(find_resonance_field(dh, cfg, 0.1, 0.2), NoBracketError);
  try {
    (void)find_resonance_field(dh, cfg, 0.1, 0.2);
  } catch (const ResonanceNoBracketError& e) {
    CHECK(e.scan.size() == 64);
    CHECK(std::all_of(e.scan.begin(), e.scan.end(), [](const auto& s) { return s.second && *s.second < 0; }));
  }
}

TEST_CASE("resonance root on a wide range") {
  ResonanceOptions opt;
  opt.harmonics = {1, 2, 3};
  const ResonanceResult r = find_resonance_field(dh, cfg, 1e-35, 100.0, opt);
  const double k = cfg.wkb_rate();
  CHECK(r.H_R > 0.0);
  CHECK(std::abs(k - r.cycle_at_resonance.delta_A / r.cycle_at_resonance.delta_x) <= 1e-12);
  CHECK(std::abs(r.residual) <= 1e-12);
  // Per-length action vanishes at the root for any N.
  for (int N : {1, 3, 5}) {
    const ActionResult a = action_at(cfg.with_field(r.H_R), r.cycle_at_resonance, N);
    CHECK(std::abs(a.A) <= 1e-9 * a.A_wkb);
  }
  // The one-instanton curve only covers fields below H_R and A > 0 there.
  REQUIRE_FALSE(r.action_curve.empty());
  for (const auto& p : r.action_curve) {
    CHECK(p.H <= r.H_R);
    CHECK(p.A >= -1e-9);
  }
  CHECK(r.h_list.size() == 3);
  CHECK(r.scan.size() == 64);
  CHECK(r.peak_width == doctest::Approx(peak_width_estimate(r.H_R, cfg)));
}

TEST_CASE("commensurate field by construction") {
  SystemConfig s = cfg;
  s.barrier_length = 3 * compute_cycle(dh, cfg).delta_x;
  const auto hs = find_commensurate_fields(dh, s, {3}, 1.0, 30.0);
  REQUIRE(hs.size() == 1);
  REQUIRE(hs[0].h.has_value());
  CHECK(*hs[0].h == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("commensurate field against a dense table") {
  SystemConfig s = cfg;
  s.barrier_length = 360.0;
  const auto hs = find_commensurate_fields(dh, s, {1}, 1e-30, 100.0);
  REQUIRE(hs[0].h.has_value());
  const double h1 = *hs[0].h;
  CHECK(std::abs(compute_cycle(dh, cfg.with_field(h1)).delta_x - 360.0) <= 1e-8);
  // Dense log table oracle: Delta x crosses 360 between neighbouring nodes.
  const int n = 400;
  std::optional<std::pair<double, double>> bracket;
  double prev_H = 1e-30, prev = compute_cycle(dh, cfg.with_field(prev_H)).delta_x - 360.0;
  for (int i = 1; i <= n && !bracket; ++i) {
    const double H = 1e-30 * std::pow(100.0 / 1e-30, double(i) / n);
    const double g = compute_cycle(dh, cfg.with_field(H)).delta_x - 360.0;
    if ((g > 0) != (prev > 0)) bracket = std::pair{prev_H, H};
    prev_H = H;
    prev = g;
  }
  REQUIRE(bracket.has_value());
  CHECK(h1 >= bracket->first);
  CHECK(h1 <= bracket->second);
}

TEST_CASE("commensurate fields are ordered and missing ones say why") {
  SystemConfig s = cfg;
  s.barrier_length = 1000.0;
  const auto hs = find_commensurate_fields(dh, s, {3, 4, 5, 6}, 1e-30, 100.0);
  std::vector<double> found;
  for (const auto& h : hs) {
    if (h.h) {
      CHECK(std::abs(h.N * compute_cycle(dh, s.with_field(*h.h)).delta_x - 1000.0) <= 1e-7);
      found.push_back(*h.h);
    } else {
      CHECK_FALSE(h.diagnosis.empty());
    }
  }
  REQUIRE(found.size() >= 2);
  // More cycles in the same R means shorter hops, reached at stronger fields.
  CHECK(std::is_sorted(found.begin(), found.end()));
  const auto bad = find_commensurate_fields(dh, s, {0}, 1.0, 30.0);
  CHECK_FALSE(bad[0].h.has_value());
}

TEST_CASE("peak width") {
  CHECK(peak_width_estimate(10.0, cfg) == doctest::Approx(10.0 / 102.4633444).epsilon(1e-8));
  SystemConfig twice = cfg;
  twice.barrier_length *= 2;
  CHECK(peak_width_estimate(10.0, twice) == doctest::Approx(peak_width_estimate(10.0, cfg) / 2));
  // A_wkb = 100 at H_R = 10 T gives 0.1 T.
  SystemConfig hundred = cfg;
  hundred.barrier_length = 100.0 / cfg.wkb_rate();
  CHECK(peak_width_estimate(10.0, hundred) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("consecutive commensurate fields telescope when cycles do not depend on H") {
  CycleResult c;
  c.delta_x = 250.0;
  c.delta_A = 17.0;
  const HarmonicStepDiagnostic d = harmonic_step_from_cycles(cfg, 4, 3.0, c, 5.0, c);
  CHECK(d.discrepancy == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(d.discrepancy) <= 1e-12);
}

TEST_CASE("consecutive relation diagnostic on the example") {
  SystemConfig s = cfg;
  s.barrier_length = 1000.0;
  const HarmonicStepDiagnostic d = harmonic_step_diagnostic(dh, s, 3, 1e-30, 100.0);
  CHECK(d.h_prev < d.h);
  CHECK(std::abs(d.discrepancy) / d.delta_A <= 0.2);
  CHECK_THROWS_AS(harmonic_step_diagnostic(dh, s, 1, 1e-30, 100.0), ConfigError);
  // Far too short a range: h_{N-1} cannot be found.
  CHECK_THROWS_AS(harmonic_step_diagnostic(dh, s, 5, 0.1, 0.2), NoBracketError);
}
