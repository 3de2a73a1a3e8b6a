#pragma once

// Independent reference computations for the tests. Everything here works
// from the raw formulas in long double and never calls the library numerics.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

constexpr long double kHbarC = 1973.269804L;
constexpr long double kRestEnergy = 510998.95L;
constexpr long double kCyclotronPerTesla = 1.15767e-4L;

inline long double mass(long double mass_me) {
  return mass_me * kRestEnergy / (kHbarC * kHbarC);
}

// Continued double-harmonic barrier: u0 (1 - cosh) (1 - lambda cosh), with
// 1 - cosh t = -2 sinh^2(t/2) so small eta keeps its digits.
inline long double u_imag_dh(long double u0, long double a, long double lambda, long double eta) {
  const long double s = std::sinh(eta / (2 * a));
  const long double one_minus_c = -2 * s * s;
  return u0 * one_minus_c * (1.0L - lambda + lambda * one_minus_c);
}

struct Example {
  long double u0 = 1, a = 50, lambda = 0.215L, depth = 0.01L, mass_me = 1, H = 10;

  long double m() const { return mass(mass_me); }
  long double wc() const { return kCyclotronPerTesla * H / mass_me; }
  long double eta0() const { return std::sqrt(2 * depth / m()) / wc(); }
  // E - v(eta) for v = u(i eta) - (m wc^2 / 2)(eta + eta0)^2. Since
  // m wc^2 eta0^2 / 2 = |E|, expanding the square cancels E exactly.
  long double gap(long double eta) const {
    const long double r = eta / eta0();
    return depth * (2 * r + r * r) - u_imag_dh(u0, a, lambda, eta);
  }
  // Turning point by plain bisection on a bracket found by stepping out.
  long double turning_point() const {
    long double lo = a * 1e-3L, hi = lo;
    while (gap(hi) > 0) {
      lo = hi;
      hi *= 1.5L;
    }
    for (int i = 0; i < 200 && hi - lo > 0; ++i) {
      const long double mid = 0.5L * (lo + hi);
      (gap(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5L * (lo + hi);
  }
};

struct Triple {
  double tau, x, A;
};

// The three cycle integrals by tanh-sinh on the raw integrands over
// z in (-1, 1), eta = d (1 + z) / 2. Near either end the complement zc
// (-1 - z on the left, 1 - z on the right) places eta without cancellation.
inline Triple cycle_tanh_sinh(const Example& ex, double tol = 1e-12) {
  const long double d = ex.turning_point();
  const long double m = ex.m(), w = ex.wc(), e0 = ex.eta0();
  boost::math::quadrature::tanh_sinh<long double> ts;
  const auto integral = [&](auto weight) {
    return ts.integrate(
        [&](long double z, long double zc) {
          long double eta = d * (1 + z) / 2;
          if (z < -0.5L) eta = -d * zc / 2;
          if (z > 0.5L) eta = d - d * zc / 2;
          const long double g = ex.gap(eta);
          if (!(g > 0)) return 0.0L;
          return weight(eta, g) * d / 2;
        },
        static_cast<long double>(tol));
  };
  const long double s2m = std::sqrt(2 * m);
  const long double tau = s2m * integral([](long double, long double g) { return 1 / std::sqrt(g); });
  const long double x = s2m * w *
                        integral([&](long double eta, long double g) { return (eta + e0) / std::sqrt(g); });
  const long double A = 4 * s2m * integral([](long double, long double g) { return std::sqrt(g); });
  return {static_cast<double>(tau), static_cast<double>(x), static_cast<double>(A)};
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace oracle
