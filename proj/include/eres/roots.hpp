#pragma once

// Derivative-free bracketing root finders.

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace eres {

// Bisection on a sign-changing bracket [lo, hi]. Stops when the bracket is
// narrower than abs_tol, when the midpoint no longer separates the ends in
// floating point, or on an exact zero.
template <class F>
double bisect(F&& f, double lo, double hi, double abs_tol, int max_iter = 400) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::abs(hi - lo) <= abs_tol || mid == lo || mid == hi) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Bisection in log-space for positive brackets: converges to a relative
// width rel_tol, the natural scale for magnetic fields spanning decades.
template <class F>
double bisect_log(F&& f, double lo, double hi, double rel_tol, int max_iter = 400) {
  const double root = bisect([&f](double s) { return f(std::exp(s)); }, std::log(lo),
                             std::log(hi), rel_tol, max_iter);
  return std::exp(root);
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

// First adjacent pair of finite samples with a sign change; samples with no
// value (nullopt) break adjacency.
inline std::optional<std::pair<std::size_t, std::size_t>> first_sign_change(
    std::span<const std::optional<double>> values) {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const auto& a = values[i];
    const auto& b = values[i + 1];
    if (!a || !b) continue;
    if (*a == 0.0) return std::pair{i, i};
    if ((*a > 0.0) != (*b > 0.0) || *b == 0.0) return std::pair{i, i + 1};
  }
  return std::nullopt;
}

}  // namespace eres
