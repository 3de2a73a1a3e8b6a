#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace eres::detail {

struct QuadratureValue {
  double value = 0.0;
  double abs_error = 0.0;
};

// Globally adaptive Gauss-Kronrod (21-point panels): the panel with the
// largest error estimate is bisected until the summed estimate drops below
// rel_tol * |I| or max_panels is reached. Sharp peaks get resolved by deep
// local bisection without the tree blow-up of depth-first schemes.
template <class F>
QuadratureValue integrate(F&& f, double a, double b, double rel_tol, int max_panels = 4000) {
  if (a == b) return {};
  using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
  struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  auto eval = [&f](double lo, double hi) {
    double err = 0.0;
    const double v = Rule::integrate(f, lo, hi, 0, 0.0, &err);
    // Boost reports the single-panel estimate on the reference interval
    // [-1, 1]; rescale to [lo, hi].
    return Panel{lo, hi, v, err * 0.5 * (hi - lo)};
  };

  std::priority_queue<Panel> panels;
  Panel first = eval(a, b);
  double total = first.value, total_err = first.error;
  panels.push(first);
  for (int n = 1; n < max_panels; ++n) {
    if (total_err <= rel_tol * std::abs(total)) break;
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) break;
    panels.pop();
    const Panel l = eval(worst.lo, mid), r = eval(mid, worst.hi);
    total += l.value + r.value - worst.value;
    total_err += l.error + r.error - worst.error;
    panels.push(l);
    panels.push(r);
  }
  // Re-sum to shed the running-update rounding.
  total = 0.0;
  total_err = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  for (const auto& p : all) {
    total += p.value;
    total_err += p.error;
  }
  return {total, total_err};
}

}  // namespace eres::detail
