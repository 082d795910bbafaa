#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <vector>

#include "morrey/error.hpp"
#include "morrey/types.hpp"

namespace morrey::quad {

struct Estimate {
  Complex value{0.0, 0.0};
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod nodes on [0, 1] (symmetric), with 7-point Gauss weights on the odd nodes.
inline constexpr std::array<double, 8> kXk = {0.991455371120812639, 0.949107912342758525, 0.864864423359769073,
                                              0.741531185599394440, 0.586087235467691130, 0.405845151377397167,
                                              0.207784955007898468, 0.000000000000000000};
inline constexpr std::array<double, 8> kWk = {0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
                                              0.140653259715525919, 0.169004726639267903, 0.190350578064785410,
                                              0.204432940075298892, 0.209482141084727828};
inline constexpr std::array<double, 4> kWg = {0.129484966168869693, 0.279705391489276668, 0.381830050505118945,
                                              0.417959183673469388};

struct Segment {
  double a, b;
  Complex value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Complex fc = f(c);
  Complex k = kWk[7] * fc;
  Complex g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXk[i];
    const Complex s = f(c - dx) + f(c + dx);
    k += kWk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b] for complex integrands.
/// Bisects the worst segment until the summed error estimate is below
/// abs_tol or max_intervals is reached.
template <typename F>
Estimate integrate(F f, double a, double b, double abs_tol, int max_intervals = 4000) {
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk15(f, a, b);
  double err = first.error;
  heap.push(first);
  int count = 1;
  while (err > abs_tol && count < max_intervals) {
    const auto worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    auto l = detail::gk15(f, worst.a, m);
    auto r = detail::gk15(f, m, worst.b);
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
    ++count;
  }
  // sum in interval order so the result does not depend on heap layout
  Complex sum(0.0);
  double esum = 0.0;
  std::vector<detail::Segment> segs;
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  for (const auto& s : segs) {
    sum += s.value;
    esum += s.error;
  }
  if (esum > abs_tol) throw QuadratureError("adaptive quadrature did not reach tolerance " + std::to_string(abs_tol));
  return {sum, esum, count};
}

}  // namespace morrey::quad
