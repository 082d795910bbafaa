#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

namespace morrey {

using Complex = std::complex<double>;

/// Point in R^n, n <= 3. Unused trailing coordinates are zero.
using Point = std::array<double, 3>;

inline constexpr int kMaxDims = 3;

inline double squared_norm(const Point& x, int n_dims) {
  double s = 0.0;
  for (int i = 0; i < n_dims; ++i) s += x[i] * x[i];
  return s;
}

inline double norm(const Point& x, int n_dims) { return std::sqrt(squared_norm(x, n_dims)); }

inline double dot(const Point& a, const Point& b, int n_dims) {
  double s = 0.0;
  for (int i = 0; i < n_dims; ++i) s += a[i] * b[i];
  return s;
}

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n_dims) {
  switch (n_dims) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: return std::pow(std::numbers::pi, n_dims / 2.0) / std::tgamma(n_dims / 2.0 + 1.0);
  }
}

/// Surface area of the unit sphere S^{n-1}.
inline double unit_sphere_area(int n_dims) { return n_dims * unit_ball_volume(n_dims); }

inline double ball_volume(int n_dims, double radius) {
  return unit_ball_volume(n_dims) * std::pow(radius, n_dims);
}

}  // namespace morrey
