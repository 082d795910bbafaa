#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "morrey/error.hpp"
#include "morrey/types.hpp"

namespace morrey {

namespace detail {

// Lanczos coefficients, g = 7, n = 9.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// sin(pi z) with the real part reduced to [-1, 1] first.
inline Complex sin_pi(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double xr = x - 2.0 * std::round(0.5 * x);
  const double py = std::numbers::pi * y;
  const double px = std::numbers::pi * xr;
  double s = std::sin(px), c = std::cos(px);
  if (xr == 0.0 || std::abs(xr) == 1.0) s = 0.0;
  if (std::abs(xr) == 0.5) c = 0.0;
  return {s * std::cosh(py), c * std::sinh(py)};
}

// log Gamma(z) for Re z >= 1/2.
inline Complex log_gamma_right(Complex z) {
  z -= 1.0;
  Complex a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

/// Gamma function on the complex plane. Lanczos approximation for
/// Re z >= 1/2, reflection formula otherwise.
inline Complex complex_gamma(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw PoleError("Gamma has a pole at " + std::to_string(z.real()));
  if (z.real() < 0.5) {
    // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    const Complex lg = detail::log_gamma_right(1.0 - z);
    return std::numbers::pi / (detail::sin_pi(z) * std::exp(lg));
  }
  return std::exp(detail::log_gamma_right(z));
}

/// C(u) in the kernel C(u) |x|^{-n-iu} of (-Delta)^{iu/2}.
struct KernelConstant {
  double u = 0.0;
  int n_dims = 1;
  Complex value{0.0, 0.0};
};

inline KernelConstant kernel_constant(double u, int n_dims) {
  if (n_dims < 1 || n_dims > kMaxDims) throw DomainError("kernel_constant dimension must be 1, 2 or 3");
  KernelConstant k{u, n_dims, {0.0, 0.0}};
  if (u == 0.0) return k;
  const Complex num = complex_gamma(Complex(0.5 * n_dims, 0.5 * u)) * std::polar(1.0, u * std::numbers::ln2);
  const Complex den = complex_gamma(Complex(0.0, -0.5 * u));
  k.value = std::pow(std::numbers::pi, -0.5 * n_dims) * num / den;
  return k;
}

/// gamma(alpha, n) such that convolution with gamma^{-1} |x|^{alpha-n} has
/// multiplier |xi|^{-alpha}.
inline double riesz_constant(double alpha, int n_dims) {
  if (!(alpha > 0.0) || !(alpha < n_dims))
    throw DomainError("riesz_constant needs 0 < alpha < n, got alpha = " + std::to_string(alpha));
  return std::pow(std::numbers::pi, 0.5 * n_dims) * std::pow(2.0, alpha) * std::tgamma(0.5 * alpha) /
         std::tgamma(0.5 * (n_dims - alpha));
}

}  // namespace morrey
