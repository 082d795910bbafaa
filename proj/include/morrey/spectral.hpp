#pragma once

// Complex powers (-Delta)^{z/2} realized as the Fourier multiplier |xi|^z on
// the periodic lattice, and a frequency-space quadrature oracle that
// evaluates the same operator on Gaussian mixtures without any grid.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "morrey/error.hpp"
#include "morrey/fft.hpp"
#include "morrey/grid.hpp"
#include "morrey/quadrature.hpp"
#include "morrey/testfns.hpp"
#include "morrey/types.hpp"

namespace morrey {

/// F(xi_k) = h^n sum_j f(x_j) exp(-i x_j . xi_k).
inline SpectrumFunction forward_transform(const GridFunction& f) {
  const auto& s = f.spec();
  auto out = fft::dft(f.values(), s.n_dims, s.points_per_axis, fft::Direction::forward);
  const double scale = s.cell_volume();
  // x_j = -L/2 + j h contributes exp(i pi k) = (-1)^k
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto idx = s.unravel(k);
    const int parity = (idx[0] + idx[1] + idx[2]) & 1;
    out[k] *= parity ? -scale : scale;
  }
  return SpectrumFunction(s, std::move(out));
}

/// f(x_j) = (2 pi)^{-n} (2 pi / L)^n sum_k F(xi_k) exp(i x_j . xi_k).
inline GridFunction inverse_transform(const SpectrumFunction& F) {
  const auto& s = F.spec();
  std::vector<Complex> in(F.values());
  const double scale = std::pow(s.extent, -s.n_dims);
  for (std::size_t k = 0; k < in.size(); ++k) {
    const auto idx = s.unravel(k);
    const int parity = (idx[0] + idx[1] + idx[2]) & 1;
    in[k] *= parity ? -scale : scale;
  }
  return GridFunction(s, fft::dft(in, s.n_dims, s.points_per_axis, fft::Direction::backward));
}

enum class ZeroModeRule {
  /// |0|^z = 1 when Re z = 0, otherwise 0.
  zero,
  /// As `zero`, but refuse negative powers of spectra whose zero mode is not negligible.
  skip_error,
};

struct MultiplierPolicy {
  ZeroModeRule zero_mode_rule = ZeroModeRule::zero;

  std::string description() const {
    return zero_mode_rule == ZeroModeRule::zero
               ? "|0|^z = 1 for Re z = 0 (identity and unimodular powers), 0 otherwise"
               : "|0|^z = 1 for Re z = 0, 0 for Re z > 0, error for Re z < 0 with nonzero mean";
  }
};

inline const char* to_string(ZeroModeRule r) { return r == ZeroModeRule::zero ? "zero" : "skip-error"; }

/// Value the multiplier takes at xi = 0.
inline Complex zero_mode_value(Complex z) { return z.real() == 0.0 ? Complex(1.0) : Complex(0.0); }

/// |r|^z for r > 0.
inline Complex power_symbol(double r, Complex z) {
  if (z.imag() == 0.0) return std::pow(r, z.real());
  return std::polar(std::pow(r, z.real()), z.imag() * std::log(r));
}

namespace detail {

inline void check_power_admissible(Complex z, int n_dims) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("power must be finite");
  if (z.real() < 0.0 && -z.real() >= n_dims)
    throw DomainError("negative power outside the Riesz range: -Re z = " + std::to_string(-z.real()) +
                      " >= n = " + std::to_string(n_dims));
}

inline void check_zero_mode(const SpectrumFunction& F, Complex z, const MultiplierPolicy& policy) {
  if (policy.zero_mode_rule != ZeroModeRule::skip_error || !(z.real() < 0.0)) return;
  double peak = 0.0;
  for (const auto& c : F.values()) peak = std::max(peak, std::abs(c));
  if (std::abs(F[0]) > 1e-12 * peak)
    throw DomainError("negative power applied to a spectrum with nonzero mean under the skip-error policy");
}

}  // namespace detail

/// Multiplies every coefficient by |xi_k|^z with the policy at xi = 0.
inline SpectrumFunction apply_power(const SpectrumFunction& F, Complex z, const MultiplierPolicy& policy = {}) {
  const auto& s = F.spec();
  detail::check_power_admissible(z, s.n_dims);
  detail::check_zero_mode(F, z, policy);
  std::vector<Complex> v(F.values());
  v[0] *= zero_mode_value(z);
  for (std::size_t k = 1; k < v.size(); ++k) v[k] *= power_symbol(norm(s.frequency_point(k), s.n_dims), z);
  return SpectrumFunction(s, std::move(v));
}

/// (-Delta)^{z/2} f on the lattice. z = 0 returns an exact copy.
inline GridFunction laplacian_power(const GridFunction& f, Complex z, const MultiplierPolicy& policy = {}) {
  detail::check_power_admissible(z, f.spec().n_dims);
  if (z == Complex(0.0)) return f;
  try {
    return inverse_transform(apply_power(forward_transform(f), z, policy));
  } catch (const NonFiniteError&) {
    throw NonFiniteError("laplacian_power produced NaN or Inf for z = (" + std::to_string(z.real()) + ", " +
                         std::to_string(z.imag()) + ")");
  }
}

enum class Composition {
  /// Two transforms: laplacian_power(laplacian_power(f, z1), z2).
  sequential,
  /// One multiplier |xi|^{z1} |xi|^{z2}, zero mode taken from z1 + z2.
  fused,
};

inline GridFunction compose_powers(const GridFunction& f, Complex z1, Complex z2,
                                   Composition mode = Composition::sequential, const MultiplierPolicy& policy = {}) {
  const int n = f.spec().n_dims;
  detail::check_power_admissible(z1, n);
  detail::check_power_admissible(z2, n);
  if (mode == Composition::sequential) return laplacian_power(laplacian_power(f, z1, policy), z2, policy);
  const auto F = forward_transform(f);
  const auto& s = F.spec();
  std::vector<Complex> v(F.values());
  v[0] *= zero_mode_value(z1 + z2);
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double r = norm(s.frequency_point(k), n);
    v[k] *= power_symbol(r, z1) * power_symbol(r, z2);
  }
  return inverse_transform(SpectrumFunction(s, std::move(v)));
}

namespace detail {

// Integral of exp(i rho omega . y) over the unit sphere, as a function of t = rho |y|.
inline double angular_average(int n_dims, double t) {
  switch (n_dims) {
    case 1: return 2.0 * std::cos(t);
    case 2: return 2.0 * std::numbers::pi * std::cyl_bessel_j(0.0, t);
    default: return t == 0.0 ? 4.0 * std::numbers::pi : 4.0 * std::numbers::pi * std::sin(t) / t;
  }
}

// Upper bound on int_R^inf rho^a exp(-b rho^2) d rho, valid once 2 b R^2 > a.
inline double gaussian_moment_tail(double a, double b, double R) {
  const double denom = 2.0 * b * R - a / R;
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return std::pow(R, a) * std::exp(-b * R * R) / denom;
}

}  // namespace detail

/// (2 pi)^{-n} int |xi|^z F(xi) exp(i x . xi) d xi by radial quadrature, for
/// functions whose transform is a Gaussian mixture. The radial cutoff is
/// set so the discarded tail is below 1e-9 of the absolute integral.
inline std::vector<Complex> quadrature_oracle(const AnalyticFunction& f, Complex z, const std::vector<Point>& points,
                                              int n_dims) {
  if (!f.has_transform())
    throw DomainError(std::string("quadrature_oracle needs a closed-form transform; got non-analytic input of kind '") +
                      to_string(f.kind()) + "'");
  if (n_dims < 1 || n_dims > kMaxDims) throw DomainError("quadrature_oracle dimension must be 1, 2 or 3");
  if (!(z.real() > -n_dims)) throw DomainError("quadrature_oracle needs Re z > -n");
  const auto atoms = f.gaussian_atoms();
  const double a = z.real() + n_dims - 1.0;  // radial power, before the Jacobian of the log map
  const double sphere = unit_sphere_area(n_dims);
  const double inv2pi_n = std::pow(2.0 * std::numbers::pi, -n_dims);

  std::vector<Complex> out(points.size(), Complex(0.0));
  for (const auto& atom : atoms) {
    const double s2 = atom.sigma * atom.sigma;
    const double b = 0.5 * s2;
    const Complex pref = atom.amplitude * std::pow(2.0 * std::numbers::pi * s2, 0.5 * n_dims) * inv2pi_n;
    // absolute scale: int_0^inf rho^a exp(-b rho^2) d rho times the sphere area
    const double moment = 0.5 * std::pow(b, -(a + 1.0) / 2.0) * std::tgamma((a + 1.0) / 2.0);
    const double scale = std::abs(pref) * sphere * moment;
    double R = 1.0 / atom.sigma;
    while (std::abs(pref) * sphere * detail::gaussian_moment_tail(a, b, R) > 1e-9 * 1e-3 * scale) {
      R *= 1.25;
      if (R * atom.sigma > 1e4) throw QuadratureError("quadrature_oracle: tail bound not achievable");
    }
    const double rho1 = 0.05 / atom.sigma;
    // the log map rho = rho1 e^t makes the integrand rho^{a+1}, decaying as t -> -inf
    const double t_min = std::log(1e-18) / (a + 1.0);
    const double tol = 1e-13 * scale;

    for (std::size_t ip = 0; ip < points.size(); ++ip) {
      Point d{};
      for (int i = 0; i < n_dims; ++i) d[i] = points[ip][i] - atom.center[i];
      const double dist = norm(d, n_dims);
      auto radial = [&](double rho) -> Complex {
        return power_symbol(rho, z) * std::pow(rho, n_dims - 1.0) * std::exp(-b * rho * rho) *
               detail::angular_average(n_dims, rho * dist);
      };
      auto near = [&](double t) -> Complex {
        const double rho = rho1 * std::exp(t);
        return radial(rho) * rho;
      };
      const auto lo = quad::integrate(near, t_min, 0.0, 0.5 * tol);
      const auto hi = quad::integrate(radial, rho1, R, 0.5 * tol);
      out[ip] += pref * (lo.value + hi.value);
    }
  }
  return out;
}

}  // namespace morrey
