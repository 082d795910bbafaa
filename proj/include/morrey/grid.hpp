#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "morrey/error.hpp"
#include "morrey/testfns.hpp"
#include "morrey/types.hpp"

namespace morrey {

/// Uniform lattice on the periodic box [-L/2, L/2)^n with N points per axis.
/// Samples are stored row-major with the last axis fastest.
struct GridSpec {
  int n_dims = 1;
  double extent = 0.0;
  int points_per_axis = 0;
  double spacing = 0.0;

  std::size_t size() const {
    std::size_t s = 1;
    for (int i = 0; i < n_dims; ++i) s *= static_cast<std::size_t>(points_per_axis);
    return s;
  }

  /// Coordinate of lattice index j along any axis.
  double coordinate(int j) const { return -0.5 * extent + j * spacing; }

  /// Signed mode number of FFT-ordered index k, in [-N/2, N/2).
  int signed_mode(int k) const { return k < points_per_axis / 2 ? k : k - points_per_axis; }

  /// Angular frequency 2 pi k / L of FFT-ordered index k.
  double frequency(int k) const { return 2.0 * std::numbers::pi * signed_mode(k) / extent; }

  double cell_volume() const { return std::pow(spacing, n_dims); }

  std::array<int, 3> unravel(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int i = n_dims - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(flat % static_cast<std::size_t>(points_per_axis));
      flat /= static_cast<std::size_t>(points_per_axis);
    }
    return idx;
  }

  std::size_t ravel(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int i = 0; i < n_dims; ++i) flat = flat * points_per_axis + static_cast<std::size_t>(idx[i]);
    return flat;
  }

  Point point(std::size_t flat) const {
    const auto idx = unravel(flat);
    Point x{};
    for (int i = 0; i < n_dims; ++i) x[i] = coordinate(idx[i]);
    return x;
  }

  Point frequency_point(std::size_t flat) const {
    const auto idx = unravel(flat);
    Point xi{};
    for (int i = 0; i < n_dims; ++i) xi[i] = frequency(idx[i]);
    return xi;
  }

  /// Same box center, half the spacing, twice the extent.
  GridSpec refined() const;

  bool operator==(const GridSpec& o) const {
    return n_dims == o.n_dims && extent == o.extent && points_per_axis == o.points_per_axis;
  }
};

inline GridSpec build_grid(int n_dims, double extent, int points_per_axis) {
  if (n_dims < 1 || n_dims > kMaxDims) throw GridError("unsupported dimension " + std::to_string(n_dims));
  if (!(extent > 0.0) || !std::isfinite(extent)) throw GridError("extent must be positive and finite");
  if (points_per_axis < 4) throw GridError("points_per_axis must be at least 4");
  if (points_per_axis % 2 != 0) throw GridError("points_per_axis must be even, got " + std::to_string(points_per_axis));
  GridSpec s{n_dims, extent, points_per_axis, extent / points_per_axis};
  if (s.spacing * points_per_axis != extent)
    throw GridError("extent / points_per_axis is not exact in double precision");
  return s;
}

inline GridSpec GridSpec::refined() const { return build_grid(n_dims, 2.0 * extent, 4 * points_per_axis); }

namespace detail {

inline void require_finite(const std::vector<Complex>& v, const char* what) {
  for (const auto& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw NonFiniteError(std::string(what) + " contains NaN or Inf");
}

}  // namespace detail

/// Complex samples on a GridSpec lattice.
class GridFunction {
 public:
  GridFunction(GridSpec spec, std::vector<Complex> values) : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) throw GridError("sample count does not match the grid");
    detail::require_finite(values_, "grid function");
  }

  static GridFunction zeros(const GridSpec& spec) { return GridFunction(spec, std::vector<Complex>(spec.size())); }

  const GridSpec& spec() const { return spec_; }
  const std::vector<Complex>& values() const { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  GridFunction scaled(Complex c) const {
    std::vector<Complex> v(values_);
    for (auto& x : v) x *= c;
    return GridFunction(spec_, std::move(v));
  }

 private:
  GridSpec spec_;
  std::vector<Complex> values_;
};

/// Continuum-scaled Fourier coefficients on the dual lattice, FFT order.
class SpectrumFunction {
 public:
  SpectrumFunction(GridSpec spec, std::vector<Complex> values) : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) throw GridError("coefficient count does not match the grid");
    detail::require_finite(values_, "spectrum");
  }

  const GridSpec& spec() const { return spec_; }
  const std::vector<Complex>& values() const { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

 private:
  GridSpec spec_;
  std::vector<Complex> values_;
};

/// Throws SupportError when the exact support of f leaves the box.
inline void check_support_fits(const AnalyticFunction& f, const GridSpec& spec) {
  const auto s = f.support();
  if (!s) return;
  const double half = 0.5 * spec.extent;
  for (int i = 0; i < spec.n_dims; ++i) {
    if (s->center[i] - s->radius < -half || s->center[i] + s->radius > half)
      throw SupportError("support ball of radius " + std::to_string(s->radius) + " leaves the box of extent " +
                         std::to_string(spec.extent));
  }
}

/// values[j] = f(x_j). The lattice spacing is passed to the evaluation
/// context so singular weights can apply their origin policy.
inline GridFunction sample(const AnalyticFunction& f, const GridSpec& spec) {
  check_support_fits(f, spec);
  std::vector<Complex> v(spec.size());
  const EvalContext ctx{spec.spacing};
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(spec.point(j), spec.n_dims, ctx);
  return GridFunction(spec, std::move(v));
}

inline GridFunction pointwise_multiply(const GridFunction& f, const GridFunction& g) {
  if (!(f.spec() == g.spec())) throw SpecMismatch("pointwise_multiply on different grids");
  std::vector<Complex> v(f.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] * g[j];
  return GridFunction(f.spec(), std::move(v));
}

/// Debug dump: index, coordinates, re, im.
inline void write_csv(std::ostream& os, const GridFunction& f) {
  const auto& s = f.spec();
  os << "index";
  for (int i = 0; i < s.n_dims; ++i) os << ",x" << i;
  os << ",re,im\n";
  os.precision(17);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto x = s.point(j);
    os << j;
    for (int i = 0; i < s.n_dims; ++i) os << ',' << x[i];
    os << ',' << f[j].real() << ',' << f[j].imag() << '\n';
  }
}

}  // namespace morrey
