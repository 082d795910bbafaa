#pragma once

// Discrete Morrey, Lebesgue and weak-Lebesgue functionals.
//
// The Morrey sup runs over a finite ball family (sublattice centers times a
// geometric radius ladder), so every value is a lower bound of the
// continuum norm. Balls are clipped to the box and never wrap.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "morrey/error.hpp"
#include "morrey/grid.hpp"
#include "morrey/types.hpp"

namespace morrey {

struct BallFamily {
  GridSpec spec;
  int stride = 1;
  double ratio = std::numbers::sqrt2;
  std::vector<double> radii;

  /// Center indices along one axis: every `stride`-th index, aligned so the
  /// origin index N/2 is included.
  std::vector<int> axis_centers() const {
    std::vector<int> c;
    const int start = (spec.points_per_axis / 2) % stride;
    for (int i = start; i < spec.points_per_axis; i += stride) c.push_back(i);
    return c;
  }

  std::size_t center_count() const {
    std::size_t m = axis_centers().size(), total = 1;
    for (int i = 0; i < spec.n_dims; ++i) total *= m;
    return total;
  }

  std::string descriptor() const {
    std::ostringstream os;
    os.precision(6);
    os << "centers: stride " << stride << " sublattice through the origin (" << center_count()
       << " centers); radii: h*" << ratio << "^m + h/3, m = 0.." << radii.size() - 1 << " (r_max = " << radii.back()
       << ")";
    return os.str();
  }
};

inline int default_stride(int n_dims) { return n_dims == 3 ? 2 : 1; }

/// stride = 0 selects the per-dimension default.
inline BallFamily make_ball_family(const GridSpec& spec, int stride = 0, double ratio = std::numbers::sqrt2) {
  if (stride == 0) stride = default_stride(spec.n_dims);
  if (stride < 1) throw DomainError("ball family stride must be at least 1");
  if (!(ratio > 1.0)) throw DomainError("ball family ratio must exceed 1");
  BallFamily fam{spec, stride, ratio, {}};
  const double h = spec.spacing;
  const double r_max = std::sqrt(static_cast<double>(spec.n_dims)) * spec.extent;
  for (int m = 0;; ++m) {
    const double r = h * std::pow(ratio, m) + h / 3.0;
    fam.radii.push_back(r);
    if (r >= r_max) break;
  }
  return fam;
}

struct NormResult {
  double value = 0.0;
  Point witness_center{};
  std::optional<double> witness_radius;
  std::size_t center_index = 0;
  std::size_t radius_index = 0;
};

namespace detail {

inline void check_exponent(double p, const char* name) {
  if (!(p >= 1.0)) throw DomainError(std::string(name) + " must be >= 1");
}

inline double abs_pow(const Complex& c, double p) {
  const double a = std::abs(c);
  return p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p));
}

// Row prefix sums of |f|^p along the last axis: rows = N^{n-1}, each of length N + 1.
struct RowPrefix {
  int n = 0;
  std::size_t rows = 0;
  std::vector<double> data;
  double at(std::size_t row, int i) const { return data[row * (n + 1) + static_cast<std::size_t>(i)]; }
};

inline RowPrefix row_prefix(const GridFunction& f, double p) {
  const auto& s = f.spec();
  RowPrefix rp;
  rp.n = s.points_per_axis;
  rp.rows = f.size() / static_cast<std::size_t>(rp.n);
  rp.data.assign(rp.rows * (rp.n + 1), 0.0);
  for (std::size_t r = 0; r < rp.rows; ++r) {
    double acc = 0.0;
    for (int i = 0; i < rp.n; ++i) {
      acc += abs_pow(f[r * rp.n + i], p);
      rp.data[r * (rp.n + 1) + i + 1] = acc;
    }
  }
  return rp;
}

// Lattice offsets of a ball of radius r (in units of h): for every
// transverse offset (dz, dy), the half-width along the last axis.
struct BallRows {
  std::vector<std::array<int, 2>> transverse;
  std::vector<int> half_width;
};

inline BallRows ball_rows(int n_dims, double r_over_h) {
  BallRows br;
  const double R2 = r_over_h * r_over_h;
  const int W = static_cast<int>(std::ceil(r_over_h));
  auto half = [&](long long t2) -> int {
    // largest k with k^2 + t2 < R2, or -1
    if (static_cast<double>(t2) >= R2) return -1;
    int k = static_cast<int>(std::floor(std::sqrt(R2 - static_cast<double>(t2))));
    while (k >= 0 && static_cast<double>(static_cast<long long>(k) * k + t2) >= R2) --k;
    while (static_cast<double>(static_cast<long long>(k + 1) * (k + 1) + t2) < R2) ++k;
    return k;
  };
  const int zr = n_dims >= 3 ? W : 0;
  const int yr = n_dims >= 2 ? W : 0;
  for (int dz = -zr; dz <= zr; ++dz)
    for (int dy = -yr; dy <= yr; ++dy) {
      const int k = half(static_cast<long long>(dz) * dz + static_cast<long long>(dy) * dy);
      if (k < 0) continue;
      br.transverse.push_back({dz, dy});
      br.half_width.push_back(k);
    }
  return br;
}

// Sum of |f|^p over the clipped ball at lattice index `c`.
inline double ball_sum(const RowPrefix& rp, const GridSpec& s, const std::array<int, 3>& c, const BallRows& br) {
  const int N = s.points_per_axis;
  const int last = s.n_dims - 1;
  double total = 0.0;
  for (std::size_t t = 0; t < br.transverse.size(); ++t) {
    std::size_t row = 0;
    bool inside = true;
    if (s.n_dims == 3) {
      const int z = c[0] + br.transverse[t][0];
      const int y = c[1] + br.transverse[t][1];
      inside = z >= 0 && z < N && y >= 0 && y < N;
      row = static_cast<std::size_t>(z) * N + static_cast<std::size_t>(y);
    } else if (s.n_dims == 2) {
      const int y = c[0] + br.transverse[t][1];
      inside = y >= 0 && y < N;
      row = static_cast<std::size_t>(y);
    }
    if (!inside) continue;
    const int lo = std::max(0, c[last] - br.half_width[t]);
    const int hi = std::min(N - 1, c[last] + br.half_width[t]);
    if (lo > hi) continue;
    const double d = rp.at(row, hi + 1) - rp.at(row, lo);
    if (d > 0.0) total += d;
  }
  return total;
}

inline double radius_factor(int n_dims, double r, double p, double q) {
  const double e = 1.0 / q - 1.0 / p;
  return e == 0.0 ? 1.0 : std::pow(ball_volume(n_dims, r), e);
}

}  // namespace detail

/// (h^n sum_{|x_j - a| < r} |f(x_j)|^p)^{1/p}; p = infinity gives the max.
inline double ball_local_norm(const GridFunction& f, double p, const Point& center, double radius) {
  const auto& s = f.spec();
  if (!(p >= 1.0)) throw DomainError("p must be >= 1");
  if (!(radius >= s.spacing)) throw DomainError("ball radius must be at least the lattice spacing");
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int i = 0; i < s.n_dims; ++i) {
    lo[i] = std::max(0, static_cast<int>(std::floor((center[i] - radius - s.coordinate(0)) / s.spacing)));
    hi[i] = std::min(s.points_per_axis - 1,
                     static_cast<int>(std::ceil((center[i] + radius - s.coordinate(0)) / s.spacing)));
  }
  const double r2 = radius * radius;
  double acc = 0.0;
  std::size_t count = 0;
  std::array<int, 3> k = lo;
  if (s.n_dims < 3) k[2] = lo[2] = hi[2] = 0;
  if (s.n_dims < 2) k[1] = lo[1] = hi[1] = 0;
  for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0])
    for (k[1] = lo[1]; k[1] <= hi[1]; ++k[1])
      for (k[2] = lo[2]; k[2] <= hi[2]; ++k[2]) {
        double d2 = 0.0;
        for (int i = 0; i < s.n_dims; ++i) {
          const double d = s.coordinate(k[i]) - center[i];
          d2 += d * d;
        }
        if (!(d2 < r2)) continue;
        ++count;
        const Complex v = f[s.ravel(k)];
        if (std::isinf(p))
          acc = std::max(acc, std::abs(v));
        else
          acc += detail::abs_pow(v, p);
      }
  if (count == 0) throw EmptyBallError("no lattice point lies in the ball");
  if (std::isinf(p)) return acc;
  return std::pow(s.cell_volume() * acc, 1.0 / p);
}

/// Morrey objective at one lattice center for every radius of the family.
inline std::vector<double> morrey_profile(const GridFunction& f, double p, double q, const BallFamily& family,
                                          const std::array<int, 3>& center) {
  const auto& s = f.spec();
  if (!(s == family.spec)) throw SpecMismatch("ball family built for a different grid");
  const auto rp = detail::row_prefix(f, p);
  std::vector<double> out;
  for (double r : family.radii) {
    const auto br = detail::ball_rows(s.n_dims, r / s.spacing);
    const double sum = detail::ball_sum(rp, s, center, br);
    out.push_back(detail::radius_factor(s.n_dims, r, p, q) * std::pow(s.cell_volume() * sum, 1.0 / p));
  }
  return out;
}

/// max over the family of |B(a,r)|^{1/q - 1/p} (h^n sum_{B(a,r)} |f|^p)^{1/p},
/// with |B| the continuum volume. Ties resolve to the lowest
/// (center index, radius index).
inline NormResult morrey_norm(const GridFunction& f, double p, double q, const BallFamily& family) {
  detail::check_exponent(p, "p");
  if (!(p <= q)) throw DomainError("morrey_norm requires p <= q");
  if (!std::isfinite(q)) throw DomainError("morrey_norm requires q < infinity");
  const auto& s = f.spec();
  if (!(s == family.spec)) throw SpecMismatch("ball family built for a different grid");
  const auto rp = detail::row_prefix(f, p);
  const auto axis = family.axis_centers();
  const std::size_t m = axis.size();
  const std::size_t n_centers = family.center_count();

  NormResult best;
  bool have = false;
  for (std::size_t ri = 0; ri < family.radii.size(); ++ri) {
    const double r = family.radii[ri];
    const auto br = detail::ball_rows(s.n_dims, r / s.spacing);
    double best_sum = -1.0;
    std::size_t best_c = 0;
    for (std::size_t ci = 0; ci < n_centers; ++ci) {
      std::array<int, 3> c{0, 0, 0};
      std::size_t rem = ci;
      for (int i = s.n_dims - 1; i >= 0; --i) {
        c[i] = axis[rem % m];
        rem /= m;
      }
      const double sum = detail::ball_sum(rp, s, c, br);
      if (sum > best_sum) {
        best_sum = sum;
        best_c = ci;
      }
    }
    const double val = detail::radius_factor(s.n_dims, r, p, q) * std::pow(s.cell_volume() * best_sum, 1.0 / p);
    if (!have || val > best.value || (val == best.value && best_c < best.center_index)) {
      have = true;
      best.value = val;
      best.center_index = best_c;
      best.radius_index = ri;
      best.witness_radius = r;
    }
  }
  std::array<int, 3> c{0, 0, 0};
  std::size_t rem = best.center_index;
  for (int i = s.n_dims - 1; i >= 0; --i) {
    c[i] = axis[rem % m];
    rem /= m;
  }
  for (int i = 0; i < s.n_dims; ++i) best.witness_center[i] = s.coordinate(c[i]);
  return best;
}

/// (h^n sum_j |f(x_j)|^p)^{1/p}; p = infinity gives max |f|.
inline double lebesgue_norm(const GridFunction& f, double p) {
  detail::check_exponent(p, "p");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  const int N = f.spec().points_per_axis;
  double total = 0.0;
  // row-wise partial sums, matching the summation order of morrey_norm
  for (std::size_t r = 0; r < f.size(); r += N) {
    double acc = 0.0;
    for (int i = 0; i < N; ++i) acc += detail::abs_pow(f[r + i], p);
    total += acc;
  }
  return std::pow(f.spec().cell_volume() * total, 1.0 / p);
}

/// sup_v v (h^n #{j : |f(x_j)| >= v})^{1/t}, v ranging over the sample magnitudes.
inline double weak_norm(const GridFunction& f, double t) {
  detail::check_exponent(t, "t");
  std::vector<double> mags(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) mags[j] = std::abs(f[j]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double cell = f.spec().cell_volume();
  double best = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    if (mags[j] == 0.0) break;
    if (j + 1 < mags.size() && mags[j + 1] == mags[j]) continue;
    best = std::max(best, mags[j] * std::pow(cell * static_cast<double>(j + 1), 1.0 / t));
  }
  return best;
}

struct NormRow {
  std::string function_id;
  double p = 0.0;
  double q = 0.0;
  NormResult result;
};

inline void write_norm_rows(std::ostream& os, const std::vector<NormRow>& rows, int n_dims) {
  os << "function_id,p,q,value";
  for (int i = 0; i < n_dims; ++i) os << ",center_" << i;
  os << ",radius\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.function_id << ',' << r.p << ',' << r.q << ',' << r.result.value;
    for (int i = 0; i < n_dims; ++i) os << ',' << r.result.witness_center[i];
    os << ',';
    if (r.result.witness_radius) os << *r.result.witness_radius;
    os << '\n';
  }
}

}  // namespace morrey
