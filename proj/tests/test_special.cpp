#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "morrey/quadrature.hpp"
#include "morrey/special.hpp"
#include "morrey/spectral.hpp"
#include "morrey/testfns.hpp"

using namespace morrey;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

std::vector<Complex> strip_points(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-1.0, 10.0), im(-100.0, 100.0);
  std::vector<Complex> z;
  while (static_cast<int>(z.size()) < count) {
    const Complex c(re(rng), im(rng));
    if (std::abs(c.imag()) < 1e-3 && std::abs(c.real() - std::round(c.real())) < 1e-3) continue;
    z.push_back(c);
  }
  return z;
}

}  // namespace

TEST(ComplexGamma, ClassicalValues) {
  EXPECT_NEAR(complex_gamma(1.0).real(), 1.0, 1e-14);
  EXPECT_NEAR(complex_gamma(0.5).real(), std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_NEAR(complex_gamma(5.0).real(), 24.0, 24.0 * 1e-13);
  EXPECT_NEAR(complex_gamma(-0.5).real(), -2.0 * std::sqrt(std::numbers::pi), 1e-13);
}

TEST(ComplexGamma, ModulusAtImaginaryUnit) {
  // |Gamma(i)|^2 = pi / sinh(pi)
  const double expected = std::sqrt(std::numbers::pi / std::sinh(std::numbers::pi));
  EXPECT_NEAR(std::abs(complex_gamma(Complex(0.0, 1.0))), expected, 1e-13 * expected);
}

TEST(ComplexGamma, MatchesRealGammaOnTheRealAxis) {
  for (double x = -0.95; x <= 10.0; x += 0.137) {
    if (std::abs(x - std::round(x)) < 1e-9 && x <= 0.0) continue;
    EXPECT_LE(rel(complex_gamma(x), std::tgamma(x)), 1e-12) << "x = " << x;
  }
}

TEST(ComplexGamma, RecurrenceOnRandomStripPoints) {
  for (const auto& z : strip_points(2024, 100)) EXPECT_LE(rel(complex_gamma(z + 1.0), z * complex_gamma(z)), 1e-12) << z;
}

TEST(ComplexGamma, ConjugateSymmetry) {
  for (const auto& z : strip_points(77, 100)) {
    const Complex a = complex_gamma(std::conj(z)), b = std::conj(complex_gamma(z));
    EXPECT_LE(rel(a, b), 1e-15) << z;
  }
}

TEST(ComplexGamma, ReflectionIdentity) {
  // Gamma(z) Gamma(1 - z) = pi / sin(pi z), checked on moderate Im z
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-0.9, 1.9), im(-20.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const Complex z(re(rng), im(rng));
    const Complex lhs = complex_gamma(z) * complex_gamma(1.0 - z);
    const Complex rhs = std::numbers::pi / std::sin(std::numbers::pi * z);
    EXPECT_LE(rel(lhs, rhs), 1e-12) << z;
  }
}

TEST(ComplexGamma, PolesThrow) {
  EXPECT_THROW(complex_gamma(0.0), PoleError);
  EXPECT_THROW(complex_gamma(-1.0), PoleError);
  EXPECT_THROW(complex_gamma(-7.0), PoleError);
  EXPECT_NO_THROW(complex_gamma(Complex(-1.0, 1e-8)));
}

TEST(KernelConstant, ZeroAtUZero) {
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(kernel_constant(0.0, n).value, Complex(0.0));
}

TEST(KernelConstant, ModulusClosedForms) {
  // n = 1: |C(u)| = pi^{-1/2} sqrt((u/2) tanh(pi u/2));  n = 2: |C(u)| = |u| / (2 pi)
  for (double u : {0.5, 1.0, 3.0, 17.0, 60.0}) {
    const double c1 = std::sqrt(0.5 * u * std::tanh(0.5 * std::numbers::pi * u) / std::numbers::pi);
    EXPECT_NEAR(std::abs(kernel_constant(u, 1).value), c1, 1e-12 * c1) << u;
    const double c2 = u / (2.0 * std::numbers::pi);
    EXPECT_NEAR(std::abs(kernel_constant(u, 2).value), c2, 1e-12 * c2) << u;
  }
  EXPECT_NEAR(std::abs(kernel_constant(1.0, 1).value), 0.382059325, 1e-9);
}

TEST(KernelConstant, EvenModulus) {
  for (int n = 1; n <= 3; ++n)
    for (double u : {0.3, 2.0, 11.0, 45.0})
      EXPECT_NEAR(std::abs(kernel_constant(-u, n).value), std::abs(kernel_constant(u, n).value),
                  1e-13 * std::abs(kernel_constant(u, n).value));
}

TEST(KernelConstant, GrowthSlopeIsHalfDimension) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<double> x, y;
    for (double u = 10.0; u <= 100.0; u += 1.0) {
      x.push_back(std::log1p(u));
      y.push_back(std::log(std::abs(kernel_constant(u, n).value)));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size(), my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    EXPECT_NEAR(sxy / sxx, 0.5 * n, 0.1) << "n = " << n;
  }
}

TEST(KernelConstant, BoundedBandOverSweep) {
  for (int n = 1; n <= 3; ++n) {
    double lo = 1e300, hi = 0;
    for (double u = 1.0; u <= 50.0; u += 0.5) {
      const double b = std::abs(kernel_constant(u, n).value) / std::pow(1.0 + u, 0.5 * n);
      lo = std::min(lo, b), hi = std::max(hi, b);
    }
    EXPECT_LT(hi / lo, 10.0) << "n = " << n;
  }
}

TEST(RieszConstant, MatchesGaussianCalibration) {
  // gamma = (int |y|^{a-n} e^{-|y|^2/2} dy) / ((2 pi)^{-n} int |xi|^{-a} (2 pi)^{n/2} e^{-|xi|^2/2} dxi)
  for (int n = 1; n <= 3; ++n) {
    for (double a : {0.25, 0.5, 0.5 * n, n - 0.3}) {
      if (!(a > 0 && a < n)) continue;
      const double space = std::pow(2.0, 0.5 * a - 1.0) * std::tgamma(0.5 * a);
      const double freq = std::pow(2.0 * std::numbers::pi, -0.5 * n) * std::pow(2.0, 0.5 * (n - a) - 1.0) *
                          std::tgamma(0.5 * (n - a));
      const double g = space / freq;  // the common sphere area cancels
      EXPECT_NEAR(riesz_constant(a, n), g, 1e-12 * g) << n << " " << a;
    }
  }
}

TEST(RieszConstant, QuadratureCalibrationAtOrigin) {
  // n = 1, alpha = 1/2: multiplier path at x = 0 against the space-side convolution
  const double a = 0.5;
  const auto f = gaussian({}, 1.0);
  const Complex multiplier = quadrature_oracle(f, -a, {Point{}}, 1).front();
  // y = t^2 removes the endpoint singularity: int_0^inf y^{-1/2} e^{-y^2/2} dy = int_0^inf 2 e^{-t^4/2} dt
  const double space =
      2.0 * quad::integrate([](double t) { return Complex(2.0 * std::exp(-0.5 * t * t * t * t)); }, 0.0, 8.0, 1e-14)
                .value.real();
  EXPECT_LE(std::abs(multiplier.real() - space / riesz_constant(a, 1)) / multiplier.real(), 1e-6);
}

TEST(RieszConstant, RangeAndPositivity) {
  EXPECT_THROW(riesz_constant(1.0, 1), DomainError);
  EXPECT_THROW(riesz_constant(0.0, 2), DomainError);
  EXPECT_THROW(riesz_constant(3.5, 3), DomainError);
  const double g = riesz_constant(1.0, 2);
  EXPECT_TRUE(std::isfinite(g));
  EXPECT_GT(g, 0.0);
}
