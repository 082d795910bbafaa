#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "morrey/grid.hpp"
#include "morrey/testfns.hpp"

using namespace morrey;

namespace {

double max_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace

TEST(Bump, CenterBoundaryAndSymmetry) {
  const Point c{0.5, -0.25, 0.0};
  const auto b = bump(c, 2.0, 3.0);
  EXPECT_DOUBLE_EQ(b(c, 2).real(), 3.0 * std::exp(-1.0));
  EXPECT_EQ(b(Point{2.5, -0.25, 0}, 2), Complex(0.0));
  EXPECT_EQ(b(Point{0.5, 1.75, 0}, 2), Complex(0.0));
  for (double t : {0.125, 0.75, 1.25, 1.875}) EXPECT_EQ(b(Point{0.5 + t, -0.25, 0}, 2), b(Point{0.5 - t, -0.25, 0}, 2));
  EXPECT_THROW(bump({}, 0.0), DomainError);
}

TEST(Gaussian, TransformValues) {
  const auto g = gaussian({}, 1.0);
  EXPECT_NEAR(g.transform(Point{}, 1)->real(), std::sqrt(2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(g.transform(Point{1.0, 0, 0}, 1)->real(), std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5), 1e-15);
  const double s = 0.6;
  const auto g2 = gaussian({}, s);
  EXPECT_NEAR(g2.transform(Point{}, 3)->real(), std::pow(2.0 * std::numbers::pi * s * s, 1.5), 1e-13);
}

TEST(Gaussian, ShiftedTransformCarriesPhase) {
  const Point c{0.7, 0, 0};
  const auto g = gaussian(c, 1.0);
  const Point xi{1.3, 0, 0};
  const Complex expected = std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * 1.69) * std::polar(1.0, -0.7 * 1.3);
  EXPECT_LE(std::abs(*g.transform(xi, 1) - expected), 1e-15);
}

TEST(Gaussian, DilateEqualsNarrowerGaussian) {
  const auto s = build_grid(2, 8.0, 32);
  const double lambda = 2.5;
  const auto a = sample(dilate_fn(gaussian({}, 1.0), lambda), s);
  const auto b = sample(gaussian({}, 1.0 / lambda), s);
  EXPECT_LE(max_diff(a, b), 1e-15);
  const Point xi{0.4, -1.1, 0};
  EXPECT_LE(std::abs(*dilate_fn(gaussian({}, 1.0), lambda).transform(xi, 2) - *gaussian({}, 1.0 / lambda).transform(xi, 2)),
            1e-15);
}

TEST(Gaussian, AtomsFlattenCompositions) {
  const auto f = translate_fn(dilate_fn(scalar(Complex(2.0, 1.0), gaussian({1.0, 0, 0}, 0.5)), 2.0), Point{0.3, 0, 0});
  const auto atoms = f.gaussian_atoms();
  ASSERT_EQ(atoms.size(), 1u);
  EXPECT_NEAR(atoms[0].sigma, 0.25, 1e-15);
  EXPECT_NEAR(atoms[0].center[0], 0.3 + 0.5, 1e-15);
  EXPECT_EQ(atoms[0].amplitude, Complex(2.0, 1.0));
  for (double x : {-0.4, 0.1, 0.8, 1.2}) {
    const Point p{x, 0, 0};
    const Complex direct = f(p, 1);
    const double d = x - atoms[0].center[0];
    const Complex via = atoms[0].amplitude * std::exp(-d * d / (2.0 * atoms[0].sigma * atoms[0].sigma));
    EXPECT_LE(std::abs(direct - via), 1e-14);
  }
  EXPECT_THROW(bump({}, 1.0).gaussian_atoms(), DomainError);
  EXPECT_FALSE(bump({}, 1.0).transform(Point{}, 1).has_value());
}

TEST(PowerWeight, UnitSphereAndOrigin) {
  const auto w = power_weight(0.7);
  EXPECT_DOUBLE_EQ(w(Point{1.0, 0, 0}, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(w(Point{0.6, 0.8, 0}, 2).real(), 1.0);
  EXPECT_THROW(w(Point{}, 1), SingularEvaluation);
  EXPECT_DOUBLE_EQ(w(Point{}, 1, EvalContext{0.5}).real(), std::pow(0.25, -0.7));
  EXPECT_THROW(power_weight(0.0), DomainError);
  EXPECT_THROW(power_weight(-1.0), DomainError);
}

TEST(PowerWeight, MomentWeightVanishesAtOrigin) {
  const auto m = moment_weight(1.5);
  EXPECT_DOUBLE_EQ(m(Point{2.0, 0, 0}, 1).real(), std::pow(2.0, 1.5));
  EXPECT_DOUBLE_EQ(m(Point{}, 1, EvalContext{0.5}).real(), std::pow(0.25, 1.5));
  EXPECT_DOUBLE_EQ(m(Point{}, 1).real(), 0.0);
}

TEST(PowerWeight, DilateScalesOriginCell) {
  // (|.|^{-a})(lambda x) = lambda^{-a} |x|^{-a}, and the origin cell follows
  const auto s = build_grid(1, 8.0, 64);
  const double lambda = 2.0, a = 0.4;
  const auto lhs = sample(dilate_fn(power_weight(a), lambda), s);
  const auto rhs = sample(power_weight(a), s).scaled(std::pow(lambda, -a));
  EXPECT_LE(max_diff(lhs, rhs), 1e-13);
}

TEST(MollifiedNoise, DeterministicAndSeedSensitive) {
  const auto s = build_grid(1, 8.0, 256);
  const auto a = sample(mollified_noise(7, 1.0, 0.3), s);
  const auto b = sample(mollified_noise(7, 1.0, 0.3), s);
  const auto c = sample(mollified_noise(8, 1.0, 0.3), s);
  EXPECT_EQ(a.values(), b.values());
  EXPECT_GT(max_diff(a, c), 0.0);
}

TEST(MollifiedNoise, SupportRadius) {
  const auto s = build_grid(2, 8.0, 64);
  const double R = 1.0, w = 0.3;
  const auto f = mollified_noise(3, R, w, 2);
  const auto v = sample(f, s);
  double inside = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double r = norm(s.point(j), 2);
    if (r >= R + w) EXPECT_EQ(v[j], Complex(0.0));
    else inside = std::max(inside, std::abs(v[j]));
  }
  EXPECT_GT(inside, 0.0);
  EXPECT_DOUBLE_EQ(f.support()->radius, R + w);
  EXPECT_THROW(mollified_noise(1, 1.0, 1.0), DomainError);
  EXPECT_THROW(f(Point{}, 1), DomainError);
}

TEST(Dilate, SupportAndIdentity) {
  const auto b = bump({}, 1.0);
  EXPECT_DOUBLE_EQ(dilate_fn(b, 2.0).support()->radius, 0.5);
  const auto s = build_grid(1, 8.0, 64);
  EXPECT_EQ(sample(dilate_fn(b, 1.0), s).values(), sample(b, s).values());
  EXPECT_THROW(dilate_fn(b, 0.0), DomainError);
  const auto far = dilate_fn(b, 0.1);
  EXPECT_THROW(sample(far, s), SupportError);
}

TEST(Translate, LatticeShiftEqualsIndexShift) {
  const auto s = build_grid(1, 16.0, 128);
  const auto f = mollified_noise(5, 1.5, 0.4);
  const int k = 12;
  const auto shifted = sample(translate_fn(f, Point{k * s.spacing, 0, 0}), s);
  const auto base = sample(f, s);
  for (int j = k; j < s.points_per_axis; ++j) EXPECT_LE(std::abs(shifted[j] - base[j - k]), 1e-15);
  EXPECT_DOUBLE_EQ(translate_fn(f, Point{2.0, 0, 0}).support()->center[0], 2.0);
}

TEST(Support, GaussianEffectiveSupport) {
  const auto g = gaussian({}, 0.5);
  EXPECT_FALSE(g.support().has_value());
  const double r = g.effective_support()->radius;
  EXPECT_NEAR(std::exp(-r * r / (2 * 0.25)), kGaussianTailCutoff, 1e-25);
}

TEST(Evenness, ReportsSymmetry) {
  EXPECT_TRUE(bump({}, 1.0).is_even());
  EXPECT_TRUE(gaussian({}, 1.0).is_even());
  EXPECT_FALSE(gaussian({0.5, 0, 0}, 1.0).is_even());
}

TEST(Descriptor, JsonRoundTrip) {
  const std::vector<AnalyticFunction> fs{
      bump({0.5, 0, 0}, 1.2, 0.7),
      gaussian({0, 0.25, 0}, 0.4),
      power_weight(0.3),
      moment_weight(1.0),
      mollified_noise(99, 1.0, 0.35, 2, {0.1, 0.2, 0}),
      indicator({}, 1.0),
      product(power_weight(0.2), bump({}, 1.0)),
      sum({gaussian({}, 1.0), gaussian({1, 0, 0}, 0.5)}),
      scalar(Complex(0.5, -2), dilate_fn(translate_fn(bump({}, 1), Point{0.25, 0, 0}), 3.0)),
  };
  const auto s = build_grid(2, 8.0, 32);
  for (const auto& f : fs) {
    const auto j = f.to_json();
    const auto g = AnalyticFunction::from_json(j);
    EXPECT_EQ(g.to_json(), j);
    EXPECT_EQ(sample(g, s).values(), sample(f, s).values()) << j.dump();
  }
}

TEST(Descriptor, RejectsUnknownKeysAndKinds) {
  EXPECT_THROW(AnalyticFunction::from_json({{"kind", "bump"}, {"radius", 1.0}, {"colour", 1}}), ConfigError);
  EXPECT_THROW(AnalyticFunction::from_json({{"kind", "spline"}}), ConfigError);
  EXPECT_THROW(AnalyticFunction::from_json({{"radius", 1.0}}), ConfigError);
}
