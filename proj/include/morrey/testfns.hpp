#pragma once

// Closed-form test functions: compactly supported bumps, Gaussians with exact
// Fourier transforms, the power weight |x|^{-alpha}, seeded mollified noise,
// and the algebra (sum, product, scalar, dilation, translation) over them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "morrey/error.hpp"
#include "morrey/types.hpp"

namespace morrey {

enum class FunctionKind {
  bump,
  gaussian,
  power_weight,
  mollified_noise,
  indicator,
  product,
  sum,
  dilate,
  translate,
  scalar,
};

inline const char* to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::bump: return "bump";
    case FunctionKind::gaussian: return "gaussian";
    case FunctionKind::power_weight: return "power_weight";
    case FunctionKind::mollified_noise: return "mollified_noise";
    case FunctionKind::indicator: return "indicator";
    case FunctionKind::product: return "product";
    case FunctionKind::sum: return "sum";
    case FunctionKind::dilate: return "dilate";
    case FunctionKind::translate: return "translate";
    case FunctionKind::scalar: return "scalar";
  }
  return "?";
}

/// Sampling context. `cell` is the lattice spacing expressed in the
/// function's own coordinates; the power weight uses it to resolve the origin.
struct EvalContext {
  double cell = 0.0;
};

/// Closed ball containing the support of a function.
struct SupportBall {
  Point center{};
  double radius = 0.0;
};

/// One term a * exp(-|x - c|^2 / (2 sigma^2)) of a Gaussian mixture.
struct GaussianAtom {
  Complex amplitude{1.0, 0.0};
  Point center{};
  double sigma = 1.0;
};

/// Relative amplitude below which a Gaussian tail counts as outside its
/// effective support.
inline constexpr double kGaussianTailCutoff = 1e-13;

/// Immutable descriptor tree for a closed-form test function on R^n.
class AnalyticFunction {
 public:
  FunctionKind kind() const { return node_->kind; }

  Complex operator()(const Point& x, int n_dims, const EvalContext& ctx = {}) const {
    return eval(*node_, x, n_dims, ctx);
  }

  /// Closed-form Fourier transform, present for Gaussians and for sums,
  /// scalings, dilates and translates of transform-carrying functions.
  bool has_transform() const { return has_transform(*node_); }

  std::optional<Complex> transform(const Point& xi, int n_dims) const {
    if (!has_transform()) return std::nullopt;
    return transform(*node_, xi, n_dims);
  }

  /// Flattens a transform-carrying function into Gaussian atoms.
  std::vector<GaussianAtom> gaussian_atoms() const {
    if (!has_transform()) throw DomainError(std::string("function of kind '") + to_string(kind()) +
                                            "' has no closed-form transform");
    std::vector<GaussianAtom> atoms;
    collect_atoms(*node_, {Complex(1.0), Point{}, 1.0}, atoms);
    return atoms;
  }

  /// Exact compact support, if any.
  std::optional<SupportBall> support() const { return support(*node_, false); }

  /// Support with Gaussian tails cut at kGaussianTailCutoff.
  std::optional<SupportBall> effective_support() const { return support(*node_, true); }

  /// True when the function is invariant under x -> -x about the origin.
  bool is_even() const { return is_even(*node_); }

  nlohmann::json to_json() const { return to_json(*node_); }
  static AnalyticFunction from_json(const nlohmann::json& j);

  friend AnalyticFunction bump(const Point& center, double radius, double amplitude);
  friend AnalyticFunction gaussian(const Point& center, double sigma);
  friend AnalyticFunction power_weight(double alpha);
  friend AnalyticFunction moment_weight(double beta);
  friend AnalyticFunction mollified_noise(std::uint64_t seed, double support_radius, double smoothing_width,
                                          int n_dims, const Point& center);
  friend AnalyticFunction indicator(const Point& center, double radius);
  friend AnalyticFunction product(const AnalyticFunction& f, const AnalyticFunction& g);
  friend AnalyticFunction sum(std::vector<AnalyticFunction> terms);
  friend AnalyticFunction scalar(Complex c, const AnalyticFunction& f);
  friend AnalyticFunction dilate_fn(const AnalyticFunction& f, double lambda);
  friend AnalyticFunction translate_fn(const AnalyticFunction& f, const Point& shift);

 private:
  struct Node {
    FunctionKind kind = FunctionKind::bump;
    Point center{};
    double radius = 0.0;
    double amplitude = 1.0;
    double sigma = 1.0;
    double alpha = 0.0;
    double lambda = 1.0;
    Complex coefficient{1.0, 0.0};
    // mollified noise
    std::uint64_t seed = 0;
    double smoothing_width = 0.0;
    int n_dims = 0;
    double spacing = 0.0;
    int half_count = 0;
    std::vector<double> weights;
    std::vector<AnalyticFunction> children;
  };

  explicit AnalyticFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static double bump_profile(double rho2) {
    // rho2 = |x - c|^2 / r^2
    if (rho2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - rho2));
  }

  static double dist2(const Point& x, const Point& c, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
    return s;
  }

  static Complex eval(const Node& nd, const Point& x, int n, const EvalContext& ctx) {
    switch (nd.kind) {
      case FunctionKind::bump:
        return nd.amplitude * bump_profile(dist2(x, nd.center, n) / (nd.radius * nd.radius));
      case FunctionKind::gaussian:
        return std::exp(-dist2(x, nd.center, n) / (2.0 * nd.sigma * nd.sigma));
      case FunctionKind::indicator:
        return dist2(x, nd.center, n) < nd.radius * nd.radius ? 1.0 : 0.0;
      case FunctionKind::power_weight: {
        double r = norm(x, n);
        if (r == 0.0) {
          if (!(ctx.cell > 0.0) && nd.alpha > 0.0) throw SingularEvaluation("power_weight evaluated at the origin without a lattice cell");
          r = 0.5 * ctx.cell;
        }
        return std::pow(r, -nd.alpha);
      }
      case FunctionKind::mollified_noise: return eval_noise(nd, x, n);
      case FunctionKind::product: {
        Complex v(1.0, 0.0);
        for (const auto& c : nd.children) v *= eval(*c.node_, x, n, ctx);
        return v;
      }
      case FunctionKind::sum: {
        Complex v(0.0, 0.0);
        for (const auto& c : nd.children) v += eval(*c.node_, x, n, ctx);
        return v;
      }
      case FunctionKind::scalar: return nd.coefficient * eval(*nd.children[0].node_, x, n, ctx);
      case FunctionKind::dilate: {
        Point y{};
        for (int i = 0; i < n; ++i) y[i] = nd.lambda * x[i];
        return eval(*nd.children[0].node_, y, n, EvalContext{ctx.cell * nd.lambda});
      }
      case FunctionKind::translate: {
        Point y{};
        for (int i = 0; i < n; ++i) y[i] = x[i] - nd.center[i];
        return eval(*nd.children[0].node_, y, n, ctx);
      }
    }
    return 0.0;
  }

  static Complex eval_noise(const Node& nd, const Point& x, int n) {
    if (n != nd.n_dims)
      throw DomainError("mollified_noise built for n = " + std::to_string(nd.n_dims) + " evaluated in n = " +
                        std::to_string(n));
    const double outer = nd.radius + nd.smoothing_width;
    const double d2 = dist2(x, nd.center, n);
    if (d2 >= outer * outer) return 0.0;
    const double cutoff = std::exp(1.0) * bump_profile(d2 / (outer * outer));
    const int m = nd.half_count;
    const int side = 2 * m + 1;
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int i = 0; i < n; ++i) {
      const double rel = x[i] - nd.center[i];
      lo[i] = std::max(-m, static_cast<int>(std::floor((rel - nd.smoothing_width) / nd.spacing)));
      hi[i] = std::min(m, static_cast<int>(std::ceil((rel + nd.smoothing_width) / nd.spacing)));
      if (lo[i] > hi[i]) return 0.0;
    }
    const double w2 = nd.smoothing_width * nd.smoothing_width;
    double acc = 0.0;
    std::array<int, 3> k{lo[0], lo[1], lo[2]};
    while (true) {
      std::size_t flat = 0;
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        flat = flat * side + static_cast<std::size_t>(k[i] + m);
        const double d = x[i] - nd.center[i] - k[i] * nd.spacing;
        s += d * d;
      }
      const double wgt = nd.weights[flat];
      if (wgt != 0.0 && s < w2) acc += wgt * bump_profile(s / w2);
      int axis = n - 1;
      while (axis >= 0) {
        if (++k[axis] <= hi[axis]) break;
        k[axis] = lo[axis];
        --axis;
      }
      if (axis < 0) break;
    }
    return cutoff * acc;
  }

  static bool has_transform(const Node& nd) {
    switch (nd.kind) {
      case FunctionKind::gaussian: return true;
      case FunctionKind::scalar:
      case FunctionKind::dilate:
      case FunctionKind::translate: return has_transform(*nd.children[0].node_);
      case FunctionKind::sum:
        return std::all_of(nd.children.begin(), nd.children.end(),
                           [](const AnalyticFunction& c) { return has_transform(*c.node_); });
      default: return false;
    }
  }

  static Complex transform(const Node& nd, const Point& xi, int n) {
    switch (nd.kind) {
      case FunctionKind::gaussian: {
        const double s2 = nd.sigma * nd.sigma;
        const double mag = std::pow(2.0 * std::numbers::pi * s2, 0.5 * n) * std::exp(-0.5 * s2 * squared_norm(xi, n));
        return mag * std::polar(1.0, -dot(nd.center, xi, n));
      }
      case FunctionKind::scalar: return nd.coefficient * transform(*nd.children[0].node_, xi, n);
      case FunctionKind::sum: {
        Complex v(0.0);
        for (const auto& c : nd.children) v += transform(*c.node_, xi, n);
        return v;
      }
      case FunctionKind::translate:
        return std::polar(1.0, -dot(nd.center, xi, n)) * transform(*nd.children[0].node_, xi, n);
      case FunctionKind::dilate: {
        Point eta{};
        for (int i = 0; i < n; ++i) eta[i] = xi[i] / nd.lambda;
        return std::pow(nd.lambda, -n) * transform(*nd.children[0].node_, eta, n);
      }
      default: return 0.0;
    }
  }

  // `acc` carries the map from node to outer coordinates: outer = acc.center +
  // acc.sigma * inner, with acc.amplitude the accumulated scalar factor.
  static void collect_atoms(const Node& nd, GaussianAtom acc, std::vector<GaussianAtom>& out) {
    switch (nd.kind) {
      case FunctionKind::gaussian: {
        GaussianAtom a;
        a.amplitude = acc.amplitude;
        for (int i = 0; i < kMaxDims; ++i) a.center[i] = acc.center[i] + acc.sigma * nd.center[i];
        a.sigma = acc.sigma * nd.sigma;
        out.push_back(a);
        return;
      }
      case FunctionKind::scalar:
        acc.amplitude *= nd.coefficient;
        collect_atoms(*nd.children[0].node_, acc, out);
        return;
      case FunctionKind::sum:
        for (const auto& c : nd.children) collect_atoms(*c.node_, acc, out);
        return;
      case FunctionKind::translate:
        // f(x - s): outer point x corresponds to inner x - s
        for (int i = 0; i < kMaxDims; ++i) acc.center[i] += acc.sigma * nd.center[i];
        collect_atoms(*nd.children[0].node_, acc, out);
        return;
      case FunctionKind::dilate:
        // f(lambda x): inner coordinates are lambda times outer ones
        acc.sigma /= nd.lambda;
        collect_atoms(*nd.children[0].node_, acc, out);
        return;
      default: throw DomainError("not a Gaussian mixture");
    }
  }

  static std::optional<SupportBall> support(const Node& nd, bool effective) {
    switch (nd.kind) {
      case FunctionKind::bump:
      case FunctionKind::indicator: return SupportBall{nd.center, nd.radius};
      case FunctionKind::mollified_noise: return SupportBall{nd.center, nd.radius + nd.smoothing_width};
      case FunctionKind::gaussian:
        if (!effective) return std::nullopt;
        return SupportBall{nd.center, nd.sigma * std::sqrt(-2.0 * std::log(kGaussianTailCutoff))};
      case FunctionKind::power_weight: return std::nullopt;
      case FunctionKind::scalar: return support(*nd.children[0].node_, effective);
      case FunctionKind::product: {
        std::optional<SupportBall> best;
        for (const auto& c : nd.children) {
          auto s = support(*c.node_, effective);
          if (s && (!best || s->radius < best->radius)) best = s;
        }
        return best;
      }
      case FunctionKind::sum: {
        std::vector<SupportBall> balls;
        for (const auto& c : nd.children) {
          auto s = support(*c.node_, effective);
          if (!s) return std::nullopt;
          balls.push_back(*s);
        }
        if (balls.empty()) return std::nullopt;
        // bounding ball centered at the first center
        SupportBall out{balls.front().center, 0.0};
        for (const auto& b : balls) {
          double d = 0.0;
          for (int i = 0; i < kMaxDims; ++i) d += (b.center[i] - out.center[i]) * (b.center[i] - out.center[i]);
          out.radius = std::max(out.radius, std::sqrt(d) + b.radius);
        }
        return out;
      }
      case FunctionKind::dilate: {
        auto s = support(*nd.children[0].node_, effective);
        if (!s) return std::nullopt;
        for (auto& c : s->center) c /= nd.lambda;
        s->radius /= nd.lambda;
        return s;
      }
      case FunctionKind::translate: {
        auto s = support(*nd.children[0].node_, effective);
        if (!s) return std::nullopt;
        for (int i = 0; i < kMaxDims; ++i) s->center[i] += nd.center[i];
        return s;
      }
    }
    return std::nullopt;
  }

  static bool is_zero_point(const Point& c) { return c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0; }

  static bool is_even(const Node& nd) {
    switch (nd.kind) {
      case FunctionKind::bump:
      case FunctionKind::gaussian:
      case FunctionKind::indicator: return is_zero_point(nd.center);
      case FunctionKind::power_weight: return true;
      case FunctionKind::mollified_noise: return false;
      case FunctionKind::scalar:
      case FunctionKind::dilate: return is_even(*nd.children[0].node_);
      case FunctionKind::translate: return is_zero_point(nd.center) && is_even(*nd.children[0].node_);
      case FunctionKind::product:
      case FunctionKind::sum:
        return std::all_of(nd.children.begin(), nd.children.end(),
                           [](const AnalyticFunction& c) { return is_even(*c.node_); });
    }
    return false;
  }

  static nlohmann::json point_json(const Point& p) { return nlohmann::json::array({p[0], p[1], p[2]}); }

  static nlohmann::json to_json(const Node& nd) {
    nlohmann::json j;
    j["kind"] = to_string(nd.kind);
    switch (nd.kind) {
      case FunctionKind::bump:
        j["center"] = point_json(nd.center);
        j["radius"] = nd.radius;
        j["amplitude"] = nd.amplitude;
        break;
      case FunctionKind::gaussian:
        j["center"] = point_json(nd.center);
        j["sigma"] = nd.sigma;
        break;
      case FunctionKind::indicator:
        j["center"] = point_json(nd.center);
        j["radius"] = nd.radius;
        break;
      case FunctionKind::power_weight: j["alpha"] = nd.alpha; break;
      case FunctionKind::mollified_noise:
        j["seed"] = nd.seed;
        j["support_radius"] = nd.radius;
        j["smoothing_width"] = nd.smoothing_width;
        j["n_dims"] = nd.n_dims;
        j["center"] = point_json(nd.center);
        break;
      case FunctionKind::product:
      case FunctionKind::sum: {
        auto arr = nlohmann::json::array();
        for (const auto& c : nd.children) arr.push_back(c.to_json());
        j[nd.kind == FunctionKind::sum ? "terms" : "factors"] = arr;
        break;
      }
      case FunctionKind::scalar:
        j["re"] = nd.coefficient.real();
        j["im"] = nd.coefficient.imag();
        j["of"] = nd.children[0].to_json();
        break;
      case FunctionKind::dilate:
        j["lambda"] = nd.lambda;
        j["of"] = nd.children[0].to_json();
        break;
      case FunctionKind::translate:
        j["shift"] = point_json(nd.center);
        j["of"] = nd.children[0].to_json();
        break;
    }
    return j;
  }

  std::shared_ptr<const Node> node_;
};

inline AnalyticFunction bump(const Point& center, double radius, double amplitude = 1.0) {
  if (!(radius > 0.0)) throw DomainError("bump radius must be positive");
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::bump;
  nd.center = center;
  nd.radius = radius;
  nd.amplitude = amplitude;
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

inline AnalyticFunction gaussian(const Point& center, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("gaussian sigma must be positive");
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::gaussian;
  nd.center = center;
  nd.sigma = sigma;
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

/// |x|^{-alpha}. At the origin the evaluation moves to |x| = cell / 2.
inline AnalyticFunction power_weight(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("power_weight exponent must be positive");
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::power_weight;
  nd.alpha = alpha;
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

/// |x|^{beta}, beta > 0, with the same origin policy as power_weight.
inline AnalyticFunction moment_weight(double beta) {
  if (!(beta > 0.0)) throw DomainError("moment_weight exponent must be positive");
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::power_weight;
  nd.alpha = -beta;
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

/// Smooth random function: seeded weights on a lattice of spacing
/// smoothing_width / 2 inside the support ball, each carrying a bump of
/// radius smoothing_width, times a bump cutoff of radius
/// support_radius + smoothing_width.
inline AnalyticFunction mollified_noise(std::uint64_t seed, double support_radius, double smoothing_width,
                                        int n_dims = 1, const Point& center = {}) {
  if (!(smoothing_width > 0.0) || !(smoothing_width < support_radius))
    throw DomainError("mollified_noise requires 0 < smoothing_width < support_radius");
  if (n_dims < 1 || n_dims > kMaxDims) throw DomainError("mollified_noise dimension must be 1, 2 or 3");
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::mollified_noise;
  nd.seed = seed;
  nd.radius = support_radius;
  nd.smoothing_width = smoothing_width;
  nd.n_dims = n_dims;
  nd.center = center;
  nd.spacing = 0.5 * smoothing_width;
  nd.half_count = static_cast<int>(std::floor(support_radius / nd.spacing));
  const int side = 2 * nd.half_count + 1;
  std::size_t total = 1;
  for (int i = 0; i < n_dims; ++i) total *= static_cast<std::size_t>(side);
  nd.weights.assign(total, 0.0);
  std::mt19937_64 rng(seed);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double r2 = 0.0;
    for (int i = n_dims - 1; i >= 0; --i) {
      const int k = static_cast<int>(rem % side) - nd.half_count;
      rem /= side;
      r2 += (k * nd.spacing) * (k * nd.spacing);
    }
    // top 53 bits -> uniform [0,1), mapped to [-1,1)
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (r2 < support_radius * support_radius) nd.weights[flat] = 2.0 * u - 1.0;
  }
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

/// Characteristic function of the open ball B(center, radius).
inline AnalyticFunction indicator(const Point& center, double radius) {
  if (!(radius > 0.0)) throw DomainError("indicator radius must be positive");
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::indicator;
  nd.center = center;
  nd.radius = radius;
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

inline AnalyticFunction product(const AnalyticFunction& f, const AnalyticFunction& g) {
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::product;
  nd.children = {f, g};
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

inline AnalyticFunction sum(std::vector<AnalyticFunction> terms) {
  if (terms.empty()) throw DomainError("sum of zero terms");
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::sum;
  nd.children = std::move(terms);
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

inline AnalyticFunction scalar(Complex c, const AnalyticFunction& f) {
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::scalar;
  nd.coefficient = c;
  nd.children = {f};
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

/// x -> f(lambda x).
inline AnalyticFunction dilate_fn(const AnalyticFunction& f, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("dilation factor must be positive");
  if (lambda == 1.0) return f;
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::dilate;
  nd.lambda = lambda;
  nd.children = {f};
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

/// x -> f(x - shift).
inline AnalyticFunction translate_fn(const AnalyticFunction& f, const Point& shift) {
  AnalyticFunction::Node nd;
  nd.kind = FunctionKind::translate;
  nd.center = shift;
  nd.children = {f};
  return AnalyticFunction(std::make_shared<const AnalyticFunction::Node>(std::move(nd)));
}

namespace detail {

inline void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError("function descriptor must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key == "kind") continue;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
      throw ConfigError("unknown key '" + key + "' in descriptor of kind '" + j.at("kind").get<std::string>() + "'");
  }
}

inline Point point_from_json(const nlohmann::json& j, const char* key) {
  Point p{};
  if (!j.contains(key)) return p;
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() > 3) throw ConfigError(std::string("'") + key + "' must be an array of up to 3 numbers");
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i].get<double>();
  return p;
}

}  // namespace detail

inline AnalyticFunction AnalyticFunction::from_json(const nlohmann::json& j) {
  using detail::check_keys;
  using detail::point_from_json;
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("function descriptor needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "bump") {
      check_keys(j, {"center", "radius", "amplitude"});
      return bump(point_from_json(j, "center"), j.at("radius").get<double>(), j.value("amplitude", 1.0));
    }
    if (kind == "gaussian") {
      check_keys(j, {"center", "sigma"});
      return gaussian(point_from_json(j, "center"), j.at("sigma").get<double>());
    }
    if (kind == "indicator") {
      check_keys(j, {"center", "radius"});
      return indicator(point_from_json(j, "center"), j.at("radius").get<double>());
    }
    if (kind == "power_weight") {
      check_keys(j, {"alpha"});
      const double a = j.at("alpha").get<double>();
      return a < 0.0 ? moment_weight(-a) : power_weight(a);
    }
    if (kind == "mollified_noise") {
      check_keys(j, {"seed", "support_radius", "smoothing_width", "n_dims", "center"});
      return mollified_noise(j.at("seed").get<std::uint64_t>(), j.at("support_radius").get<double>(),
                             j.at("smoothing_width").get<double>(), j.value("n_dims", 1), point_from_json(j, "center"));
    }
    if (kind == "product") {
      check_keys(j, {"factors"});
      const auto& fs = j.at("factors");
      if (!fs.is_array() || fs.size() < 2) throw ConfigError("product needs at least two factors");
      AnalyticFunction acc = from_json(fs[0]);
      for (std::size_t i = 1; i < fs.size(); ++i) acc = product(acc, from_json(fs[i]));
      return acc;
    }
    if (kind == "sum") {
      check_keys(j, {"terms"});
      std::vector<AnalyticFunction> terms;
      for (const auto& t : j.at("terms")) terms.push_back(from_json(t));
      return sum(std::move(terms));
    }
    if (kind == "scalar") {
      check_keys(j, {"re", "im", "of"});
      return scalar(Complex(j.value("re", 1.0), j.value("im", 0.0)), from_json(j.at("of")));
    }
    if (kind == "dilate") {
      check_keys(j, {"lambda", "of"});
      return dilate_fn(from_json(j.at("of")), j.at("lambda").get<double>());
    }
    if (kind == "translate") {
      check_keys(j, {"shift", "of"});
      return translate_fn(from_json(j.at("of")), point_from_json(j, "shift"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad descriptor of kind '" + kind + "': " + e.what());
  }
  throw ConfigError("unknown function kind '" + kind + "'");
}

}  // namespace morrey
