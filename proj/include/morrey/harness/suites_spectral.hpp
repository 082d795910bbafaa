#pragma once

// Suites for the imaginary-power bound, the kernel constant, the
// interpolation inequality and the uniform local bound.

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "morrey/harness/common.hpp"
#include "morrey/quadrature.hpp"
#include "morrey/special.hpp"

namespace morrey::harness {

inline std::vector<double> arithmetic_range(const Json& r) {
  const double lo = r.at("min").get<double>(), hi = r.at("max").get<double>(), step = r.at("step").get<double>();
  if (!(step > 0.0) || hi < lo) throw ConfigError("range needs min <= max and step > 0");
  std::vector<double> v;
  for (int i = 0;; ++i) {
    const double x = lo + i * step;
    if (x > hi + 1e-9 * step) break;
    v.push_back(x);
  }
  return v;
}

// ---------------------------------------------------------------- iu-bound

inline Json iu_bound_defaults() {
  return Json{{"grid", grid_json(1, 32.0, 512)},
              {"ball", ball_defaults()},
              {"p", 1.5},
              {"q", 3.0},
              {"u", {{"min", -40.0}, {"max", 40.0}, {"step", 2.0}}},
              {"trend_min_abs_u", 10.0},
              {"corpus", default_corpus_config(20, 11, {"bump", "noise", "gaussian"})},
              {"tolerances", {{"identity", 1e-12}, {"isometry", 1e-9}, {"refine_drift", 0.10}}}};
}

inline void run_iu_bound(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const double p = cfg["p"], q = cfg["q"];
  const auto base_spec = grid_from_config(cfg["grid"]);
  const int n = base_spec.n_dims;
  ctx.rep.tuples().push_back(validate_morrey_pair(p, q, n).to_json());
  const auto us = arithmetic_range(cfg["u"]);
  const auto corpus = make_corpus(cfg["corpus"], n);
  std::vector<std::pair<std::string, BallFamily>> fams;

  for (Level lv : ctx.levels) {
    const auto spec = level_grid(cfg["grid"], lv);
    audit_corpus(corpus, spec, ctx);
    const auto fam = family_for(spec, cfg);
    fams.emplace_back(std::string("lhs_and_rhs_") + to_string(lv), fam);
    run_cells(ctx, corpus.size(), [&](std::size_t i) {
      std::vector<Row> rows;
      const auto fs = sample(corpus[i].f, spec);
      const double mf = mnorm(fs, p, q, fam);
      const double l2 = lebesgue_norm(fs, 2.0);
      for (double u : us) {
        const auto t = laplacian_power(fs, Complex(0.0, u));
        const double left = mnorm(t, p, q, fam);
        const double right = std::pow(1.0 + std::abs(u), 0.5 * n) * mf;
        rows.push_back({"ratio", lv, corpus[i].id, OrderedJson{{"u", u}}, left, right, left / right});
        const double lt = lebesgue_norm(t, 2.0);
        rows.push_back({"l2", lv, corpus[i].id, OrderedJson{{"u", u}}, lt, l2, lt / l2});
      }
      return rows;
    });
  }
  standard_provenance(ctx, fams, corpus);
  const auto& tol = cfg["tolerances"];

  const auto at_zero = ctx.rep.select("ratio", Level::base, [](const Row& r) { return r.params["u"] == 0.0; });
  double id_err = 0.0;
  for (const auto* r : at_zero) id_err = std::max(id_err, std::abs(r->ratio - 1.0));
  ctx.rep.check("identity_at_u0", "u = 0 gives R = 1", "|R - 1| <= " + num(tol["identity"]), id_err,
                !at_zero.empty() && id_err <= tol["identity"].get<double>(), "ratio");

  const auto all = ctx.rep.select("ratio", Level::base);
  const double sup = max_ratio(all);
  std::string arg;
  for (const auto* r : all)
    if (r->ratio == sup && arg.empty()) arg = r->function_id + " @ u = " + num(r->params["u"].get<double>());
  ctx.rep.summary()["sup_ratio"] = sup;
  ctx.rep.summary()["sup_witness"] = arg;
  ctx.rep.check("sup_finite", "sup over corpus and u of R(f,u) is finite", "finite", sup, std::isfinite(sup), "ratio");

  // trend of s(u) = sup_f R(f,u) for |u| >= trend_min_abs_u, each side separately
  std::map<double, double> curve;
  for (const auto* r : all) {
    const double u = r->params["u"];
    curve[u] = std::max(curve.count(u) ? curve[u] : 0.0, r->ratio);
  }
  const double umin = cfg["trend_min_abs_u"];
  double worst_slope = -std::numeric_limits<double>::infinity();
  OrderedJson slopes = OrderedJson::object();
  for (int side : {-1, 1}) {
    std::vector<double> x, y;
    for (const auto& [u, s] : curve)
      if (side * u >= umin) {
        x.push_back(std::log1p(std::abs(u)));
        y.push_back(std::log(s));
      }
    if (x.size() < 2) continue;
    const double slope = fit_slope(x, y);
    slopes[side < 0 ? "negative_u" : "positive_u"] = slope;
    worst_slope = std::max(worst_slope, slope);
  }
  ctx.rep.summary()["trend_slopes"] = slopes;
  ctx.rep.check("trend_non_increasing", "log-log slope of sup_f R(f,u) for |u| >= " + num(umin), "<= 0", worst_slope,
                worst_slope <= 0.0, "ratio");

  double iso = 0.0;
  for (const auto* r : ctx.rep.select("l2", Level::base)) iso = std::max(iso, std::abs(r->ratio - 1.0));
  ctx.rep.check("l2_isometry", "p = q = 2: imaginary powers preserve the L^2 norm",
                "relative deviation <= " + num(tol["isometry"]), iso, iso <= tol["isometry"].get<double>(), "l2");
  sup_drift_criterion(ctx, "ratio", "iu-bound", tol["refine_drift"]);

  const auto spec = grid_from_config(cfg["grid"]);
  const auto fam = family_for(spec, cfg);
  homogeneity_audit(ctx, corpus.front().id, corpus.front().f, [&](const AnalyticFunction& f) {
    const auto fs = sample(f, spec);
    const auto t = laplacian_power(fs, Complex(0.0, 7.5));
    return mnorm(t, p, q, fam) / (std::pow(8.5, 0.5 * n) * mnorm(fs, p, q, fam));
  });
}

// ---------------------------------------------------------- kernel-constant

inline Json kernel_constant_defaults() {
  return Json{{"dims", {1, 2, 3}},
              {"band", {{"min", 1.0}, {"max", 50.0}, {"step", 1.0}}},
              {"growth", {{"min", 10.0}, {"max", 100.0}, {"step", 1.0}}},
              {"gamma_points", 100},
              {"gamma_seed", 5},
              {"riesz_cases", Json::array({{{"n", 1}, {"alpha", 0.5}}, {{"n", 2}, {"alpha", 1.0}}, {{"n", 3}, {"alpha", 1.5}}})},
              {"tolerances",
               {{"slope", 0.1}, {"gamma", 1e-12}, {"band_max_over_min", 10.0}, {"riesz", 1e-6}, {"symmetry", 1e-12}}}};
}

namespace detail {

// int_0^inf rho^{a} exp(-rho^2 / 2) d rho by quadrature (log map near 0).
inline double radial_gaussian_moment(double a) {
  auto near = [&](double t) -> Complex {
    const double r = std::exp(t);
    return std::pow(r, a + 1.0) * std::exp(-0.5 * r * r);
  };
  auto far = [&](double r) -> Complex { return std::pow(r, a) * std::exp(-0.5 * r * r); };
  const double t_min = std::log(1e-18) / (a + 1.0);
  return (quad::integrate(near, t_min, 0.0, 1e-15).value + quad::integrate(far, 1.0, 40.0, 1e-15).value).real();
}

// Space-side Riesz potential at the origin of a centered Gaussian mixture:
// gamma^{-1} int |y|^{alpha-n} f(y) dy.
inline double riesz_space_side(const AnalyticFunction& f, double alpha, int n) {
  double total = 0.0;
  const double moment = radial_gaussian_moment(alpha - 1.0);
  for (const auto& a : f.gaussian_atoms())
    total += std::abs(a.amplitude) * unit_sphere_area(n) * std::pow(a.sigma, alpha) * moment;
  return total / riesz_constant(alpha, n);
}

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace detail

inline void run_kernel_constant(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& tol = cfg["tolerances"];
  const auto dims = cfg["dims"].get<std::vector<int>>();

  for (int n : dims) {
    const std::string nid = "n=" + std::to_string(n);
    for (double u : arithmetic_range(cfg["band"])) {
      const double c = std::abs(kernel_constant(u, n).value);
      const double b = std::pow(1.0 + u, 0.5 * n);
      ctx.rep.add({"band", Level::base, nid, OrderedJson{{"u", u}, {"case", nid}}, c, b, c / b});
    }
    for (double u : arithmetic_range(cfg["growth"])) {
      const double c = std::abs(kernel_constant(u, n).value);
      ctx.rep.add({"growth", Level::base, nid, OrderedJson{{"u", u}, {"case", nid}}, c, 1.0 + u,
                   std::log(c) / std::log1p(u)});
      const double cm = std::abs(kernel_constant(-u, n).value);
      ctx.rep.add({"kernel_symmetry", Level::base, nid, OrderedJson{{"u", u}}, cm, c, std::abs(cm - c) / c});
    }
  }

  std::mt19937_64 rng(cfg["gamma_seed"].get<std::uint64_t>());
  auto uniform = [&](double a, double b) { return a + (b - a) * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
  const int npts = cfg["gamma_points"];
  for (int i = 0; i < npts; ++i) {
    const Complex z(uniform(-1.0, 10.0), uniform(-100.0, 100.0));
    const std::string id = "z" + std::to_string(i);
    OrderedJson pz{{"re", z.real()}, {"im", z.imag()}};
    const Complex g = complex_gamma(z);
    const Complex g1 = complex_gamma(z + 1.0);
    ctx.rep.add({"gamma_recurrence", Level::base, id, pz, std::abs(g1), std::abs(z * g), detail::rel_err(g1, z * g)});
    const Complex refl = g * complex_gamma(1.0 - z) * morrey::detail::sin_pi(z);
    ctx.rep.add({"gamma_reflection", Level::base, id, pz, std::abs(refl), std::numbers::pi,
                 detail::rel_err(refl, std::numbers::pi)});
    const Complex gc = complex_gamma(std::conj(z));
    ctx.rep.add({"gamma_conjugate", Level::base, id, pz, std::abs(gc), std::abs(g), detail::rel_err(gc, std::conj(g))});
  }
  {
    const Complex gi = complex_gamma(Complex(0.0, 1.0));
    const double want = std::numbers::pi / std::sinh(std::numbers::pi);
    ctx.rep.add({"gamma_values", Level::base, "abs2_gamma_i", OrderedJson::object(), std::norm(gi), want,
                 std::abs(std::norm(gi) - want) / want});
    const double half = complex_gamma(0.5).real();
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    ctx.rep.add({"gamma_values", Level::base, "gamma_half", OrderedJson::object(), half, sqrt_pi,
                 std::abs(half - sqrt_pi) / sqrt_pi});
  }

  for (const auto& rc : cfg["riesz_cases"]) {
    const int n = rc["n"];
    const double alpha = rc["alpha"];
    const auto g = gaussian({}, 1.0);
    const double space = detail::riesz_space_side(g, alpha, n);
    const Complex freq = quadrature_oracle(g, -alpha, {Point{}}, n)[0];
    ctx.rep.add({"riesz_calibration", Level::base, "gaussian", OrderedJson{{"n", n}, {"alpha", alpha}}, freq.real(),
                 space, std::abs(freq - space) / space});
  }

  // verdicts
  double worst_slope = 0.0;
  OrderedJson slopes = OrderedJson::object(), bands = OrderedJson::object();
  double worst_band = 0.0;
  for (int n : dims) {
    const std::string nid = "n=" + std::to_string(n);
    std::vector<double> x, y, bv;
    for (const auto* r : ctx.rep.select("growth", Level::base, [&](const Row& r) { return r.function_id == nid; })) {
      x.push_back(std::log(r->right));
      y.push_back(std::log(r->left));
    }
    const double slope = fit_slope(x, y);
    slopes[nid] = slope;
    worst_slope = std::max(worst_slope, std::abs(slope - 0.5 * n));
    for (const auto* r : ctx.rep.select("band", Level::base, [&](const Row& r) { return r.function_id == nid; }))
      bv.push_back(r->ratio);
    const auto [lo, hi] = std::minmax_element(bv.begin(), bv.end());
    bands[nid] = OrderedJson{{"min", *lo}, {"max", *hi}};
    worst_band = std::max(worst_band, *hi / *lo);
  }
  ctx.rep.summary()["growth_slopes"] = slopes;
  ctx.rep.summary()["band"] = bands;
  ctx.rep.check("growth_slope", "log-log slope of |C(u)| against 1 + u on the growth range equals n/2",
                "|slope - n/2| <= " + num(tol["slope"]), worst_slope, worst_slope <= tol["slope"].get<double>(),
                "growth");
  ctx.rep.check("band", "|C(u)| / (1 + u)^{n/2} stays in a fixed band", "max/min <= " + num(tol["band_max_over_min"]),
                worst_band, worst_band <= tol["band_max_over_min"].get<double>(), "band");
  for (const char* g : {"gamma_recurrence", "gamma_reflection", "gamma_conjugate", "gamma_values"}) {
    double worst = 0.0;
    for (const auto* r : ctx.rep.select(g, Level::base)) worst = std::max(worst, r->ratio);
    ctx.rep.check(g, std::string(g) + " identity", "relative error <= " + num(tol["gamma"]), worst,
                  worst <= tol["gamma"].get<double>(), g);
  }
  double sym = 0.0;
  for (const auto* r : ctx.rep.select("kernel_symmetry", Level::base)) sym = std::max(sym, r->ratio);
  ctx.rep.check("kernel_symmetry", "|C(-u)| = |C(u)|", "relative error <= " + num(tol["symmetry"]), sym,
                sym <= tol["symmetry"].get<double>(), "kernel_symmetry");
  double riesz = 0.0;
  for (const auto* r : ctx.rep.select("riesz_calibration", Level::base)) riesz = std::max(riesz, r->ratio);
  ctx.rep.check("riesz_calibration",
                "space-side kernel gamma^{-1}|x|^{alpha-n} matches the multiplier |xi|^{-alpha} on a Gaussian",
                "relative error <= " + num(tol["riesz"]), riesz, riesz <= tol["riesz"].get<double>(),
                "riesz_calibration");
  standard_provenance(ctx, {}, {});
  ctx.rep.provenance()["riesz_constant"] = "pi^{n/2} 2^alpha Gamma(alpha/2) / Gamma((n - alpha)/2)";
  if (ctx.has(Level::refined)) ctx.rep.provenance()["refine"] = "no lattice in this suite; refinement is a no-op";

  const int n0 = cfg["riesz_cases"][0]["n"];
  const double a0 = cfg["riesz_cases"][0]["alpha"];
  homogeneity_audit(ctx, "gaussian", gaussian({}, 1.0), [&](const AnalyticFunction& f) {
    return std::abs(quadrature_oracle(f, -a0, {Point{}}, n0)[0]) / detail::riesz_space_side(f, a0, n0);
  });
}

// ------------------------------------------------------------ interpolation

inline Json interpolation_defaults() {
  return Json{{"grid", grid_json(1, 256.0, 65536)},
              {"ball", ball_defaults()},
              {"tuples", Json::array({{2.0, 2.0, 2.0, 2.0}, {2.0, 4.0, 3.0, 6.0}, {1.5, 3.0, 2.0, 4.0}})},
              {"alphas", {1.0, 2.0}},
              {"thetas", {0.0, 0.25, 0.5, 0.75, 1.0}},
              {"lambdas", {0.25, 0.5, 1.0, 2.0, 4.0}},
              {"sweep_theta", 0.5},
              {"corpus", default_corpus_config(6, 21, {"bump", "noise"})},
              {"tolerances",
               {{"endpoint", 1e-12}, {"cauchy_schwarz", 1e-9}, {"spread", 0.05}, {"refined_spread", 0.025}}}};
}

namespace detail {

struct InterpolationTerms {
  double lhs, m0, m1;
  double ratio(double theta) const { return lhs / (std::pow(m0, 1.0 - theta) * std::pow(m1, theta)); }
};

inline InterpolationTerms interpolation_terms(const GridFunction& fs, const ExponentTuple& t, const BallFamily& fam) {
  const double alpha = t["alpha"], theta = t["theta"];
  const auto top = laplacian_power(fs, alpha);
  const auto mid = laplacian_power(fs, alpha * theta);
  return {mnorm(mid, t["p"], t["q"], fam), mnorm(fs, t["p0"], t["q0"], fam), mnorm(top, t["p1"], t["q1"], fam)};
}

}  // namespace detail

inline void run_interpolation(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& tol = cfg["tolerances"];
  const int n = grid_from_config(cfg["grid"]).n_dims;
  const auto corpus = make_corpus(cfg["corpus"], n);
  const auto alphas = cfg["alphas"].get<std::vector<double>>();
  const auto thetas = cfg["thetas"].get<std::vector<double>>();
  const auto lambdas = cfg["lambdas"].get<std::vector<double>>();
  const double sweep_theta = cfg["sweep_theta"];

  struct Case {
    std::vector<double> tuple;
    double alpha;
    std::string key;
    bool all_l2;
  };
  std::vector<Case> cases;
  for (const auto& tj : cfg["tuples"]) {
    const auto tv = tj.get<std::vector<double>>();
    if (tv.size() != 4) throw ConfigError("interpolation tuples are [p0, q0, p1, q1]");
    for (double a : alphas) {
      for (double th : thetas) ctx.rep.tuples().push_back(validate_interpolation(tv[0], tv[1], tv[2], tv[3], th, n, a).to_json());
      const bool l2 = tv[0] == 2.0 && tv[1] == 2.0 && tv[2] == 2.0 && tv[3] == 2.0;
      cases.push_back({tv, a, "(" + num(tv[0]) + "," + num(tv[1]) + "," + num(tv[2]) + "," + num(tv[3]) + ") alpha=" + num(a), l2});
    }
  }

  std::vector<std::pair<std::string, BallFamily>> fams;
  for (Level lv : ctx.levels) {
    const auto spec = level_grid(cfg["grid"], lv);
    const auto fam = family_for(spec, cfg);
    fams.emplace_back(std::string("lhs_and_rhs_") + to_string(lv), fam);
    std::vector<AnalyticFunction> dilated;
    for (const auto& e : corpus)
      for (double l : lambdas) dilated.push_back(dilate_fn(e.f, l));
    for (const auto& d : dilated) audit_supports({{"", "", d}}, spec);
    ctx.rep.provenance()["support_audit"] = "every dilated corpus support lies >= 4 cells inside the box";

    run_cells(ctx, corpus.size() * cases.size(), [&](std::size_t cell) {
      const auto& e = corpus[cell / cases.size()];
      const auto& c = cases[cell % cases.size()];
      std::vector<Row> rows;
      const auto group = c.all_l2 ? "all_l2" : "morrey";
      const auto fs = sample(e.f, spec);
      const auto top = laplacian_power(fs, c.alpha);
      const auto t0 = validate_interpolation(c.tuple[0], c.tuple[1], c.tuple[2], c.tuple[3], 0.0, n, c.alpha);
      const double m0 = mnorm(fs, t0["p0"], t0["q0"], fam);
      const double m1 = mnorm(top, t0["p1"], t0["q1"], fam);
      double at_sweep = std::numeric_limits<double>::quiet_NaN();
      for (double th : thetas) {
        const auto t = validate_interpolation(c.tuple[0], c.tuple[1], c.tuple[2], c.tuple[3], th, n, c.alpha);
        const auto mid = laplacian_power(fs, c.alpha * th);
        const double lhs = mnorm(mid, t["p"], t["q"], fam);
        const double rhs = std::pow(m0, 1.0 - th) * std::pow(m1, th);
        rows.push_back({group, lv, e.id, OrderedJson{{"theta", th}, {"case", c.key}}, lhs, rhs, lhs / rhs});
        if (th == sweep_theta) at_sweep = lhs / rhs;
      }
      const auto ts = validate_interpolation(c.tuple[0], c.tuple[1], c.tuple[2], c.tuple[3], sweep_theta, n, c.alpha);
      for (double l : lambdas) {
        double r = at_sweep;
        if (l != 1.0 || std::isnan(r)) {
          const auto gs = sample(dilate_fn(e.f, l), spec);
          r = detail::interpolation_terms(gs, ts, fam).ratio(sweep_theta);
        }
        rows.push_back({std::string(group) + "_dilation", lv, e.id,
                        OrderedJson{{"lambda", l}, {"theta", sweep_theta}, {"case", c.key}}, r, 1.0, r});
      }
      return rows;
    });
  }
  standard_provenance(ctx, fams, corpus);

  double endpoint = 0.0;
  for (const char* g : {"all_l2", "morrey"})
    for (const auto* r : ctx.rep.select(g, Level::base, [](const Row& r) {
           const double th = r.params["theta"];
           return th == 0.0 || th == 1.0;
         }))
      endpoint = std::max(endpoint, std::abs(r->ratio - 1.0));
  ctx.rep.check("endpoints", "theta in {0, 1} gives ratio 1", "|ratio - 1| <= " + num(tol["endpoint"]), endpoint,
                endpoint <= tol["endpoint"].get<double>(), "all_l2, morrey");
  const double cs = max_ratio(ctx.rep.select("all_l2", Level::base));
  ctx.rep.check("all_l2_cauchy_schwarz", "all-L^2 tuple: ratio <= 1 by spectral Cauchy-Schwarz",
                "ratio <= 1 + " + num(tol["cauchy_schwarz"]), cs, cs <= 1.0 + tol["cauchy_schwarz"].get<double>(),
                "all_l2");
  ctx.rep.summary()["sup_ratio_morrey"] = max_ratio(ctx.rep.select("morrey", Level::base));
  ctx.rep.summary()["all_l2_dilation_max_spread"] = max_spread(ctx.rep.select("all_l2_dilation", Level::base)).max_spread;
  spread_criteria(ctx, "morrey_dilation", "interpolation", tol["spread"], tol["refined_spread"]);

  const auto spec = grid_from_config(cfg["grid"]);
  const auto fam = family_for(spec, cfg);
  const auto& c = cases.back();
  const auto t = validate_interpolation(c.tuple[0], c.tuple[1], c.tuple[2], c.tuple[3], sweep_theta, n, c.alpha);
  homogeneity_audit(ctx, corpus.front().id, corpus.front().f, [&](const AnalyticFunction& f) {
    return detail::interpolation_terms(sample(f, spec), t, fam).ratio(sweep_theta);
  });
}

// ------------------------------------------------------ uniform-local-bound

inline Json uniform_local_bound_defaults() {
  return Json{{"grid", grid_json(1, 32.0, 512)},
              {"bump", {{"radius", 1.0}, {"amplitude", 1.0}}},
              {"ball_radius", 2.0},
              {"alpha", 1.0},
              {"vs", {0.0, 0.25, 0.5, 0.75, 1.0}},
              {"ws", {1.0, 2.0, 4.0, 8.0, "inf"}}};
}

/// L^infinity majorant of (-Delta)^{s/2} f over 0 <= s <= alpha: split the
/// inverse transform at |xi| = 1 and bound the high part by
/// sup |xi|^{2N} |F| with 2N > n + alpha.
inline double local_majorant(const SpectrumFunction& F, double alpha) {
  const auto& s = F.spec();
  const int n = s.n_dims;
  const int big_n = static_cast<int>(std::floor(n + alpha)) + 1;
  double sup_f = 0.0, sup_w = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double a = std::abs(F[k]);
    const double r = norm(s.frequency_point(k), n);
    sup_f = std::max(sup_f, a);
    sup_w = std::max(sup_w, std::pow(r, 2 * big_n) * a);
  }
  return std::pow(2.0 * std::numbers::pi, -n) *
         (sup_f * unit_ball_volume(n) + sup_w * unit_sphere_area(n) / (2.0 * big_n - alpha - n));
}

inline void run_uniform_local_bound(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const double alpha = cfg["alpha"];
  const double rb = cfg["ball_radius"];
  std::vector<double> ws;
  for (const auto& w : cfg["ws"]) ws.push_back(w.is_string() ? std::numeric_limits<double>::infinity() : w.get<double>());
  const auto vs = cfg["vs"].get<std::vector<double>>();
  const auto f = bump({}, cfg["bump"]["radius"], cfg["bump"]["amplitude"]);

  auto evaluate = [&](const AnalyticFunction& fn, Level lv, std::vector<Row>* rows) {
    const auto spec = level_grid(cfg["grid"], lv);
    const int n = spec.n_dims;
    const auto fs = sample(fn, spec);
    const double ball = ball_volume(n, rb);
    const double majorant = local_majorant(forward_transform(fs), alpha) * std::max(1.0, ball);
    double worst = 0.0;
    for (double v : vs) {
      const auto g = laplacian_power(fs, alpha * v);
      double vmax = 0.0, vinf = 0.0;
      for (double w : ws) {
        const double val = ball_local_norm(g, w, Point{}, rb);
        worst = std::max(worst, val / majorant);
        vmax = std::max(vmax, val);
        if (std::isinf(w)) vinf = val;
        if (rows)
          rows->push_back({"local", lv, "bump", OrderedJson{{"v", v}, {"w", std::isinf(w) ? OrderedJson("inf") : OrderedJson(w)}},
                           val, majorant, val / majorant});
        if (rows && v == 0.0 && w == 2.0) {
          const double direct = ball_local_norm(fs, 2.0, Point{}, rb);
          rows->push_back({"zero_power", lv, "bump", OrderedJson{{"v", v}, {"w", w}}, val, direct, val / direct});
        }
      }
      if (rows)
        rows->push_back({"w_spread", lv, "bump", OrderedJson{{"v", v}}, vmax, std::max(1.0, ball) * vinf,
                         vmax / (std::max(1.0, ball) * vinf)});
    }
    return worst;
  };
  for (Level lv : ctx.levels) {
    std::vector<Row> rows;
    evaluate(f, lv, &rows);
    ctx.rep.add_rows(std::move(rows));
  }
  standard_provenance(ctx, {}, {});
  ctx.rep.provenance()["majorant"] =
      "(2 pi)^{-n} (sup|F| |B(0,1)| + sup |xi|^{2N}|F| |S^{n-1}| / (2N - alpha - n)) max(1, |B|), N = floor(n + alpha) + 1, "
      "sups over the lattice spectrum";

  for (Level lv : ctx.levels) {
    const std::string sfx = lv == Level::base ? "" : "_refined";
    const double m = max_ratio(ctx.rep.select("local", lv));
    ctx.rep.check("majorant" + sfx, "max over (v, w) of ||(-Delta)^{alpha v/2} f||_{L^w(B)} / majorant", "<= 1", m,
                  m <= 1.0, "local");
    const auto z = ctx.rep.select("zero_power", lv);
    const double ze = z.empty() ? 1.0 : std::abs(z.front()->ratio - 1.0);
    ctx.rep.check("zero_power" + sfx, "v = 0, w = 2 equals ||f||_{L^2(B)}", "|ratio - 1| <= 1e-15", ze, ze <= 1e-15,
                  "zero_power");
    const double ws_max = max_ratio(ctx.rep.select("w_spread", lv));
    ctx.rep.check("w_spread" + sfx, "at fixed v, max over w is bounded by max(1,|B|) ||.||_{L^inf(B)}", "<= 1",
                  ws_max, ws_max <= 1.0, "w_spread");
  }
  homogeneity_audit(ctx, "bump", f, [&](const AnalyticFunction& fn) { return evaluate(fn, Level::base, nullptr); });
}

}  // namespace morrey::harness
