#pragma once

// Suites for the weighted inequalities: Olsen, Hardy, kernel decay, the
// Riesz round trip and the two Heisenberg-type inequalities.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "morrey/harness/common.hpp"
#include "morrey/harness/suites_spectral.hpp"

namespace morrey::harness {

inline std::string tuple_key(std::initializer_list<double> v) {
  std::string s = "(";
  bool first = true;
  for (double x : v) {
    s += (first ? "" : ",") + num(x);
    first = false;
  }
  return s + ")";
}

inline std::vector<AnalyticFunction> dilates(const std::vector<CorpusEntry>& corpus, const std::vector<double>& lambdas) {
  std::vector<AnalyticFunction> out;
  for (const auto& e : corpus)
    for (double l : lambdas) out.push_back(dilate_fn(e.f, l));
  return out;
}

inline void audit_dilates(SuiteContext& ctx, const std::vector<CorpusEntry>& corpus, const std::vector<double>& lambdas,
                          const GridSpec& spec) {
  for (const auto& d : dilates(corpus, lambdas)) audit_supports({{"", "", d}}, spec);
  ctx.rep.provenance()["support_audit"] = "every dilated corpus support lies >= 4 cells inside the box";
}

/// Weight sample with the origin cell replaced by a 4^n-point midpoint
/// quadrature of |x|^{-alpha p}, taken back to the power 1/p.
inline GridFunction weight_with_quadrature_origin(const GridSpec& spec, double alpha, double p) {
  auto w = sample(power_weight(alpha), spec).values();
  const int sub = 4;
  const double h = spec.spacing;
  double acc = 0.0;
  int count = 0;
  std::array<int, 3> k{0, 0, 0};
  const int total = static_cast<int>(std::pow(sub, spec.n_dims));
  for (int m = 0; m < total; ++m) {
    int r = m;
    double s2 = 0.0;
    for (int d = 0; d < spec.n_dims; ++d) {
      k[d] = r % sub;
      r /= sub;
      const double x = (k[d] + 0.5) * h / sub - 0.5 * h;
      s2 += x * x;
    }
    acc += std::pow(std::sqrt(s2), -alpha * p);
    ++count;
  }
  std::array<int, 3> origin{0, 0, 0};
  for (int d = 0; d < spec.n_dims; ++d) origin[d] = spec.points_per_axis / 2;
  w[spec.ravel(origin)] = std::pow(acc / count, 1.0 / p);
  return GridFunction(spec, std::move(w));
}

/// Relative change of || W g ||_{M^p_q} when the origin policy is swapped
/// for the refined local quadrature.
inline void origin_policy_rows(SuiteContext& ctx, const std::vector<CorpusEntry>& corpus,
                               const std::vector<ExponentTuple>& tuples, const GridSpec& spec, const BallFamily& fam) {
  const auto& e = corpus.front();
  const auto gs = sample(e.f, spec);
  for (const auto& t : tuples) {
    const double p = t["p"], q = t["q"], alpha = t["alpha"];
    const double a = mnorm(pointwise_multiply(sample(power_weight(alpha), spec), gs), p, q, fam);
    const double b = mnorm(pointwise_multiply(weight_with_quadrature_origin(spec, alpha, p), gs), p, q, fam);
    ctx.rep.add({"origin_policy", Level::base, e.id, OrderedJson{{"case", tuple_key({p, q, alpha})}}, a, b,
                 std::abs(a / b - 1.0)});
  }
}

inline void origin_policy_criterion(SuiteContext& ctx, double tol) {
  const double m = max_ratio(ctx.rep.select("origin_policy", Level::base));
  ctx.rep.check("origin_policy", "half-cell origin offset vs 4^n-point quadrature on the origin cell, LHS norm",
                "relative change <= " + num(tol), m, m <= tol, "origin_policy");
}

// -------------------------------------------------------------------- olsen

inline Json olsen_defaults() {
  return Json{{"grid", grid_json(1, 256.0, 65536)},
              {"ball", ball_defaults()},
              {"tuples", Json::array({{1.5, 3.0, 0.25}, {2.0, 2.0, 0.25}})},
              {"lambdas", {0.5, 1.0, 2.0}},
              {"shift", 3.0},
              {"corpus", default_corpus_config(4, 61, {"bump"})},
              {"tolerances",
               {{"refine", 0.05}, {"spread", 0.05}, {"refined_spread", 0.025}, {"translated_band", 0.05},
                {"origin_policy", 0.05}}}};
}

inline void run_olsen(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& tol = cfg["tolerances"];
  const int n = grid_from_config(cfg["grid"]).n_dims;
  const auto corpus = make_corpus(cfg["corpus"], n);
  const auto lambdas = cfg["lambdas"].get<std::vector<double>>();
  const double shift = cfg["shift"];
  std::vector<ExponentTuple> tuples;
  for (const auto& tj : cfg["tuples"]) {
    const auto v = tj.get<std::vector<double>>();
    tuples.push_back(validate_olsen(v[0], v[1], v[2], n));
    ctx.rep.tuples().push_back(tuples.back().to_json());
  }
  // the two-resolution comparison is part of the suite
  std::vector<Level> levels{Level::base, Level::refined};
  ctx.levels = levels;

  std::vector<std::pair<std::string, BallFamily>> fams;
  for (Level lv : levels) {
    const auto spec = level_grid(cfg["grid"], lv);
    const auto fam = family_for(spec, cfg);
    fams.emplace_back(std::string("all_norms_") + to_string(lv), fam);
    audit_dilates(ctx, corpus, lambdas, spec);
    std::vector<GridFunction> weights;
    std::vector<double> wnorms;
    for (const auto& t : tuples) {
      weights.push_back(sample(power_weight(t["alpha"]), spec));
      wnorms.push_back(mnorm(weights.back(), t["u"], t["v"], fam));
      ctx.rep.add({"weight_norm", lv, "W", OrderedJson{{"case", tuple_key({t["p"], t["q"], t["alpha"]})}}, wnorms.back(),
                   1.0, wnorms.back()});
    }
    run_cells(ctx, corpus.size() * tuples.size(), [&](std::size_t cell) {
      const auto& e = corpus[cell / tuples.size()];
      const std::size_t ti = cell % tuples.size();
      const auto& t = tuples[ti];
      const double p = t["p"], q = t["q"], alpha = t["alpha"];
      const std::string key = tuple_key({p, q, alpha});
      auto ratio_of = [&](const AnalyticFunction& g, double* l, double* r) {
        const auto gs = sample(g, spec);
        const auto f = laplacian_power(gs, alpha);
        *l = mnorm(pointwise_multiply(weights[ti], gs), p, q, fam);
        *r = wnorms[ti] * mnorm(f, p, q, fam);
      };
      std::vector<Row> rows;
      for (double lam : lambdas) {
        double l, r;
        ratio_of(dilate_fn(e.f, lam), &l, &r);
        rows.push_back({"dilation", lv, e.id, OrderedJson{{"lambda", lam}, {"case", key}}, l, r, l / r});
        if (lam == 1.0) rows.push_back({"ratio", lv, e.id, OrderedJson{{"case", key}}, l, r, l / r});
      }
      double l, r;
      ratio_of(translate_fn(e.f, Point{shift, 0.0, 0.0}), &l, &r);
      rows.push_back({"translated", lv, e.id, OrderedJson{{"shift", shift}, {"case", key}}, l, r, l / r});
      return rows;
    });
  }
  {
    const auto spec = grid_from_config(cfg["grid"]);
    origin_policy_rows(ctx, corpus, tuples, spec, family_for(spec, cfg));
  }
  standard_provenance(ctx, fams, corpus);
  ctx.rep.provenance()["weight_note"] =
      "for p = q the weight |x|^{-alpha} lies in weak L^{n/alpha} only; its discrete M^u_v norm grows slowly with L/h";

  const auto base = ctx.rep.select("ratio", Level::base);
  const double sup = max_ratio(base);
  ctx.rep.summary()["sup_ratio"] = sup;
  ctx.rep.check("ratio_finite", "sup of the Olsen ratio over the corpus", "finite", sup, std::isfinite(sup), "ratio");
  // per-function drift between resolutions
  std::map<std::string, double> b;
  for (const auto* r : base) b[r->function_id + r->params["case"].get<std::string>()] = r->ratio;
  double drift = 0.0;
  OrderedJson per = OrderedJson::object();
  for (const auto* r : ctx.rep.select("ratio", Level::refined)) {
    const std::string k = r->function_id + r->params["case"].get<std::string>();
    const double d = std::abs(r->ratio - b[k]) / b[k];
    per[r->function_id + " " + r->params["case"].get<std::string>()] = d;
    drift = std::max(drift, d);
  }
  ctx.rep.stability()["ratio_drift_per_function"] = per;
  ctx.rep.check("refinement_stability", "Olsen ratio per function, default vs refined grid",
                "relative change <= " + num(tol["refine"]), drift, drift <= tol["refine"].get<double>(), "ratio");
  spread_criteria(ctx, "dilation", "Olsen", tol["spread"], tol["refined_spread"]);
  const double tr = max_ratio(ctx.rep.select("translated", Level::base));
  const double band = tol["translated_band"];
  ctx.rep.summary()["translated_sup_ratio"] = tr;
  ctx.rep.check("translated", "translated g does not exceed the centered sup beyond the band",
                "<= sup * (1 + " + num(band) + ")", tr / sup, tr <= sup * (1.0 + band), "translated, ratio");
  origin_policy_criterion(ctx, tol["origin_policy"]);

  const auto spec = grid_from_config(cfg["grid"]);
  const auto fam = family_for(spec, cfg);
  const auto& t = tuples.front();
  const auto w = sample(power_weight(t["alpha"]), spec);
  const double wn = mnorm(w, t["u"], t["v"], fam);
  homogeneity_audit(ctx, corpus.front().id, corpus.front().f, [&](const AnalyticFunction& g) {
    const auto gs = sample(g, spec);
    return mnorm(pointwise_multiply(w, gs), t["p"], t["q"], fam) /
           (wn * mnorm(laplacian_power(gs, t["alpha"]), t["p"], t["q"], fam));
  });
}

// -------------------------------------------------------------------- hardy

inline Json hardy_defaults() {
  return Json{{"grid", grid_json(1, 128.0, 131072)},
              {"ball", ball_defaults()},
              {"tuples", Json::array({{1.5, 3.0, 0.2}, {2.0, 2.0, 0.25}, {1.2, 2.0, 0.3}})},
              {"lambdas", {0.25, 0.5, 1.0, 2.0, 4.0}},
              {"alpha_limit", {{"alpha", 0.01}, {"p", 2.0}, {"q", 2.0}, {"box_factor", 8}}},
              {"corpus", default_corpus_config(30, 31, {"bump", "noise"})},
              {"tolerances",
               {{"spread", 0.05}, {"refined_spread", 0.025}, {"refine_sup", 0.10}, {"alpha_limit", 0.02}, {"origin_policy", 0.05}}}};
}

inline void run_hardy(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& tol = cfg["tolerances"];
  const int n = grid_from_config(cfg["grid"]).n_dims;
  const auto corpus = make_corpus(cfg["corpus"], n);
  const auto lambdas = cfg["lambdas"].get<std::vector<double>>();
  std::vector<ExponentTuple> tuples;
  for (const auto& tj : cfg["tuples"]) {
    const auto v = tj.get<std::vector<double>>();
    tuples.push_back(validate_hardy(v[0], v[1], v[2], n));
    ctx.rep.tuples().push_back(tuples.back().to_json());
  }
  const auto& lc = cfg["alpha_limit"];
  const auto limit = validate_hardy(lc["p"], lc["q"], lc["alpha"], n);
  ctx.rep.tuples().push_back(limit.to_json());

  std::vector<std::pair<std::string, BallFamily>> fams;
  for (Level lv : ctx.levels) {
    const auto spec = level_grid(cfg["grid"], lv);
    const auto fam = family_for(spec, cfg);
    fams.emplace_back(std::string("lhs_and_rhs_") + to_string(lv), fam);
    audit_dilates(ctx, corpus, lambdas, spec);
    std::vector<GridFunction> weights;
    std::vector<double> weak_w;
    for (const auto& t : tuples) {
      weights.push_back(sample(power_weight(t["alpha"]), spec));
      weak_w.push_back(weak_norm(weights.back(), t["v"]));
    }

    run_cells(ctx, corpus.size() * tuples.size(), [&](std::size_t cell) {
      const auto& e = corpus[cell / tuples.size()];
      const std::size_t ti = cell % tuples.size();
      const auto& t = tuples[ti];
      const double p = t["p"], q = t["q"], alpha = t["alpha"];
      const std::string key = tuple_key({p, q, alpha});
      std::vector<Row> rows;
      for (double lam : lambdas) {
        const auto gs = sample(dilate_fn(e.f, lam), spec);
        const auto wg = pointwise_multiply(weights[ti], gs);
        const auto f = laplacian_power(gs, alpha);
        const double l = mnorm(wg, p, q, fam), r = mnorm(f, p, q, fam);
        rows.push_back({"dilation", lv, e.id, OrderedJson{{"lambda", lam}, {"case", key}}, l, r, l / r});
        if (lam != 1.0) continue;
        rows.push_back({"hardy", lv, e.id, OrderedJson{{"case", key}}, l, r, l / r});
        if (p == q) {
          const double wl = weak_norm(wg, q);
          const double wr = weak_w[ti] * lebesgue_norm(f, q);
          rows.push_back({"weak_route", lv, e.id, OrderedJson{{"case", key}, {"v", t["v"]}}, wl, wr, wl / wr});
        }
      }
      return rows;
    });
  }
  {
    const auto spec = grid_from_config(cfg["grid"]);
    origin_policy_rows(ctx, corpus, tuples, spec, family_for(spec, cfg));
    // the zero-mode rule removes the mean, an O(h^n / L^n) defect in cell count
    // that matters only as alpha -> 0; this check runs on an enlarged box
    const int k = lc["box_factor"];
    const auto big = build_grid(spec.n_dims, k * spec.extent, k * spec.points_per_axis);
    const auto big_fam = family_for(big, cfg);
    const auto w = sample(power_weight(limit["alpha"]), big);
    const double lp = limit["p"], lq = limit["q"];
    run_cells(ctx, corpus.size(), [&](std::size_t i) {
      const auto gs = sample(corpus[i].f, big);
      const double l0 = mnorm(pointwise_multiply(w, gs), lp, lq, big_fam);
      const double r0 = mnorm(laplacian_power(gs, limit["alpha"]), lp, lq, big_fam);
      return std::vector<Row>{{"alpha_limit", Level::base, corpus[i].id,
                               OrderedJson{{"alpha", limit["alpha"]}, {"case", tuple_key({lp, lq, limit["alpha"]})},
                                           {"box_factor", k}},
                               l0, r0, l0 / r0}};
    });
  }
  standard_provenance(ctx, fams, corpus);

  const double sup = max_ratio(ctx.rep.select("hardy", Level::base));
  ctx.rep.summary()["sup_ratio"] = sup;
  ctx.rep.check("ratio_finite", "sup of the Hardy ratio over the corpus", "finite", sup, std::isfinite(sup), "hardy");
  spread_criteria(ctx, "dilation", "Hardy", tol["spread"], tol["refined_spread"]);
  sup_drift_criterion(ctx, "hardy", "Hardy", tol["refine_sup"]);
  double lim = 0.0;
  for (const auto* r : ctx.rep.select("alpha_limit", Level::base)) lim = std::max(lim, std::abs(r->ratio - 1.0));
  ctx.rep.check("alpha_limit", "alpha = " + num(lc["alpha"]) + ": ratio tends to 1",
                "|ratio - 1| <= " + num(tol["alpha_limit"]), lim, lim <= tol["alpha_limit"].get<double>(),
                "alpha_limit");
  origin_policy_criterion(ctx, tol["origin_policy"]);
  const auto weak = ctx.rep.select("weak_route", Level::base);
  const double ws = weak.empty() ? 0.0 : max_ratio(weak);
  ctx.rep.summary()["weak_route_sup_ratio"] = ws;
  ctx.rep.check("weak_route", "p = q: || |x|^{-alpha} g ||_{wL^q} / (||W||_{wL^v} ||(-Delta)^{alpha/2} g||_{L^q})",
                "finite and positive", ws, std::isfinite(ws) && (weak.empty() || ws > 0.0), "weak_route");

  const auto spec = grid_from_config(cfg["grid"]);
  const auto fam = family_for(spec, cfg);
  const auto& t = tuples.front();
  const auto w = sample(power_weight(t["alpha"]), spec);
  homogeneity_audit(ctx, corpus.front().id, corpus.front().f, [&](const AnalyticFunction& g) {
    const auto gs = sample(g, spec);
    return mnorm(pointwise_multiply(w, gs), t["p"], t["q"], fam) /
           mnorm(laplacian_power(gs, t["alpha"]), t["p"], t["q"], fam);
  });
}

// -------------------------------------------------------------------- decay

inline Json decay_defaults() {
  return Json{{"cases", Json::array({{{"alpha", 0.5}, {"grid", grid_json(1, 256.0, 4096)}, {"doubled", grid_json(1, 512.0, 8192)}},
                                     {{"alpha", 1.0}, {"grid", grid_json(1, 256.0, 4096)}, {"doubled", grid_json(1, 512.0, 8192)}},
                                     {{"alpha", 0.5}, {"grid", grid_json(2, 128.0, 512)}, {"doubled", grid_json(2, 256.0, 1024)}}})},
              {"bump_radius", 1.0},
              {"bins", 40},
              {"inner_factor", 3.0},
              {"outer_fraction", 0.25},
              {"tolerances", {{"slope", 0.2}, {"doubling", 0.05}}}};
}

namespace detail {

struct DecayProfile {
  std::vector<Row> rows;
  double near_max = 0.0;
  double majorant = 0.0;
};

inline DecayProfile decay_profile(const AnalyticFunction& g, const GridSpec& spec, double alpha, double r_in,
                                  double r_out, int bins, const std::string& key, const std::string& box, Level lv) {
  const auto gs = sample(g, spec);
  const auto F = forward_transform(gs);
  const auto w = inverse_transform(apply_power(F, alpha));
  DecayProfile out;
  out.majorant = local_majorant(F, alpha);
  std::vector<double> sr(bins, 0.0), sw(bins, 0.0);
  std::vector<long> cnt(bins, 0);
  const double lr0 = std::log(r_in), lr1 = std::log(r_out);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double r = norm(spec.point(j), spec.n_dims);
    const double a = std::abs(w[j]);
    if (r <= r_in) out.near_max = std::max(out.near_max, a);
    if (r < r_in || r >= r_out) continue;
    const int b = std::min(bins - 1, static_cast<int>((std::log(r) - lr0) / (lr1 - lr0) * bins));
    sr[b] += r;
    sw[b] += a;
    cnt[b]++;
  }
  for (int b = 0; b < bins; ++b) {
    if (cnt[b] == 0) continue;
    const double mr = sr[b] / cnt[b], mw = sw[b] / cnt[b];
    out.rows.push_back({"far_field", lv, "bump", OrderedJson{{"case", key}, {"box", box}, {"bin", b}, {"points", cnt[b]}},
                        mr, mw, mw});
  }
  out.rows.push_back({"near_field", lv, "bump", OrderedJson{{"case", key}, {"box", box}}, out.near_max, out.majorant,
                      out.near_max / out.majorant});
  return out;
}

}  // namespace detail

inline void run_decay(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& tol = cfg["tolerances"];
  const double R = cfg["bump_radius"];
  const int bins = cfg["bins"];
  const double inner = cfg["inner_factor"], outer = cfg["outer_fraction"];
  std::vector<std::string> keys;
  struct Job {
    std::string key, box;
    GridSpec spec;
    double alpha;
  };
  std::vector<Job> jobs;
  for (const auto& c : cfg["cases"]) {
    const double alpha = c["alpha"];
    const auto g0 = grid_from_config(c["grid"]);
    const std::string key = "n=" + std::to_string(g0.n_dims) + " alpha=" + num(alpha);
    if (!(alpha > 0.0 && alpha <= g0.n_dims)) throw ConfigError("decay needs 0 < alpha <= n");
    keys.push_back(key);
    jobs.push_back({key, "default", g0, alpha});
    jobs.push_back({key, "doubled", grid_from_config(c["doubled"]), alpha});
  }
  const auto g = bump({}, R);
  run_cells(ctx, jobs.size(), [&](std::size_t i) {
    const auto& j = jobs[i];
    const double r_out = outer * j.spec.extent;
    if (!(r_out > inner * R * 1.5)) throw ConfigError("decay annulus too small for a fit in case " + j.key);
    return detail::decay_profile(g, j.spec, j.alpha, inner * R, r_out, bins, j.key, j.box, Level::base).rows;
  });
  standard_provenance(ctx, {}, {});
  if (ctx.has(Level::refined))
    ctx.rep.provenance()["refine"] = "covered by the built-in box doubling; no further refinement";

  double worst_slope = 0.0, worst_doubling = 0.0, worst_near = 0.0;
  OrderedJson slopes = OrderedJson::object();
  for (const auto& key : keys) {
    std::map<std::string, double> s;
    for (const char* box : {"default", "doubled"}) {
      std::vector<double> x, y;
      for (const auto* r : ctx.rep.select("far_field", Level::base, [&](const Row& r) {
             return r.params["case"] == key && r.params["box"] == box;
           })) {
        x.push_back(std::log(r->left));
        y.push_back(std::log(r->right));
      }
      if (x.size() < 5) throw ConfigError("annulus too small for a fit in case " + key);
      s[box] = fit_slope(x, y);
    }
    const int n = key[2] - '0';
    const double alpha = std::stod(key.substr(key.find("alpha=") + 6));
    slopes[key] = OrderedJson{{"default", s["default"]}, {"doubled", s["doubled"]}, {"expected", -(n + alpha)}};
    worst_slope = std::max(worst_slope, std::abs(s["default"] + n + alpha));
    worst_doubling = std::max(worst_doubling, std::abs(s["doubled"] - s["default"]));
  }
  for (const auto* r : ctx.rep.select("near_field", Level::base)) worst_near = std::max(worst_near, r->ratio);
  ctx.rep.summary()["slopes"] = slopes;
  ctx.rep.check("far_field_slope", "log-log slope of |(-Delta)^{alpha/2} g| over the annulus [3R, L/4]",
                "|slope + n + alpha| <= " + num(tol["slope"]), worst_slope, worst_slope <= tol["slope"].get<double>(),
                "far_field");
  ctx.rep.check("box_doubling", "slope change when L doubles", "<= " + num(tol["doubling"]), worst_doubling,
                worst_doubling <= tol["doubling"].get<double>(), "far_field");
  ctx.rep.check("near_field", "near-field max against the uniform local majorant", "<= 1", worst_near,
                worst_near <= 1.0, "near_field");

  const auto& j = jobs.front();
  homogeneity_audit(ctx, "bump", g, [&](const AnalyticFunction& f) {
    const auto prof = detail::decay_profile(f, j.spec, j.alpha, inner * R, outer * j.spec.extent, bins, j.key, j.box,
                                            Level::base);
    std::vector<double> x, y;
    for (const auto& r : prof.rows)
      if (r.group == "far_field") {
        x.push_back(std::log(r.left));
        y.push_back(std::log(r.right));
      }
    return -fit_slope(x, y);
  });
}

// ---------------------------------------------------------------- roundtrip

inline Json roundtrip_defaults() {
  return Json{{"cases", Json::array({{{"n", 1}, {"alpha", 0.25}}, {{"n", 1}, {"alpha", 0.5}}, {{"n", 2}, {"alpha", 1.0}},
                                     {{"n", 2}, {"alpha", 1.5}}})},
              {"grids", {{"1", grid_json(1, 32.0, 512)}, {"2", grid_json(2, 16.0, 128)}, {"3", grid_json(3, 16.0, 32)}}},
              {"ball", ball_defaults()},
              {"p", 1.5},
              {"q", 3.0},
              {"corpus", default_corpus_config(4, 71, {"bump", "noise"})},
              {"tolerances", {{"single", 1e-9}, {"offset", 0.10}}}};
}

inline void run_roundtrip(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& tol = cfg["tolerances"];
  const double p = cfg["p"], q = cfg["q"];
  struct Case {
    int n;
    double alpha;
  };
  std::vector<Case> cases;
  for (const auto& c : cfg["cases"]) {
    cases.push_back({c["n"], c["alpha"]});
    ctx.rep.tuples().push_back(validate_morrey_pair(p, q, cases.back().n).to_json());
  }
  std::map<int, std::vector<CorpusEntry>> corpora;
  for (const auto& c : cases)
    if (!corpora.count(c.n)) corpora[c.n] = make_corpus(cfg["corpus"], c.n);

  std::vector<std::pair<std::string, BallFamily>> fams;
  for (Level lv : ctx.levels) {
    std::map<int, GridSpec> specs;
    std::map<int, BallFamily> famv;
    for (const auto& [n, corp] : corpora) {
      const auto& gj = cfg["grids"].at(std::to_string(n));
      specs.emplace(n, level_grid(gj, lv));
      famv.emplace(n, family_for(specs.at(n), cfg));
      audit_corpus(corp, specs.at(n), ctx);
      fams.emplace_back("n=" + std::to_string(n) + "_" + to_string(lv), famv.at(n));
    }
    std::size_t per = corpora.begin()->second.size();
    run_cells(ctx, cases.size() * per, [&](std::size_t cell) {
      const auto& c = cases[cell / per];
      const auto& e = corpora.at(c.n)[cell % per];
      const auto& spec = specs.at(c.n);
      const auto& fam = famv.at(c.n);
      const std::string key = "n=" + std::to_string(c.n) + " alpha=" + num(c.alpha);
      std::vector<Row> rows;
      const auto gs = sample(e.f, spec);
      double gmax = 0.0;
      for (const auto& v : gs.values()) gmax = std::max(gmax, std::abs(v));
      auto max_diff = [&](const GridFunction& a) {
        double m = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - gs[j]));
        return m;
      };
      const auto single = compose_powers(gs, c.alpha, -c.alpha, Composition::fused);
      const double es = max_diff(single);
      rows.push_back({"single", lv, e.id, OrderedJson{{"case", key}}, es, gmax, es / gmax});
      const auto two = compose_powers(gs, c.alpha, -c.alpha, Composition::sequential);
      const double et = max_diff(two);
      const double predicted = std::abs(forward_transform(gs)[0]) / std::pow(spec.extent, c.n);
      rows.push_back({"two_step", lv, e.id, OrderedJson{{"case", key}}, et, predicted, et / predicted});
      const auto f = laplacian_power(gs, c.alpha);
      const double m = mnorm(f, p, q, fam), lq = lebesgue_norm(f, q);
      const double chain = std::pow(lebesgue_norm(f, std::numeric_limits<double>::infinity()), 1.0 - 1.0 / q) *
                           std::pow(lebesgue_norm(f, 1.0), 1.0 / q);
      rows.push_back({"norm_chain_morrey_lq", lv, e.id, OrderedJson{{"case", key}}, m, lq, m / lq});
      rows.push_back({"norm_chain_lq_interp", lv, e.id, OrderedJson{{"case", key}}, lq, chain, lq / chain});
      return rows;
    });
  }
  standard_provenance(ctx, fams, corpora.begin()->second);

  const double single = max_ratio(ctx.rep.select("single", Level::base));
  ctx.rep.check("single_multiplier", "fused |xi|^alpha |xi|^{-alpha} path reproduces g",
                "relative max error <= " + num(tol["single"]), single, single <= tol["single"].get<double>(), "single");
  double off = 0.0;
  for (const auto* r : ctx.rep.select("two_step", Level::base)) off = std::max(off, std::abs(r->ratio - 1.0));
  ctx.rep.check("two_step_offset", "two-step error equals the predicted zero-mode offset |F(0)| / L^n",
                "|error / predicted - 1| <= " + num(tol["offset"]), off, off <= tol["offset"].get<double>(), "two_step");
  const double c1 = max_ratio(ctx.rep.select("norm_chain_morrey_lq", Level::base));
  const double c2 = max_ratio(ctx.rep.select("norm_chain_lq_interp", Level::base));
  ctx.rep.check("norm_chain_morrey", "||f||_{M^p_q} <= ||f||_{L^q}", "ratio <= 1", c1, c1 <= 1.0,
                "norm_chain_morrey_lq");
  ctx.rep.check("norm_chain_interp", "||f||_{L^q} <= ||f||_inf^{1-1/q} ||f||_1^{1/q}", "ratio <= 1 + 1e-12", c2,
                c2 <= 1.0 + 1e-12, "norm_chain_lq_interp");

  const auto& c0 = cases.front();
  const auto spec = grid_from_config(cfg["grids"].at(std::to_string(c0.n)));
  const auto& e0 = corpora.at(c0.n).front();
  homogeneity_audit(ctx, e0.id, e0.f, [&](const AnalyticFunction& f) {
    const auto gs = sample(f, spec);
    const auto two = compose_powers(gs, c0.alpha, -c0.alpha, Composition::sequential);
    double m = 0.0;
    for (std::size_t j = 0; j < gs.size(); ++j) m = std::max(m, std::abs(two[j] - gs[j]));
    return m / (std::abs(forward_transform(gs)[0]) / std::pow(spec.extent, c0.n));
  });
}

// --------------------------------------------------------------- heisenberg

namespace detail {

struct HeisenbergTerms {
  double norm = 0.0, moment = 0.0, smooth = 0.0, holder = 0.0;
  double ratio = 0.0, holder_ratio = 0.0;
};

/// ||g||_{M^{p0}_{q0}} / (|| |x|^beta g ||^a_{M^{p2}_{q2}} || (-Delta)^{s/2} g ||^b_{M^p_q}); the Hoelder
/// intermediate replaces the smoothness term by || |x|^{-s} g ||_{M^p_q}.
inline HeisenbergTerms heisenberg_terms(const GridFunction& gs, double p0, double q0, double p, double q, double p2,
                                        double q2, double beta, double s, double a, double b, const BallFamily& fam,
                                        bool with_holder) {
  const auto& spec = gs.spec();
  HeisenbergTerms t;
  t.norm = mnorm(gs, p0, q0, fam);
  t.moment = mnorm(pointwise_multiply(sample(moment_weight(beta), spec), gs), p2, q2, fam);
  t.smooth = mnorm(laplacian_power(gs, s), p, q, fam);
  t.ratio = t.norm / (std::pow(t.moment, a) * std::pow(t.smooth, b));
  if (with_holder) {
    t.holder = mnorm(pointwise_multiply(sample(power_weight(s), spec), gs), p, q, fam);
    t.holder_ratio = t.norm / (std::pow(t.moment, a) * std::pow(t.holder, b));
  }
  return t;
}

/// The small-power path, shared by both Heisenberg suites.
inline HeisenbergTerms heisenberg_small_path(const GridFunction& gs, const ExponentTuple& t, const BallFamily& fam,
                                             bool with_holder) {
  return heisenberg_terms(gs, t["p0"], t["q0"], t["p"], t["q"], t["p2"], t["q2"], t["beta"], t["gamma"],
                          t["moment_power"], t["smoothness_power"], fam, with_holder);
}

inline HeisenbergTerms heisenberg_general_path(const GridFunction& gs, const ExponentTuple& t, const BallFamily& fam) {
  if (!t.flagged("interpolation_route")) {
    const auto small = validate_heisenberg_small(t["p1"], t["q1"], t["p2"], t["q2"], t["beta"], t["delta"], t.n_dims());
    return heisenberg_small_path(gs, small, fam, false);
  }
  return heisenberg_terms(gs, t["p0"], t["q0"], t["p1"], t["q1"], t["p2"], t["q2"], t["beta"], t["delta"],
                          t["moment_power"], t["smoothness_power"], fam, false);
}

}  // namespace detail

inline Json heisenberg_corpus_defaults() { return default_corpus_config(8, 41, {"gaussian", "bump", "noise"}); }

inline Json heisenberg_small_defaults() {
  return Json{{"grid", grid_json(1, 256.0, 65536)},
              {"ball", ball_defaults()},
              {"tuples", Json::array({{{"p", 2.0}, {"q", 2.0}, {"p2", 2.0}, {"q2", 2.0}, {"beta", 1.0}, {"gamma", 0.25}},
                                      {{"p", 1.5}, {"q", 3.0}, {"p2", 1.2}, {"q2", 2.5}, {"beta", 0.5}, {"gamma", 0.2}}})},
              {"lambdas", {0.5, 1.0, 2.0}},
              {"boundary_shrink", 0.999},
              {"corpus", heisenberg_corpus_defaults()},
              {"tolerances",
               {{"spread", 0.05}, {"refined_spread", 0.025}, {"holder", 0.02}, {"refine_drift", 0.10}}}};
}

inline void run_heisenberg_small(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& tol = cfg["tolerances"];
  const int n = grid_from_config(cfg["grid"]).n_dims;
  const auto corpus = make_corpus(cfg["corpus"], n);
  const auto lambdas = cfg["lambdas"].get<std::vector<double>>();
  std::vector<ExponentTuple> tuples;
  for (const auto& tj : cfg["tuples"]) {
    tuples.push_back(validate_heisenberg_small(tj["p"], tj["q"], tj["p2"], tj["q2"], tj["beta"], tj["gamma"], n));
    ctx.rep.tuples().push_back(tuples.back().to_json());
  }
  auto key_of = [](const ExponentTuple& t) {
    return tuple_key({t["p"], t["q"], t["p2"], t["q2"], t["beta"], t["gamma"]});
  };

  std::vector<std::pair<std::string, BallFamily>> fams;
  for (Level lv : ctx.levels) {
    const auto spec = level_grid(cfg["grid"], lv);
    const auto fam = family_for(spec, cfg);
    fams.emplace_back(std::string("lhs_and_rhs_") + to_string(lv), fam);
    audit_dilates(ctx, corpus, lambdas, spec);
    run_cells(ctx, corpus.size() * tuples.size(), [&](std::size_t cell) {
      const auto& e = corpus[cell / tuples.size()];
      const auto& t = tuples[cell % tuples.size()];
      const std::string key = key_of(t);
      std::vector<Row> rows;
      for (double lam : lambdas) {
        const auto gs = sample(dilate_fn(e.f, lam), spec);
        const auto h = detail::heisenberg_small_path(gs, t, fam, lam == 1.0);
        const double rhs = std::pow(h.moment, t["moment_power"]) * std::pow(h.smooth, t["smoothness_power"]);
        rows.push_back({"dilation", lv, e.id, OrderedJson{{"lambda", lam}, {"case", key}}, h.norm, rhs, h.ratio});
        if (lam != 1.0) continue;
        rows.push_back({"ratio", lv, e.id, OrderedJson{{"case", key}}, h.norm, rhs, h.ratio});
        const double hr = std::pow(h.moment, t["moment_power"]) * std::pow(h.holder, t["smoothness_power"]);
        rows.push_back({"holder", lv, e.id, OrderedJson{{"case", key}}, h.norm, hr, h.holder_ratio});
      }
      return rows;
    });
  }

  // hypothesis boundary gamma = n/q and its nearest admissible neighbour
  const auto spec = grid_from_config(cfg["grid"]);
  const auto fam = family_for(spec, cfg);
  const double shrink = cfg["boundary_shrink"];
  for (const auto& t : tuples) {
    const double edge = n / t["q"];
    bool rejected = false;
    try {
      validate_heisenberg_small(t["p"], t["q"], t["p2"], t["q2"], t["beta"], edge, n);
    } catch (const HypothesisError&) {
      rejected = true;
    }
    ctx.rep.add({"boundary_rejected", Level::base, "validator", OrderedJson{{"case", key_of(t)}, {"gamma", edge}},
                 rejected ? 1.0 : 0.0, 1.0, rejected ? 1.0 : 0.0});
    const auto near = validate_heisenberg_small(t["p"], t["q"], t["p2"], t["q2"], t["beta"], shrink * edge, n);
    const auto h = detail::heisenberg_small_path(sample(corpus.front().f, spec), near, fam, false);
    ctx.rep.add({"boundary_admissible", Level::base, corpus.front().id,
                 OrderedJson{{"case", key_of(t)}, {"gamma", shrink * edge}}, h.norm, h.norm / h.ratio, h.ratio});
  }
  standard_provenance(ctx, fams, corpus);

  const double sup = max_ratio(ctx.rep.select("ratio", Level::base));
  ctx.rep.summary()["sup_ratio"] = sup;
  ctx.rep.check("ratio_finite", "sup of the Heisenberg ratio over the corpus", "finite", sup, std::isfinite(sup),
                "ratio");
  const double hold = max_ratio(ctx.rep.select("holder", Level::base));
  ctx.rep.summary()["holder_sup_ratio"] = hold;
  ctx.rep.check("holder_step", "Hoelder intermediate bound ||g|| <= || |x|^beta g ||^a || |x|^{-gamma} g ||^b",
                "ratio <= 1 + " + num(tol["holder"]), hold, hold <= 1.0 + tol["holder"].get<double>(), "holder");
  double rej = 1.0;
  for (const auto* r : ctx.rep.select("boundary_rejected", Level::base)) rej = std::min(rej, r->ratio);
  ctx.rep.check("boundary_rejected", "gamma = n/q is rejected by the validator", "all rejected", rej, rej == 1.0,
                "boundary_rejected");
  const double adm = max_ratio(ctx.rep.select("boundary_admissible", Level::base));
  ctx.rep.check("boundary_admissible", "nearest admissible gamma runs clean", "finite", adm, std::isfinite(adm),
                "boundary_admissible");
  spread_criteria(ctx, "dilation", "Heisenberg", tol["spread"], tol["refined_spread"]);
  sup_drift_criterion(ctx, "ratio", "Heisenberg", tol["refine_drift"]);

  const auto& t = tuples.back();
  homogeneity_audit(ctx, corpus.front().id, corpus.front().f, [&](const AnalyticFunction& g) {
    return detail::heisenberg_small_path(sample(g, spec), t, fam, false).ratio;
  });
}

inline Json heisenberg_general_defaults() {
  return Json{{"grid", grid_json(1, 256.0, 65536)},
              {"ball", ball_defaults()},
              {"base", {{"p1", 2.0}, {"q1", 2.0}, {"p2", 2.0}, {"q2", 2.0}, {"beta", 1.0}}},
              {"deltas", {0.5, 1.0, 2.0, 4.0}},
              {"small_delta", 0.25},
              {"lambdas", {0.5, 1.0, 2.0}},
              {"corpus", heisenberg_corpus_defaults()},
              {"classical", {{"beta", 1.0}, {"delta", 1.0}, {"corpus", default_corpus_config(50, 51, {"gaussian", "bump", "noise"})}}},
              {"tolerances",
               {{"spread", 0.05}, {"refined_spread", 0.025}, {"refine_drift", 0.10}, {"classical_constant", 1.4142149}}}};
}

inline void run_heisenberg_general(SuiteContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& tol = cfg["tolerances"];
  const auto& bt = cfg["base"];
  const int n = grid_from_config(cfg["grid"]).n_dims;
  const auto corpus = make_corpus(cfg["corpus"], n);
  const auto lambdas = cfg["lambdas"].get<std::vector<double>>();
  auto validate = [&](double beta, double delta) {
    return validate_heisenberg(bt["p1"], bt["q1"], bt["p2"], bt["q2"], beta, delta, n);
  };
  std::vector<ExponentTuple> tuples;
  for (double d : cfg["deltas"].get<std::vector<double>>()) {
    tuples.push_back(validate(bt["beta"], d));
    ctx.rep.tuples().push_back(tuples.back().to_json());
  }
  const double small_delta = cfg["small_delta"];
  const auto small_general = validate(bt["beta"], small_delta);
  const auto small = validate_heisenberg_small(bt["p1"], bt["q1"], bt["p2"], bt["q2"], bt["beta"], small_delta, n);
  ctx.rep.tuples().push_back(small_general.to_json());
  const auto classical = validate(cfg["classical"]["beta"], cfg["classical"]["delta"]);
  ctx.rep.tuples().push_back(classical.to_json());
  const auto classical_corpus = make_corpus(cfg["classical"]["corpus"], n);
  OrderedJson routes = OrderedJson::object();
  for (const auto& t : tuples) routes["delta=" + num(t["delta"])] = t.flagged("interpolation_route") ? "interpolation" : "direct";
  routes["delta=" + num(small_delta)] = small_general.flagged("interpolation_route") ? "interpolation" : "direct";
  ctx.rep.summary()["routes"] = routes;

  std::vector<std::pair<std::string, BallFamily>> fams;
  for (Level lv : ctx.levels) {
    const auto spec = level_grid(cfg["grid"], lv);
    const auto fam = family_for(spec, cfg);
    fams.emplace_back(std::string("lhs_and_rhs_") + to_string(lv), fam);
    audit_dilates(ctx, corpus, lambdas, spec);
    audit_supports(classical_corpus, spec);
    run_cells(ctx, corpus.size() * tuples.size(), [&](std::size_t cell) {
      const auto& e = corpus[cell / tuples.size()];
      const auto& t = tuples[cell % tuples.size()];
      const std::string key = "delta=" + num(t["delta"]);
      std::vector<Row> rows;
      for (double lam : lambdas) {
        const auto gs = sample(dilate_fn(e.f, lam), spec);
        const auto h = detail::heisenberg_general_path(gs, t, fam);
        const double rhs = std::pow(h.moment, t["moment_power"]) * std::pow(h.smooth, t["smoothness_power"]);
        OrderedJson params{{"lambda", lam}, {"case", key}, {"delta", t["delta"]},
                           {"route", t.flagged("interpolation_route") ? "interpolation" : "direct"}};
        rows.push_back({"dilation", lv, e.id, params, h.norm, rhs, h.ratio});
        if (lam == 1.0) rows.push_back({"general", lv, e.id, params, h.norm, rhs, h.ratio});
      }
      return rows;
    });
    if (lv != Level::base) continue;
    run_cells(ctx, corpus.size(), [&](std::size_t i) {
      const auto gs = sample(corpus[i].f, spec);
      const auto via_general = detail::heisenberg_general_path(gs, small_general, fam);
      const auto via_small = detail::heisenberg_small_path(gs, small, fam, false);
      return std::vector<Row>{{"small_path", lv, corpus[i].id, OrderedJson{{"delta", small_delta}}, via_general.ratio,
                               via_small.ratio, via_general.ratio == via_small.ratio ? 1.0 : 0.0}};
    });
    run_cells(ctx, classical_corpus.size(), [&](std::size_t i) {
      const auto& e = classical_corpus[i];
      const auto h = detail::heisenberg_general_path(sample(e.f, spec), classical, fam);
      return std::vector<Row>{{"classical", lv, e.id, OrderedJson{{"kind", e.kind}}, h.norm,
                               h.norm / h.ratio, h.ratio}};
    });
  }
  standard_provenance(ctx, fams, corpus);

  double same = 1.0;
  for (const auto* r : ctx.rep.select("small_path", Level::base)) same = std::min(same, r->ratio);
  ctx.rep.check("small_delta_bitwise", "delta < n/q1 reproduces the small-power path bit for bit",
                "all ratios identical", same, same == 1.0, "small_path");
  for (const auto& t : tuples) {
    const double d = t["delta"];
    auto keep = [d](const Row& r) { return r.params["delta"] == d; };
    const double sup = max_ratio(ctx.rep.select("general", Level::base, keep));
    ctx.rep.summary()["sup_ratio_delta=" + num(d)] = sup;
    ctx.rep.check("finite_delta=" + num(d), "sup ratio at delta = " + num(d), "finite", sup, std::isfinite(sup),
                  "general");
    if (d == tuples.back()["delta"]) sup_drift_criterion(ctx, "general", "delta = " + num(d), tol["refine_drift"], keep);
  }
  spread_criteria(ctx, "dilation", "Heisenberg", tol["spread"], tol["refined_spread"]);

  const auto cl = ctx.rep.select("classical", Level::base);
  std::map<std::string, double> by_kind;
  for (const auto* r : cl) {
    const std::string k = r->params["kind"];
    by_kind[k] = std::max(by_kind.count(k) ? by_kind[k] : 0.0, r->ratio);
  }
  OrderedJson kinds = OrderedJson::object();
  std::string top;
  for (const auto& [k, v] : by_kind) {
    kinds[k] = v;
    if (top.empty() || v > by_kind[top]) top = k;
  }
  ctx.rep.summary()["classical_sup_by_kind"] = kinds;
  const double csup = max_ratio(cl);
  ctx.rep.check("classical_constant", "all-L^2, beta = delta = 1: ratio bounded across the corpus",
                "<= " + num(tol["classical_constant"]), csup, csup <= tol["classical_constant"].get<double>(),
                "classical");
  ctx.rep.check("classical_gaussian_extremal", "the Gaussian class has the largest classical ratio",
                "top kind = gaussian", by_kind.count("gaussian") ? by_kind["gaussian"] : 0.0, top == "gaussian",
                "classical");

  const auto spec = grid_from_config(cfg["grid"]);
  const auto fam = family_for(spec, cfg);
  const auto& t = tuples.back();
  homogeneity_audit(ctx, corpus.front().id, corpus.front().f, [&](const AnalyticFunction& g) {
    return detail::heisenberg_general_path(sample(g, spec), t, fam).ratio;
  });
}

}  // namespace morrey::harness
