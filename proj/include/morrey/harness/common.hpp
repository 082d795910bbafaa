#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "morrey/exponents.hpp"
#include "morrey/grid.hpp"
#include "morrey/harness/config.hpp"
#include "morrey/harness/corpus.hpp"
#include "morrey/harness/parallel.hpp"
#include "morrey/harness/report.hpp"
#include "morrey/norms.hpp"
#include "morrey/spectral.hpp"
#include "morrey/testfns.hpp"

namespace morrey::harness {

struct SuiteContext {
  const Json& cfg;
  std::vector<Level> levels;
  int threads = 1;
  SuiteReport& rep;

  bool has(Level l) const { return std::find(levels.begin(), levels.end(), l) != levels.end(); }
};

inline Json ball_defaults() { return Json{{"stride", 0}, {"ratio", std::numbers::sqrt2}}; }

inline GridSpec level_grid(const Json& g, Level level) {
  const auto s = grid_from_config(g);
  return level == Level::refined ? s.refined() : s;
}

inline BallFamily family_for(const GridSpec& s, const Json& cfg) {
  return make_ball_family(s, cfg.at("ball").at("stride").get<int>(), cfg.at("ball").at("ratio").get<double>());
}

inline double mnorm(const GridFunction& f, double p, double q, const BallFamily& fam) {
  return morrey_norm(f, p, q, fam).value;
}

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

/// Records the provenance fields every report carries.
inline void standard_provenance(SuiteContext& ctx, const std::vector<std::pair<std::string, BallFamily>>& families,
                                const std::vector<CorpusEntry>& corpus) {
  auto& p = ctx.rep.provenance();
  p["config_hash"] = ctx.rep.hash();
  p["threads"] = ctx.threads;
  p["morrey_norm_is_lower_bound"] = true;
  p["lower_bound_note"] =
      "finite ball families certify the Morrey sup from below; balls are clipped to the box, which only "
      "under-estimates each norm";
  p["zero_mode_policy"] = MultiplierPolicy{}.description();
  OrderedJson fam = OrderedJson::object();
  for (const auto& [name, f] : families) fam[name] = f.descriptor();
  p["ball_families"] = fam;
  if (!corpus.empty()) {
    std::map<std::string, int> classes;
    for (const auto& e : corpus) classes[e.kind]++;
    OrderedJson cj = OrderedJson::object();
    for (const auto& [k, v] : classes) cj[k] = v;
    p["corpus_classes"] = cj;
  }
}

/// Scalar-homogeneity audit: the suite's ratio for c f must equal that for f.
inline void homogeneity_audit(SuiteContext& ctx, const std::string& function_id, const AnalyticFunction& f,
                              const std::function<double(const AnalyticFunction&)>& ratio) {
  const Complex c(2.5, -1.25);
  const double r1 = ratio(f);
  const double r2 = ratio(scalar(c, f));
  Row row{"homogeneity", Level::base, function_id, OrderedJson{{"scalar_re", c.real()}, {"scalar_im", c.imag()}},
          r2, r1, std::abs(r2 / r1 - 1.0)};
  ctx.rep.add(row);
  ctx.rep.check("homogeneity", "ratio unchanged when the test function is multiplied by a nonzero scalar",
                "relative change <= 1e-10", row.ratio, row.ratio <= 1e-10, "homogeneity");
}

inline std::vector<Row> flatten(std::vector<std::vector<Row>> parts) {
  std::vector<Row> out;
  for (auto& p : parts)
    for (auto& r : p) out.push_back(std::move(r));
  return out;
}

/// Runs `task(i)` for i < count on the configured threads and appends all rows in index order.
template <typename Task>
void run_cells(SuiteContext& ctx, std::size_t count, Task task) {
  ctx.rep.add_rows(flatten(parallel_map(count, ctx.threads, task)));
}

/// Groups row ratios by (function id, params["case"]).
inline std::map<std::string, std::vector<double>> ratios_by_case(const std::vector<const Row*>& rows) {
  std::map<std::string, std::vector<double>> out;
  for (const auto* r : rows) out[r->function_id + " | " + r->params.value("case", std::string())].push_back(r->ratio);
  return out;
}

struct SpreadSummary {
  double max_spread = 0.0;
  std::string witness;
};

inline SpreadSummary max_spread(const std::vector<const Row*>& rows) {
  SpreadSummary s;
  for (const auto& [key, v] : ratios_by_case(rows)) {
    const double sp = spread(v);
    if (s.witness.empty() || sp > s.max_spread) {
      s.max_spread = sp;
      s.witness = key;
    }
  }
  return s;
}

/// Dilation-spread checks at every level present, plus the tightening
/// check under refinement.
inline void spread_criteria(SuiteContext& ctx, const std::string& group, const std::string& what, double tol,
                            double refined_tol, const RowFilter& keep = {}) {
  const auto base = max_spread(ctx.rep.select(group, Level::base, keep));
  ctx.rep.summary()[group + "_max_spread"] = base.max_spread;
  ctx.rep.summary()[group + "_spread_witness"] = base.witness;
  ctx.rep.check(group + "_spread", "dilation spread of the " + what + " ratio per function", "<= " + num(tol),
                base.max_spread, base.max_spread <= tol, group);
  if (!ctx.has(Level::refined)) return;
  const auto ref = max_spread(ctx.rep.select(group, Level::refined, keep));
  auto& st = ctx.rep.stability();
  st[group + "_max_spread"] = OrderedJson{{"default", base.max_spread}, {"refined", ref.max_spread}};
  ctx.rep.check(group + "_spread_refined", "dilation spread of the " + what + " ratio under refinement",
                "<= " + num(refined_tol) + " and <= default + 1e-3", ref.max_spread,
                ref.max_spread <= refined_tol && ref.max_spread <= base.max_spread + 1e-3, group);
}

/// Relative change of the sup ratio of `group` between levels.
inline void sup_drift_criterion(SuiteContext& ctx, const std::string& group, const std::string& what, double tol,
                                const RowFilter& keep = {}) {
  if (!ctx.has(Level::refined)) return;
  const double a = max_ratio(ctx.rep.select(group, Level::base, keep));
  const double b = max_ratio(ctx.rep.select(group, Level::refined, keep));
  const double drift = std::abs(b - a) / a;
  ctx.rep.stability()[group + "_sup_ratio"] = OrderedJson{{"default", a}, {"refined", b}, {"drift", drift}};
  ctx.rep.check(group + "_refine_drift", "sup " + what + " ratio change under refinement (h/2, 2L)",
                "<= " + num(tol), drift, drift <= tol, group);
}

/// Effective support check at suite start, on every grid the suite samples.
inline void audit_corpus(const std::vector<CorpusEntry>& corpus, const GridSpec& spec, SuiteContext& ctx) {
  audit_supports(corpus, spec);
  ctx.rep.provenance()["support_audit"] = "every corpus support lies >= 4 cells inside the box";
}

}  // namespace morrey::harness
