#pragma once

// Suite registry and the single entry point that runs one suite.

#include <functional>
#include <string>
#include <vector>

#include "morrey/harness/suites_spectral.hpp"
#include "morrey/harness/suites_weighted.hpp"

namespace morrey::harness {

struct SuiteDef {
  std::string id;
  std::string description;
  std::function<Json()> defaults;
  std::function<void(SuiteContext&)> run;
};

inline const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> all{
      {"iu-bound", "imaginary powers (-Delta)^{iu/2} on Morrey spaces", iu_bound_defaults, run_iu_bound},
      {"kernel-constant", "kernel constant C(u) growth, gamma identities, Riesz calibration", kernel_constant_defaults,
       run_kernel_constant},
      {"interpolation", "fractional-power interpolation inequality", interpolation_defaults, run_interpolation},
      {"uniform-local-bound", "local bound of (-Delta)^{alpha v/2} f uniform in (v, w)", uniform_local_bound_defaults,
       run_uniform_local_bound},
      {"olsen", "Olsen inequality for W (-Delta)^{-alpha/2}", olsen_defaults, run_olsen},
      {"hardy", "Hardy-type inequality || |x|^{-alpha} g || <~ || (-Delta)^{alpha/2} g ||", hardy_defaults, run_hardy},
      {"decay", "far-field decay of (-Delta)^{alpha/2} of a bump", decay_defaults, run_decay},
      {"roundtrip", "(-Delta)^{-alpha/2} (-Delta)^{alpha/2} g = g and the norm chain", roundtrip_defaults,
       run_roundtrip},
      {"heisenberg-small", "Heisenberg-type inequality for small smoothness powers", heisenberg_small_defaults,
       run_heisenberg_small},
      {"heisenberg-general", "Heisenberg-type inequality for arbitrary smoothness powers", heisenberg_general_defaults,
       run_heisenberg_general},
  };
  return all;
}

inline std::string suite_ids() {
  std::string s;
  for (const auto& d : suites()) s += (s.empty() ? "" : ", ") + d.id;
  return s;
}

inline const SuiteDef& find_suite(const std::string& id) {
  for (const auto& d : suites())
    if (d.id == id) return d;
  throw ConfigError("unknown suite '" + id + "'; valid ids: " + suite_ids());
}

struct RunOptions {
  int threads = 0;  // 0 keeps the config value
  bool refine = false;
};

/// Full configuration of a run: suite defaults overlaid by `user`, with the
/// run options folded in so the hash covers them.
inline Json resolve_config(const std::string& id, const Json& user, const RunOptions& opt) {
  Json base = find_suite(id).defaults();
  base["threads"] = 1;
  base["refine"] = false;
  Json cfg = merge_config(base, user);
  if (opt.threads > 0) cfg["threads"] = opt.threads;
  if (opt.refine) cfg["refine"] = true;
  if (cfg["threads"].get<int>() < 1) throw ConfigError("threads must be >= 1");
  return cfg;
}

inline SuiteReport run_suite(const std::string& id, const Json& user_cfg = Json::object(), const RunOptions& opt = {}) {
  const auto& def = find_suite(id);
  const Json cfg = resolve_config(id, user_cfg, opt);
  SuiteReport rep(id);
  rep.set_config(cfg);
  std::vector<Level> levels{Level::base};
  if (cfg["refine"].get<bool>()) levels.push_back(Level::refined);
  SuiteContext ctx{cfg, levels, cfg["threads"].get<int>(), rep};
  def.run(ctx);
  return rep;
}

}  // namespace morrey::harness
