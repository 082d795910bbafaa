#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "morrey/grid.hpp"
#include "morrey/harness/config.hpp"
#include "morrey/testfns.hpp"

namespace morrey::harness {

struct CorpusEntry {
  std::string id;
  std::string kind;  // bump, noise or gaussian; "custom" for manifest entries
  AnalyticFunction f;
};

inline Json default_corpus_config(int count, std::uint64_t seed, std::vector<std::string> kinds, double scale = 1.0) {
  return Json{{"count", count}, {"seed", seed},   {"kinds", kinds},
              {"scale", scale}, {"offset", 0.0}, {"functions", Json::array()}};
}

inline std::string corpus_id(const std::string& kind, std::size_t i) {
  std::string num = std::to_string(i);
  if (num.size() < 3) num = std::string(3 - num.size(), '0') + num;
  return kind + "-" + num;
}

/// Deterministic corpus: entry i has kind kinds[i % k] and parameters drawn
/// from one mt19937_64 stream in entry order. With "functions" non-empty the
/// listed descriptors are used verbatim instead.
inline std::vector<CorpusEntry> make_corpus(const Json& cc, int n_dims) {
  std::vector<CorpusEntry> out;
  if (cc.contains("functions") && !cc["functions"].empty()) {
    std::size_t i = 0;
    for (const auto& item : cc["functions"]) {
      const bool wrapped = item.contains("descriptor");
      const auto& desc = wrapped ? item["descriptor"] : item;
      const std::string kind = wrapped && item.contains("kind_class") ? item["kind_class"].get<std::string>() : "custom";
      const std::string id = wrapped && item.contains("id") ? item["id"].get<std::string>() : corpus_id(kind, i);
      out.push_back({id, kind, AnalyticFunction::from_json(desc)});
      ++i;
    }
    return out;
  }
  const int count = cc.at("count").get<int>();
  const auto kinds = cc.at("kinds").get<std::vector<std::string>>();
  const double scale = cc.at("scale").get<double>();
  const double offset = cc.at("offset").get<double>();
  if (kinds.empty()) throw ConfigError("corpus needs at least one kind");
  std::mt19937_64 rng(cc.at("seed").get<std::uint64_t>());
  auto uniform = [&](double a, double b) { return a + (b - a) * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
  for (int i = 0; i < count; ++i) {
    const std::string& kind = kinds[static_cast<std::size_t>(i) % kinds.size()];
    Point c{};
    for (int d = 0; d < n_dims; ++d) c[d] = offset * scale * uniform(-1.0, 1.0);
    if (kind == "bump") {
      const double r = scale * uniform(0.6, 1.2);
      const double a = uniform(0.5, 2.0);
      out.push_back({corpus_id(kind, i), kind, bump(c, r, a)});
    } else if (kind == "noise") {
      const double r = scale * uniform(0.8, 1.2);
      const std::uint64_t seed = rng();
      out.push_back({corpus_id(kind, i), kind, mollified_noise(seed, r, 0.35 * r, n_dims, c)});
    } else if (kind == "gaussian") {
      const double s = scale * uniform(0.25, 0.4);
      out.push_back({corpus_id(kind, i), kind, gaussian(c, s)});
    } else {
      throw ConfigError("unknown corpus kind '" + kind + "' (expected bump, noise or gaussian)");
    }
  }
  return out;
}

/// Throws SupportError unless every (effective) support sits at least
/// `margin_cells` lattice cells inside the box.
inline void audit_supports(const std::vector<CorpusEntry>& corpus, const GridSpec& spec, int margin_cells = 4) {
  const double limit = 0.5 * spec.extent - margin_cells * spec.spacing;
  for (const auto& e : corpus) {
    const auto s = e.f.effective_support();
    if (!s) continue;
    for (int i = 0; i < spec.n_dims; ++i)
      if (std::abs(s->center[i]) + s->radius > limit)
        throw SupportError("corpus function " + e.id + " reaches within " + std::to_string(margin_cells) +
                           " cells of the box seam");
  }
}

inline OrderedJson corpus_manifest(const std::vector<CorpusEntry>& corpus) {
  OrderedJson fns = OrderedJson::array();
  for (const auto& e : corpus) {
    OrderedJson item;
    item["id"] = e.id;
    item["kind_class"] = e.kind;
    item["descriptor"] = OrderedJson::parse(e.f.to_json().dump());
    fns.push_back(item);
  }
  return OrderedJson{{"functions", fns}};
}

}  // namespace morrey::harness
