#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "morrey/error.hpp"
#include "morrey/grid.hpp"

namespace morrey::harness {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Recursively overlays `user` on `base`. Keys absent from `base` are
/// rejected so typos cannot silently fall back to defaults.
inline Json merge_config(const Json& base, const Json& user, const std::string& path = "") {
  if (!user.is_object()) throw ConfigError("config" + (path.empty() ? "" : " at '" + path + "'") + " must be an object");
  Json out = base;
  for (const auto& [key, value] : user.items()) {
    const std::string here = path.empty() ? key : path + "." + key;
    if (!base.contains(key)) throw ConfigError("unknown config key '" + here + "'");
    if (base[key].is_object() && value.is_object() && key != "corpus_functions")
      out[key] = merge_config(base[key], value, here);
    else
      out[key] = value;
  }
  return out;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// 64-bit FNV-1a of the canonical (sorted-key) serialization.
inline std::string config_hash(const Json& cfg) {
  const std::string s = cfg.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

inline GridSpec grid_from_config(const Json& g) {
  try {
    return build_grid(g.at("n").get<int>(), g.at("extent").get<double>(), g.at("points").get<int>());
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad grid config: ") + e.what());
  }
}

inline Json grid_json(int n, double extent, int points) { return Json{{"n", n}, {"extent", extent}, {"points", points}}; }

}  // namespace morrey::harness
