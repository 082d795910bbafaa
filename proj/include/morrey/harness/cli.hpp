#pragma once

// Command-line front end: run, list-suites, corpus, report.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morrey/harness/suites.hpp"

namespace morrey::harness {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerdictFailure = 2;

namespace detail {

inline int env_threads() {
  const char* v = std::getenv("MORREY_THREADS");
  if (!v || !*v) return 0;
  try {
    const int k = std::stoi(v);
    if (k < 1) throw ConfigError("");
    return k;
  } catch (...) {
    throw ConfigError(std::string("MORREY_THREADS must be a positive integer, got '") + v + "'");
  }
}

inline std::string env_out_dir() {
  const char* v = std::getenv("MORREY_OUT_DIR");
  return v ? v : "";
}

inline int grid_dims(const Json& cfg) {
  if (cfg.contains("grid")) return grid_from_config(cfg["grid"]).n_dims;
  throw ConfigError("suite has no single grid; pass an explicit dimension with --n");
}

inline void print_verdicts(std::ostream& os, const SuiteReport& rep) {
  for (const auto& c : rep.criteria())
    os << (c.pass ? "PASS " : "FAIL ") << rep.suite() << '/' << c.id << "  observed=" << c.observed
       << "  tol: " << c.tolerance << '\n';
}

inline int cmd_run(const std::string& suite, const std::string& config, std::string out, int threads, bool refine,
                   bool force, std::ostream& os) {
  find_suite(suite);
  const Json user = config == "default" ? Json::object() : load_json_file(config);
  if (out.empty()) out = env_out_dir();
  if (out.empty()) throw ConfigError("no output directory: pass --out or set MORREY_OUT_DIR");
  if (threads == 0) threads = env_threads();
  const std::filesystem::path dir(out);
  if (!force && (std::filesystem::exists(dir / "report.json") || std::filesystem::exists(dir / "rows.csv")))
    throw ConfigError("output collision: '" + out + "' already holds a report (use --force to overwrite)");
  const auto rep = run_suite(suite, user, RunOptions{threads, refine});
  rep.write(dir);
  print_verdicts(os, rep);
  os << suite << ": " << (rep.passed() ? "pass" : "fail") << " (" << (dir / "report.json").string() << ")\n";
  return rep.passed() ? kExitPass : kExitVerdictFailure;
}

inline int cmd_corpus(const std::string& manifest, const std::string& emit, int n, const std::string& out,
                      std::ostream& os) {
  if (!emit.empty()) {
    const Json cfg = find_suite(emit).defaults();
    if (!cfg.contains("corpus")) throw ConfigError("suite '" + emit + "' has no corpus");
    const int dims = n > 0 ? n : grid_dims(cfg);
    const auto doc = corpus_manifest(make_corpus(cfg["corpus"], dims));
    if (out.empty()) {
      os << doc.dump(1) << '\n';
    } else {
      std::ofstream f(out);
      if (!f) throw ConfigError("cannot write '" + out + "'");
      f << doc.dump(1) << '\n';
    }
    return kExitPass;
  }
  const Json doc = load_json_file(manifest);
  if (!doc.is_object() || !doc.contains("functions") || !doc["functions"].is_array())
    throw ConfigError("manifest needs a \"functions\" array");
  const auto corpus = make_corpus(Json{{"functions", doc["functions"]}}, n > 0 ? n : 1);
  std::map<std::string, int> classes;
  for (const auto& e : corpus) classes[e.kind]++;
  os << "manifest ok: " << corpus.size() << " functions";
  for (const auto& [k, v] : classes) os << ", " << k << "=" << v;
  os << '\n';
  return kExitPass;
}

/// Collects every report.json below `dir` into merged.json.
inline int cmd_report(const std::string& dir, std::ostream& os) {
  if (!std::filesystem::is_directory(dir)) throw ConfigError("'" + dir + "' is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().filename() == "report.json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no report.json under '" + dir + "'");
  OrderedJson merged = OrderedJson::array();
  bool all = true;
  for (const auto& p : files) {
    std::ifstream in(p);
    const auto doc = OrderedJson::parse(in);
    const auto& r = doc.at("report");
    const bool pass = r.at("verdict") == "pass";
    all = all && pass;
    OrderedJson item;
    item["path"] = std::filesystem::relative(p, dir).string();
    item["suite"] = r.at("suite");
    item["config_hash"] = r.at("config_hash");
    item["verdict"] = r.at("verdict");
    item["criteria"] = r.at("criteria");
    item["summary"] = r.at("summary");
    merged.push_back(item);
    os << (pass ? "PASS " : "FAIL ") << r.at("suite").get<std::string>() << "  " << item["path"].get<std::string>()
       << '\n';
  }
  std::ofstream out(std::filesystem::path(dir) / "merged.json");
  out << OrderedJson{{"reports", merged}, {"verdict", all ? "pass" : "fail"}}.dump(1) << '\n';
  return all ? kExitPass : kExitVerdictFailure;
}

}  // namespace detail

inline int run_cli(int argc, char** argv, std::ostream& os = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Numerical verification of Morrey-space inequalities for powers of the Laplacian", "morrey"};
  app.require_subcommand(1);

  std::string suite, config = "default", out;
  int threads = 0;
  bool refine = false, force = false;
  auto* run = app.add_subcommand("run", "run one suite");
  run->add_option("suite", suite, "suite id")->required();
  run->add_option("--config", config, "JSON config overlay, or 'default'");
  run->add_option("--out", out, "output directory (default: $MORREY_OUT_DIR)");
  run->add_option("--threads", threads, "worker threads (default: $MORREY_THREADS or the config)")
      ->check(CLI::PositiveNumber);
  run->add_flag("--refine", refine, "also run at h/2 with doubled box and report stability");
  run->add_flag("--force", force, "overwrite an existing report");

  auto* list = app.add_subcommand("list-suites", "list suite ids");

  std::string manifest, emit, corpus_out;
  int corpus_n = 0;
  auto* corpus = app.add_subcommand("corpus", "validate or emit a corpus manifest");
  auto* m_opt = corpus->add_option("--manifest", manifest, "manifest to validate")->check(CLI::ExistingFile);
  auto* e_opt = corpus->add_option("--emit", emit, "write the default corpus of a suite");
  m_opt->excludes(e_opt);
  corpus->add_option("--n", corpus_n, "space dimension for the corpus");
  corpus->add_option("--out", corpus_out, "file for --emit (default: stdout)");

  std::string merge_dir;
  auto* report = app.add_subcommand("report", "merge reports found below a directory");
  report->add_option("--merge", merge_dir, "directory holding suite output directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, os, err);
    return code == 0 ? kExitPass : kExitError;
  }
  try {
    if (*run) return detail::cmd_run(suite, config, out, threads, refine, force, os);
    if (*list) {
      for (const auto& d : suites()) os << d.id << "  " << d.description << '\n';
      return kExitPass;
    }
    if (*corpus) {
      if (manifest.empty() && emit.empty()) throw ConfigError("corpus needs --manifest or --emit");
      return detail::cmd_corpus(manifest, emit, corpus_n, corpus_out, os);
    }
    if (*report) return detail::cmd_report(merge_dir, os);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace morrey::harness
