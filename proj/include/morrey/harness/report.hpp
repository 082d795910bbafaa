#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "morrey/harness/config.hpp"

namespace morrey::harness {

enum class Level { base, refined };

inline const char* to_string(Level l) { return l == Level::base ? "default" : "refined"; }

struct Row {
  std::string group;
  Level level = Level::base;
  std::string function_id;
  OrderedJson params = OrderedJson::object();
  double left = 0.0;
  double right = 0.0;
  double ratio = 0.0;
};

struct Criterion {
  std::string id;
  std::string description;
  std::string tolerance;
  double observed = 0.0;
  bool pass = false;
  std::string source;  // row group(s) the verdict was computed from
};

using RowFilter = std::function<bool(const Row&)>;

class SuiteReport {
 public:
  explicit SuiteReport(std::string suite) : suite_(std::move(suite)) {}

  const std::string& suite() const { return suite_; }
  std::vector<Row>& rows() { return rows_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Criterion>& criteria() const { return criteria_; }
  OrderedJson& summary() { return summary_; }
  OrderedJson& provenance() { return provenance_; }
  OrderedJson& stability() { return stability_; }
  OrderedJson& tuples() { return tuples_; }
  const OrderedJson& summary() const { return summary_; }
  const OrderedJson& stability() const { return stability_; }

  void set_config(const Json& cfg) {
    config_ = cfg;
    hash_ = config_hash(cfg);
  }
  const std::string& hash() const { return hash_; }

  void add(Row r) { rows_.push_back(std::move(r)); }
  void add_rows(std::vector<Row> rs) {
    for (auto& r : rs) rows_.push_back(std::move(r));
  }

  std::vector<const Row*> select(const std::string& group, Level level, const RowFilter& keep = {}) const {
    std::vector<const Row*> out;
    for (const auto& r : rows_)
      if (r.group == group && r.level == level && (!keep || keep(r))) out.push_back(&r);
    return out;
  }

  /// Records a verdict. `pass` must be computed from rows already in the report.
  const Criterion& check(std::string id, std::string description, std::string tolerance, double observed, bool pass,
                         std::string source) {
    if (!std::isfinite(observed)) pass = false;
    criteria_.push_back({std::move(id), std::move(description), std::move(tolerance), observed, pass,
                         std::move(source)});
    return criteria_.back();
  }

  bool passed() const {
    return std::all_of(criteria_.begin(), criteria_.end(), [](const Criterion& c) { return c.pass; });
  }

  OrderedJson to_json() const {
    OrderedJson j;
    j["suite"] = suite_;
    j["config_hash"] = hash_;
    j["config"] = OrderedJson::parse(config_.dump());
    j["verdict"] = passed() ? "pass" : "fail";
    OrderedJson crit = OrderedJson::array();
    for (const auto& c : criteria_) {
      OrderedJson cj;
      cj["id"] = c.id;
      cj["description"] = c.description;
      cj["tolerance"] = c.tolerance;
      cj["observed"] = finite_or_null(c.observed);
      cj["pass"] = c.pass;
      cj["derived_from"] = c.source;
      crit.push_back(cj);
    }
    j["criteria"] = crit;
    j["summary"] = summary_;
    j["exponent_tuples"] = tuples_;
    j["provenance"] = provenance_;
    if (!stability_.empty()) j["stability"] = stability_;
    // rows grouped by type, in insertion order
    OrderedJson groups = OrderedJson::object();
    for (const auto& r : rows_) {
      OrderedJson rj;
      rj["level"] = to_string(r.level);
      rj["function_id"] = r.function_id;
      rj["params"] = r.params;
      rj["left"] = finite_or_null(r.left);
      rj["right"] = finite_or_null(r.right);
      rj["ratio"] = finite_or_null(r.ratio);
      groups[r.group].push_back(rj);
    }
    j["rows"] = groups;
    return j;
  }

  void write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    {
      std::ofstream out(dir / "report.json");
      out << "{\"config_hash_header\":\"" << hash_ << "\",\"report\":" << to_json().dump(1) << "}\n";
    }
    std::ofstream csv(dir / "rows.csv");
    csv << "# config_hash: " << hash_ << "\n";
    csv << "group,level,function_id,params,left,right,ratio\n";
    csv.precision(17);
    for (const auto& r : rows_) {
      std::string params = r.params.dump();
      std::string quoted;
      for (char c : params) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      csv << r.group << ',' << to_string(r.level) << ',' << r.function_id << ",\"" << quoted << "\"," << r.left << ','
          << r.right << ',' << r.ratio << '\n';
    }
  }

 private:
  static OrderedJson finite_or_null(double v) { return std::isfinite(v) ? OrderedJson(v) : OrderedJson(nullptr); }

  std::string suite_;
  Json config_;
  std::string hash_;
  std::vector<Row> rows_;
  std::vector<Criterion> criteria_;
  OrderedJson summary_ = OrderedJson::object();
  OrderedJson provenance_ = OrderedJson::object();
  OrderedJson stability_ = OrderedJson::object();
  OrderedJson tuples_ = OrderedJson::array();
};

/// (max - min) / min over a set of positive values.
inline double spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / *lo;
}

inline double max_ratio(const std::vector<const Row*>& rows) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto* r : rows) m = std::max(m, r->ratio);
  return m;
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace morrey::harness
