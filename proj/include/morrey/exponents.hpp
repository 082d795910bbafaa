#pragma once

// Exponent bookkeeping for each inequality. Tuples can only be produced by
// the validators below, which check the stated hypotheses, derive the
// dependent exponents and verify that both sides of the inequality carry the
// same power of lambda under g -> g(lambda .).

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "morrey/error.hpp"

namespace morrey {

inline constexpr double kExponentTolerance = 1e-12;

class ExponentTuple {
 public:
  const std::string& theorem() const { return theorem_; }
  int n_dims() const { return n_dims_; }
  const std::vector<std::pair<std::string, double>>& values() const { return values_; }
  const std::vector<std::string>& flags() const { return flags_; }

  /// |LHS exponent - RHS exponent| of lambda.
  double dilation_residual() const { return dilation_residual_; }
  double lhs_dilation_exponent() const { return lhs_exponent_; }

  bool has(const std::string& name) const {
    for (const auto& [k, _] : values_)
      if (k == name) return true;
    return false;
  }

  double operator[](const std::string& name) const {
    for (const auto& [k, v] : values_)
      if (k == name) return v;
    throw DomainError("exponent tuple '" + theorem_ + "' has no value '" + name + "'");
  }

  bool flagged(const std::string& flag) const {
    for (const auto& f : flags_)
      if (f == flag) return true;
    return false;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["theorem"] = theorem_;
    j["n"] = n_dims_;
    nlohmann::ordered_json vals = nlohmann::ordered_json::object();
    for (const auto& [k, v] : values_) vals[k] = v;
    j["values"] = vals;
    j["dilation_exponent"] = lhs_exponent_;
    j["dilation_residual"] = dilation_residual_;
    j["flags"] = flags_;
    return j;
  }

  friend ExponentTuple validate_morrey_pair(double p, double q, int n_dims);
  friend ExponentTuple validate_interpolation(double p0, double q0, double p1, double q1, double theta, int n_dims,
                                              double alpha);
  friend ExponentTuple validate_olsen(double p, double q, double alpha, int n_dims);
  friend ExponentTuple validate_hardy(double p, double q, double alpha, int n_dims);
  friend ExponentTuple validate_heisenberg_small(double p, double q, double p2, double q2, double beta, double gamma,
                                                 int n_dims);
  friend ExponentTuple validate_heisenberg(double p1, double q1, double p2, double q2, double beta, double delta,
                                           int n_dims);

 private:
  ExponentTuple(std::string theorem, int n_dims) : theorem_(std::move(theorem)), n_dims_(n_dims) {}

  void set(const std::string& name, double v) { values_.emplace_back(name, v); }

  void set_dilation(double lhs, double rhs) {
    lhs_exponent_ = lhs;
    dilation_residual_ = std::abs(lhs - rhs);
    if (dilation_residual_ > kExponentTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "lhs exponent " << lhs << " vs rhs exponent " << rhs;
      throw HypothesisError("dilation exponents of both sides agree", os.str());
    }
  }

  std::string theorem_;
  int n_dims_;
  std::vector<std::pair<std::string, double>> values_;
  std::vector<std::string> flags_;
  double lhs_exponent_ = 0.0;
  double dilation_residual_ = 0.0;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline void require(bool ok, const std::string& relation, const std::string& detail) {
  if (!ok) throw HypothesisError(relation, detail);
}

inline void require_dims(int n) { require(n >= 1 && n <= 3, "n in {1, 2, 3}", "n = " + std::to_string(n)); }

// a <= b up to the exponent tolerance
inline bool leq(double a, double b) { return a <= b + kExponentTolerance * std::max(1.0, std::abs(b)); }

inline void require_pair(double p, double q, double p_min, bool strict_min, const std::string& np,
                         const std::string& nq) {
  const bool lower = strict_min ? p > p_min : p >= p_min;
  require(lower, (strict_min ? "1 < " : "1 <= ") + np, np + " = " + fmt(p));
  require(leq(p, q), np + " <= " + nq, np + " = " + fmt(p) + ", " + nq + " = " + fmt(q));
  require(std::isfinite(q), nq + " < infinity", nq + " = " + fmt(q));
}

}  // namespace detail

/// 1 <= p <= q < infinity.
inline ExponentTuple validate_morrey_pair(double p, double q, int n_dims) {
  detail::require_dims(n_dims);
  detail::require_pair(p, q, 1.0, false, "p", "q");
  ExponentTuple t("morrey", n_dims);
  t.set("p", p);
  t.set("q", q);
  t.set_dilation(-n_dims / q, -n_dims / q);
  return t;
}

/// Interpolation between M^{p0}_{q0} and the alpha-smoothness space over M^{p1}_{q1}.
inline ExponentTuple validate_interpolation(double p0, double q0, double p1, double q1, double theta, int n_dims,
                                            double alpha) {
  using detail::fmt;
  using detail::require;
  detail::require_dims(n_dims);
  detail::require_pair(p0, q0, 1.0, true, "p0", "q0");
  detail::require_pair(p1, q1, 1.0, true, "p1", "q1");
  require(theta >= 0.0 && theta <= 1.0, "0 <= theta <= 1", "theta = " + fmt(theta));
  require(alpha >= 0.0, "alpha >= 0", "alpha = " + fmt(alpha));
  const double inv_p = (1.0 - theta) / p0 + theta / p1;
  const double inv_q = (1.0 - theta) / q0 + theta / q1;
  const double p = theta == 0.0 ? p0 : (theta == 1.0 ? p1 : 1.0 / inv_p);
  const double q = theta == 0.0 ? q0 : (theta == 1.0 ? q1 : 1.0 / inv_q);
  require(p > 1.0 && detail::leq(p, q), "1 < p <= q", "p = " + fmt(p) + ", q = " + fmt(q));
  ExponentTuple t("interpolation", n_dims);
  t.set("p0", p0);
  t.set("q0", q0);
  t.set("p1", p1);
  t.set("q1", q1);
  t.set("theta", theta);
  t.set("alpha", alpha);
  t.set("p", p);
  t.set("q", q);
  const double n = n_dims;
  t.set_dilation(alpha * theta - n / q, (1.0 - theta) * (-n / q0) + theta * (alpha - n / q1));
  return t;
}

/// Weighted Riesz potential bound with weight |x|^{-alpha} in M^u_v.
inline ExponentTuple validate_olsen(double p, double q, double alpha, int n_dims) {
  using detail::fmt;
  using detail::require;
  detail::require_dims(n_dims);
  const double n = n_dims;
  require(alpha > 0.0 && alpha < n, "0 < alpha < n", "alpha = " + fmt(alpha));
  detail::require_pair(p, q, 1.0, true, "p", "q");
  require(q < n / alpha, "q < n/alpha", "q = " + fmt(q) + ", n/alpha = " + fmt(n / alpha));
  const double u = n * p / (alpha * q);
  const double v = n / alpha;
  const double inv_s = 1.0 / p - alpha * q / (n * p);
  const double s = 1.0 / inv_s;
  const double t_exp = s * q / p;
  require(detail::leq(u, v), "u <= v", "u = " + fmt(u) + ", v = " + fmt(v));
  require(detail::leq(s, t_exp), "s <= t", "s = " + fmt(s) + ", t = " + fmt(t_exp));
  // Hoelder pairing behind the weighted estimate
  require(std::abs(1.0 / p - (1.0 / u + 1.0 / s)) <= kExponentTolerance, "1/p = 1/u + 1/s", "p = " + fmt(p));
  require(std::abs(1.0 / q - (1.0 / v + 1.0 / t_exp)) <= kExponentTolerance, "1/q = 1/v + 1/t", "q = " + fmt(q));
  ExponentTuple t("olsen", n_dims);
  t.set("p", p);
  t.set("q", q);
  t.set("alpha", alpha);
  t.set("u", u);
  t.set("v", v);
  t.set("s", s);
  t.set("t", t_exp);
  t.set_dilation(-n / q, -n / q);
  if (p == q) t.flags_.push_back("lebesgue_case");
  return t;
}

/// || |x|^{-alpha} g ||_{M^p_q} against || (-Delta)^{alpha/2} g ||_{M^p_q}.
inline ExponentTuple validate_hardy(double p, double q, double alpha, int n_dims) {
  using detail::fmt;
  using detail::require;
  detail::require_dims(n_dims);
  const double n = n_dims;
  detail::require_pair(p, q, 1.0, true, "p", "q");
  require(alpha > 0.0 && alpha < n / q, "0 < alpha < n/q", "alpha = " + fmt(alpha) + ", n/q = " + fmt(n / q));
  ExponentTuple t("hardy", n_dims);
  t.set("p", p);
  t.set("q", q);
  t.set("alpha", alpha);
  t.set("u", n * p / (alpha * q));
  t.set("v", n / alpha);
  // weak-type route of the Lebesgue case: 1/t = 1/q - alpha/n
  t.set("t", 1.0 / (1.0 / q - alpha / n));
  t.set_dilation(alpha - n / q, alpha - n / q);
  if (p == q) t.flags_.push_back("lebesgue_case");
  return t;
}

/// Moment/smoothness product bound with 0 < gamma < n/q.
inline ExponentTuple validate_heisenberg_small(double p, double q, double p2, double q2, double beta, double gamma,
                                               int n_dims) {
  using detail::fmt;
  using detail::require;
  detail::require_dims(n_dims);
  const double n = n_dims;
  detail::require_pair(p, q, 1.0, true, "p", "q");
  detail::require_pair(p2, q2, 1.0, false, "p2", "q2");
  require(beta > 0.0, "beta > 0", "beta = " + fmt(beta));
  require(gamma > 0.0 && gamma < n / q, "0 < gamma < n/q", "gamma = " + fmt(gamma) + ", n/q = " + fmt(n / q));
  const double p0 = (beta + gamma) / (beta / p + gamma / p2);
  const double q0 = (beta + gamma) / (beta / q + gamma / q2);
  ExponentTuple t("heisenberg-small", n_dims);
  t.set("p", p);
  t.set("q", q);
  t.set("p2", p2);
  t.set("q2", q2);
  t.set("beta", beta);
  t.set("gamma", gamma);
  t.set("p0", p0);
  t.set("q0", q0);
  const double a = gamma / (beta + gamma);
  const double b = beta / (beta + gamma);
  t.set("moment_power", a);
  t.set("smoothness_power", b);
  // |x|^beta g scales as lambda^{-beta - n/q2}, (-Delta)^{gamma/2} g as lambda^{gamma - n/q}
  t.set_dilation(-n / q0, a * (-beta - n / q2) + b * (gamma - n / q));
  if (p2 != p || q2 != q) t.flags_.push_back("mixed_holder_exponents");
  return t;
}

/// As validate_heisenberg_small with delta unrestricted. When delta >= n/q1
/// the tuple records the interpolation parameters theta = n/(2 delta q1) and
/// gamma = delta theta used to reduce to the small case.
inline ExponentTuple validate_heisenberg(double p1, double q1, double p2, double q2, double beta, double delta,
                                         int n_dims) {
  using detail::fmt;
  using detail::require;
  detail::require_dims(n_dims);
  const double n = n_dims;
  detail::require_pair(p1, q1, 1.0, true, "p1", "q1");
  detail::require_pair(p2, q2, 1.0, false, "p2", "q2");
  require(beta > 0.0, "beta > 0", "beta = " + fmt(beta));
  require(delta > 0.0, "delta > 0", "delta = " + fmt(delta));
  const double p0 = (beta + delta) / (beta / p1 + delta / p2);
  const double q0 = (beta + delta) / (beta / q1 + delta / q2);
  ExponentTuple t("heisenberg-general", n_dims);
  t.set("p1", p1);
  t.set("q1", q1);
  t.set("p2", p2);
  t.set("q2", q2);
  t.set("beta", beta);
  t.set("delta", delta);
  t.set("p0", p0);
  t.set("q0", q0);
  const double a = delta / (beta + delta);
  const double b = beta / (beta + delta);
  t.set("moment_power", a);
  t.set("smoothness_power", b);
  if (delta >= n / q1) {
    const double theta = n / (2.0 * delta * q1);
    t.set("theta", theta);
    t.set("gamma", delta * theta);
    t.flags_.push_back("interpolation_route");
  }
  t.set_dilation(-n / q0, a * (-beta - n / q2) + b * (delta - n / q1));
  return t;
}

}  // namespace morrey
