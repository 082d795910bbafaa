// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "morrey/harness/suites.hpp"
#include "morrey/morrey.hpp"

using namespace morrey;
using namespace morrey::harness;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

double rel_l2(const GridFunction& a, const GridFunction& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    num += std::norm(a[j] - b[j]);
    den += std::norm(b[j]);
  }
  return std::sqrt(num / den);
}

// 1. forward transform of a sampled Gaussian against its closed form
Outcome transform_fidelity() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = build_grid(1, 32.0, 512);
  const auto g = gaussian({}, 1.0);
  const auto F = forward_transform(sample(g, s));
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const auto xi = s.frequency_point(k);
    if (std::abs(xi[0]) > std::numbers::pi / (2.0 * s.spacing)) continue;
    const Complex exact = *g.transform(xi, 1);
    num += std::norm(F[k] - exact);
    den += std::norm(exact);
  }
  const double err = std::sqrt(num / den), secs = seconds_since(t0);
  return {err <= 1e-8 && secs < 1.0,
          "band rel err " + fmt(err) + " (<= 1e-8), " + fmt(secs) + " s (< 1 s)"};
}

// 2. imaginary powers are L^2 isometries
Outcome l2_isometry() {
  const auto s = build_grid(1, 16.0, 512);
  std::mt19937_64 rng(2718);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = sample(mollified_noise(rng(), 1.0 + 0.2 * (i % 5), 0.35), s);
    const double base = lebesgue_norm(f, 2.0);
    for (int u = -20; u <= 20; ++u) {
      const double v = lebesgue_norm(laplacian_power(f, Complex(0.0, u)), 2.0);
      worst = std::max(worst, std::abs(v / base - 1.0));
    }
  }
  return {worst <= 1e-9, "max relative L2 deviation " + fmt(worst) + " over 50 x 41 (<= 1e-9)"};
}

// 3. identity at z = 0 and the semigroup law
Outcome identity_and_semigroup() {
  const auto s = build_grid(2, 8.0, 64);
  const auto f = sample(mollified_noise(5, 1.3, 0.4, 2), s);
  double id = 0.0;
  const auto g = laplacian_power(f, 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) id = std::max(id, std::abs(g[j] - f[j]));
  id /= std::abs(*std::max_element(f.values().begin(), f.values().end(),
                                   [](Complex a, Complex b) { return std::abs(a) < std::abs(b); }));
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> re(-0.45, 1.5), im(-6.0, 6.0);
  double fused = 0.0, seq = 0.0;
  int pairs = 0;
  while (pairs < 20) {
    const Complex z1(re(rng), im(rng)), z2(re(rng), im(rng));
    if ((z1 + z2).real() <= -1.0) continue;
    const auto single = laplacian_power(f, z1 + z2);
    fused = std::max(fused, rel_l2(compose_powers(f, z1, z2, Composition::fused), single));
    seq = std::max(seq, rel_l2(compose_powers(f, z1, z2, Composition::sequential), single));
    ++pairs;
  }
  return {id <= 1e-12 && fused <= 1e-10 && seq <= 1e-10,
          "z=0 err " + fmt(id) + " (<= 1e-12); 20 pairs fused " + fmt(fused) + ", sequential " + fmt(seq) +
              " (<= 1e-10)"};
}

// 4. lattice path against the radial quadrature oracle
Outcome oracle_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = build_grid(1, 262144.0, 1048576);
  const auto g = translate_fn(gaussian({}, 0.8), Point{0.3, 0, 0});
  const auto gs = sample(g, s);
  const double reach = g.effective_support()->radius;
  std::vector<Point> pts;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (std::abs(s.coordinate(static_cast<int>(j)) - 0.3) >= reach) continue;
    pts.push_back(s.point(j));
    idx.push_back(j);
  }
  double worst = 0.0;
  std::string per;
  for (Complex z : {Complex(0.5), Complex(1.0), Complex(1.5), Complex(0, 1), Complex(1, 1)}) {
    const auto lat = laplacian_power(gs, z);
    const auto ora = quadrature_oracle(g, z, pts, 1);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      err = std::max(err, std::abs(lat[idx[i]] - ora[i]));
      scale = std::max(scale, std::abs(ora[i]));
    }
    worst = std::max(worst, err / scale);
    std::ostringstream z_os;
    z_os << z.real() << (z.imag() != 0.0 ? "+" + fmt(z.imag()) + "i" : "");
    per += " z=" + z_os.str() + ":" + fmt(err / scale);
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-4 && secs < 30.0, "max rel err " + fmt(worst) + " (<= 1e-4)," + per + "; " + fmt(secs) + " s (< 30 s)"};
}

// 6. Morrey engine: p = q, dilation law, chi_B convergence
Outcome morrey_engine() {
  double pq = 0.0;
  for (int n : {1, 2}) {
    const auto s = build_grid(n, 16.0, n == 1 ? 512 : 128);
    const auto fam = make_ball_family(s);
    for (const auto& e : make_corpus(default_corpus_config(30, 61, {"bump", "noise", "gaussian"}), n)) {
      const auto f = sample(e.f, s);
      for (double p : {1.0, 2.0, 3.0}) {
        const double l = lebesgue_norm(f, p);
        pq = std::max(pq, std::abs(morrey_norm(f, p, p, fam).value - l) / l);
      }
    }
  }
  // the 2-D law needs h <= 1/32 to resolve the dilated bumps within 2%
  double dil = 0.0;
  for (int n : {1, 2}) {
    const auto s = build_grid(n, 8.0, n == 1 ? 512 : 256);
    const auto fam = make_ball_family(s);
    const double p = 1.5, q = 3.0, expect = std::pow(2.0, -n / q);
    for (const auto& e : make_corpus(default_corpus_config(6, 62, {"bump", "noise"}), n)) {
      const double a = morrey_norm(sample(e.f, s), p, q, fam).value;
      const double b = morrey_norm(sample(dilate_fn(e.f, 2.0), s), p, q, fam).value;
      dil = std::max(dil, std::abs(b / a / expect - 1.0));
    }
  }
  // error ratio err(h/2) / err(h) within 0.5 +- 30%
  double worst_ratio_dev = 0.0;
  std::string ratios;
  for (int n : {1, 2}) {
    const double p = 1.5, q = 3.0, target = std::pow(unit_ball_volume(n), 1.0 / q);
    std::vector<double> errs;
    for (int N : {64, 128, 256, 512}) {
      if (n == 2 && N > 256) break;
      const auto s = build_grid(n, 8.0, N);
      errs.push_back(std::abs(morrey_norm(sample(indicator({}, 1.0), s), p, q, make_ball_family(s)).value / target - 1.0));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
      const double r = errs[i] / errs[i - 1];
      worst_ratio_dev = std::max(worst_ratio_dev, std::abs(r / 0.5 - 1.0));
      ratios += " " + fmt(r);
    }
  }
  return {pq <= 1e-12 && dil <= 0.02 && worst_ratio_dev <= 0.30,
          "p=q rel " + fmt(pq) + " (<= 1e-12); dilation dev " + fmt(dil) + " (<= 0.02); chi_B error ratios" + ratios +
              " (0.5 +- 30%)"};
}

// Runs a suite and checks the listed verdicts; the overall suite verdict is reported alongside.
Outcome suite_verdicts(const std::string& suite, const std::set<std::string>& required, bool refine) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = run_suite(suite, Json::object(), {1, refine});
  bool ok = true;
  std::set<std::string> seen;
  std::string detail = suite + (refine ? " --refine" : "") + ":";
  for (const auto& c : rep.criteria()) {
    if (!required.count(c.id)) continue;
    seen.insert(c.id);
    ok = ok && c.pass;
    detail += " " + c.id + "=" + fmt(c.observed) + (c.pass ? "" : "(FAIL)");
  }
  for (const auto& id : required)
    if (!seen.count(id)) {
      ok = false;
      detail += " " + id + "=missing";
    }
  detail += "; suite verdict " + std::string(rep.passed() ? "pass" : "fail") + ", " + fmt(seconds_since(t0)) + " s";
  return {ok, detail};
}

// 12. byte-identical report.json from two identical runs
Outcome determinism() {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  const auto root = fs::temp_directory_path() / ("morrey-acceptance-" + std::to_string(stamp));
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  bool same = true;
  std::string detail;
  for (const auto& [suite, threads] : std::vector<std::pair<std::string, int>>{{"roundtrip", 1}, {"decay", 2}}) {
    for (int run = 0; run < 2; ++run)
      run_suite(suite, Json::object(), {threads, false}).write(root / (suite + std::to_string(run)));
    const auto a = slurp(root / (suite + "0") / "report.json");
    const auto b = slurp(root / (suite + "1") / "report.json");
    const bool eq = !a.empty() && a == b;
    same = same && eq;
    detail += suite + " threads=" + std::to_string(threads) + ": " + (eq ? "identical" : "differ") + " (" +
              std::to_string(a.size()) + " bytes); ";
  }
  fs::remove_all(root);
  return {same, detail};
}

}  // namespace

int main() {
  struct Item {
    int id;
    std::string name;
    std::function<Outcome()> fn;
  };
  const std::vector<Item> items{
      {1, "transform fidelity", transform_fidelity},
      {2, "L2 isometry of imaginary powers", l2_isometry},
      {3, "identity and semigroup", identity_and_semigroup},
      {4, "oracle agreement", oracle_agreement},
      {5, "kernel-constant growth and gamma identities",
       [] { return suite_verdicts("kernel-constant", {"growth_slope", "gamma_recurrence", "gamma_reflection"}, false); }},
      {6, "Morrey norm engine", morrey_engine},
      {7, "far-field decay", [] { return suite_verdicts("decay", {"far_field_slope", "box_doubling"}, false); }},
      {8, "round trip", [] { return suite_verdicts("roundtrip", {"single_multiplier", "two_step_offset"}, false); }},
      {9, "Hardy suite",
       [] { return suite_verdicts("hardy", {"dilation_spread", "hardy_refine_drift"}, true); }},
      {10, "interpolation suite",
       [] {
         return suite_verdicts("interpolation", {"endpoints", "all_l2_cauchy_schwarz", "morrey_dilation_spread"}, false);
       }},
      {11, "Heisenberg suites",
       [] {
         return suite_verdicts("heisenberg-general",
                               {"small_delta_bitwise", "finite_delta=4", "general_refine_drift",
                                "classical_gaussian_extremal"},
                               true);
       }},
      {12, "determinism", determinism},
  };
  int failures = 0;
  for (const auto& it : items) {
    Outcome o;
    try {
      o = it.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << it.id << " (" << it.name << "): " << o.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
