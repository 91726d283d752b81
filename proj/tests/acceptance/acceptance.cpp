#include <chrono>
#include <cmath>
#include <algorithm>
#include <cstdio>
#include <limits>
#include <filesystem>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "metrik/atb.hpp"
#include "metrik/io.hpp"
#include "metrik/spaces.hpp"
#include "metrik/sra.hpp"
#include "oracles.hpp"

using namespace metrik;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// SRA sets found by the Laakso and snowflake checks, reused by the angle bound.
struct PassingSet {
  FiniteMetricSpace space;
  double alpha;
};
std::vector<PassingSet> g_passing;

Result laakso_sra() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = fs::temp_directory_path() / ("metrik-laakso-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string file = (dir / "laakso6.json").string();
  std::ostringstream out, err;
  const int gen = cli::run({"gen", "laakso", "--level", "6", "--sra-points", "6", "--output", file},
                           out, err);
  r.require(gen == 0, "gen laakso exited " + std::to_string(gen));
  std::ostringstream out2;
  const int check = cli::run({"sra", "check", file, "--alpha", "0.6"}, out2, err);
  r.require(check == 0, "sra check exited " + std::to_string(check));
  if (check == 0) {
    const auto report = io::parse_json(out2.str());
    r.require(report["verdict"] == "pass", "sra check verdict not pass");
  }

  const auto doc = io::load_space(file);
  r.require(doc.space.size() == 6, "expected 6 SRA points");
  double worst = 0.0;
  for (int i = 1; i <= 6 && doc.space.size() == 6; ++i) {
    for (int k = i + 1; k <= 6; ++k) {
      double closed = std::pow(4.0, -i) + std::pow(4.0, -k);
      for (int m = i + 1; m <= k; ++m) closed += std::pow(4.0, -m);
      worst = std::max(worst, std::abs(doc.space(static_cast<std::size_t>(i - 1),
                                                 static_cast<std::size_t>(k - 1)) - closed));
    }
  }
  r.require(worst <= 1e-12, fmt("closed-form error %.3g", worst));
  const double secs = seconds_since(t0);
  r.require(secs < 10.0, fmt("runtime %.2f s", secs));
  g_passing.push_back({doc.space, 0.6});
  fs::remove_all(dir);
  if (r.pass) r.detail = fmt("max |d - closed form| = %.3g, %.2f s", worst, secs);
  return r;
}

Result snowflake_sra() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> size(3, 10);
  std::size_t violations = 0;
  std::size_t spaces = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto base = testing::random_metric(size(rng), rng);
    r.require(validate_metric(base).ok(), "random metric failed validation");
    for (const double a : {0.3, 0.5, 0.8}) {
      auto snow = snowflake_transform(base, a);
      ++spaces;
      if (verify_sra_set(snow, SraParameter(a)).pass) {
        g_passing.push_back({std::move(snow), a});
      } else {
        ++violations;
      }
    }
  }
  const double secs = seconds_since(t0);
  r.require(violations == 0, std::to_string(violations) + " snowflaked spaces violate SRA");
  r.require(secs < 10.0, fmt("runtime %.2f s", secs));
  if (r.pass) r.detail = std::to_string(spaces) + " snowflaked spaces, 0 violations, " + fmt("%.2f s", secs);
  return r;
}

Result angle_bound() {
  Result r;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& p : g_passing) {
    std::vector<PointIndex> all(p.space.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto rep = sra_angle_bound(p.space, all, SraParameter(p.alpha));
    if (rep.argmax) worst = std::min(worst, rep.margin);
  }
  r.require(!g_passing.empty(), "no passing subsets collected");
  r.require(worst >= -1e-9, fmt("minimum margin %.3g", worst));
  if (r.pass) r.detail = std::to_string(g_passing.size()) + " subsets, min margin " + fmt("%.4g", worst);
  return r;
}

Result broom() {
  Result r;
  const auto dyadic = broom_tree(BroomSequence::kDyadic, 20);
  for (int a = 1; a <= 9; ++a) {
    r.require(verify_sra_set(dyadic.space, dyadic.tips, SraParameter(a / 10.0)).pass,
              fmt("dyadic tips fail SRA(%.1f)", a / 10.0));
  }
  const auto harmonic = broom_tree(BroomSequence::kHarmonic, 100);
  for (const BroomTree* b : {&dyadic, &harmonic}) {
    for (std::size_t i = 0; i < b->tips.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        r.require(b->space(b->tips[i], b->tips[j]) == 2 * b->t[j], "tip distance != 2 t_j");
      }
    }
  }
  const auto curve = DiscreteCurve::on_space(std::make_shared<FiniteMetricSpace>(harmonic.space),
                                             harmonic.tips);
  r.require(is_self_contracted(curve).pass, "harmonic tip curve not self-contracted");
  double h99 = 0.0;
  for (int i = 1; i <= 99; ++i) h99 += 1.0 / i;
  const double err = std::abs(curve_length(curve).polygonal_length - 2 * h99);
  r.require(err <= 1e-9, fmt("length error %.3g", err));
  if (r.pass) r.detail = fmt("length error %.3g vs 2*H99 = %.10f", err, 2 * h99);
  return r;
}

Result heisenberg() {
  Result r;
  const auto big = heisenberg_axis_curve(10000);
  r.require(is_self_contracted(big).pass, "n = 10^4 samples not self-contracted");
  const double len = curve_length(big).polygonal_length;
  const double expected = 2 * std::sqrt(std::numbers::pi * 10000);
  const double rel = std::abs(len - expected) / expected;
  r.require(rel <= 1e-6, fmt("relative length error %.3g", rel));
  const double small = curve_length(heisenberg_axis_curve(100)).polygonal_length;
  const double ratio = len / small;
  r.require(std::abs(ratio - 10.0) <= 1e-6 * 10.0, fmt("length ratio %.12g", ratio));
  if (r.pass) r.detail = fmt("length %.10f, ratio %.12f", len, ratio);
  return r;
}

Result ramsey() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  const auto n2 = compute_sra_free_bound(2);
  const auto n3 = compute_sra_free_bound(3);
  const auto n4 = compute_sra_free_bound(4);
  r.require(n2.N == 3 && n2.exact(), "N(2) != 3 or not exact");
  r.require(n3.N == 10 && n3.exact(), "N(3) != 10 or not exact");
  r.require(n4.N <= 3277 && !n4.exact(), "N(4) not reported as a bound <= 3277");
  const double secs = seconds_since(t0);
  r.require(secs < 1.0, fmt("runtime %.3f s", secs));
  if (r.pass) r.detail = "N(2) = 3, N(3) = 10 exact; N(4) <= " + n4.N.str() + " (bound)";
  return r;
}

Result calemma() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t seed = 1;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (const double eps : {0.3, 0.7, 1.2}) {
    for (const int dim : {2, 3, 4}) {
      const auto rep = calemma_fuzz(dim, eps, 100000, seed++);
      r.require(rep.violations == 0,
                fmt("eps %.1f dim %.0f has violations", eps, static_cast<double>(dim)));
      worst_gap = std::min(worst_gap, eps - rep.max_angle);
    }
  }
  const double secs = seconds_since(t0);
  r.require(secs < 60.0, fmt("runtime %.2f s", secs));
  if (r.pass) r.detail = fmt("9 x 10^5 trials, min eps - angle %.3g, %.2f s", worst_gap, secs);
  return r;
}

Result oracles() {
  Result r;
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<std::size_t> size(1, 10);
  std::uniform_real_distribution<double> alpha(0.05, 0.95);
  std::size_t agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = testing::random_metric_matrix(size(rng), rng);
    const FiniteMetricSpace s({}, d);
    const double a = alpha(rng);
    const auto oracle = testing::brute_force_best_subset(
        d.size(), [&](const std::vector<std::size_t>& sub) { return testing::sra_set_ok(d, sub, a); });
    const auto got = max_sra_subset(s, SraParameter(a), SearchMode::kExact);
    if (got.points == oracle) ++agree;
  }
  r.require(agree == 200, std::to_string(agree) + "/200 exact SRA searches agree");

  std::uniform_int_distribution<std::size_t> len(1, 50);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> shrink(0.3, 1.05);
  std::size_t curve_agree = 0;
  std::size_t failing = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::vector<double>> pts;
    std::vector<double> x{u(rng) * 5, u(rng) * 5};
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(x);
      const double k = shrink(rng);
      x = {x[0] * k + 0.05 * u(rng), x[1] * k + 0.05 * u(rng)};
    }
    const auto c = DiscreteCurve::in_normed_space(std::move(pts), Norm::l2());
    const auto fast = is_self_contracted(c);
    const auto slow = testing::brute_self_contracted(
        c.size(), [&](std::size_t i, std::size_t j) { return c.distance(i, j); }, kDefaultTolerance);
    const bool same = fast.pass == !slow.has_value() &&
                      (fast.pass || (fast.witness->t1 == slow->t1 && fast.witness->t2 == slow->t2 &&
                                     fast.witness->t3 == slow->t3));
    if (same) ++curve_agree;
    if (slow) ++failing;
  }
  r.require(curve_agree == 500, std::to_string(curve_agree) + "/500 curve scans agree");
  if (r.pass) {
    r.detail = "200/200 SRA searches, 500/500 curve scans (" + std::to_string(failing) +
               " violating)";
  }
  return r;
}

Result descent() {
  Result r;
  std::mt19937_64 rng(9001);
  std::uniform_real_distribution<double> eig(0.05, 10.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> start(-5.0, 5.0);
  std::size_t passed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double l1 = eig(rng), l2 = eig(rng), th = angle(rng);
    const double c = std::cos(th), s = std::sin(th);
    const double a = l1 * c * c + l2 * s * s;
    const double b = (l1 - l2) * c * s;
    const double d = l1 * s * s + l2 * c * c;
    const double top = (a + d) / 2 + std::sqrt((a - d) * (a - d) / 4 + b * b);
    DescentSpec spec{Objective::quadratic(SquareMatrix::from_rows({{a, b}, {b, d}})),
                     Norm::l2(), (1.0 - 1e-9) / top, 500, {start(rng), start(rng)}};
    if (is_self_contracted(gradient_descent_trajectory(spec), 1e-7).pass) ++passed;
  }
  r.require(passed == 100, std::to_string(passed) + "/100 trajectories self-contracted");
  if (r.pass) r.detail = "100/100 trajectories self-contracted at tolerance 1e-7";
  return r;
}

Result stable_norm() {
  Result r;
  const std::vector<LatticePoint> standard{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const std::vector<LatticePoint> skew{{1, 0}, {-1, 0}, {1, 1}, {-1, -1}};
  const auto a = stable_norm_estimate(standard, {1, 1}, 32);
  const auto b = stable_norm_estimate(skew, {0, 1}, 32);
  r.require(a.estimate == 2.0 && a.bracket_width() == 0.0, "standard (1,1) not exactly 2");
  r.require(b.estimate == 2.0, "skew (0,1) not 2");
  for (const auto* e : {&a, &b}) {
    for (std::size_t k = 1; k <= e->f.size(); ++k) {
      r.require(static_cast<double>(e->f[k - 1]) - static_cast<double>(k) * e->estimate <=
                    e->two_c,
                "f(k) - k c exceeds the measured 2C");
    }
    r.require(e->subadditive, "f not subadditive");
  }
  if (r.pass) r.detail = fmt("estimates 2 and 2, widths %.0f and %.0f", a.bracket_width(), b.bracket_width());
  return r;
}

struct Exhaustive {
  std::size_t configurations = 0;
  std::size_t premise_holds = 0;
  std::size_t exceptions = 0;
};

void transfer_check(const GeodesicSet& geo, VertexId p, const std::vector<VertexId>& candidates,
                    double eps, Exhaustive& tally) {
  const std::size_t m = candidates.size();
  std::vector<bool> all_pass(m + 1, true);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<VertexId> sub;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) sub.push_back(candidates[i]);
    }
    if (sub.size() < 2) continue;
    if (!atb_star_check(geo, p, eps, sub).pass) all_pass[sub.size()] = false;
  }
  const auto sep = max_angle_separated(geo.metric(), p, eps, candidates);
  for (std::size_t L = 2; L <= m; ++L) {
    ++tally.configurations;
    if (!all_pass[L]) continue;
    ++tally.premise_holds;
    if (sep.cardinality() >= L) ++tally.exceptions;
  }
}

Result atb_transfer() {
  Result r;
  Exhaustive tally;
  const double eps_values[] = {0.3, 0.7, 1.2};

  auto all_centres = [&](const WeightedGraph& g) {
    const GeodesicSet geo(g);
    const std::size_t n = g.vertex_count();
    for (VertexId p = 0; p < n; ++p) {
      std::vector<VertexId> cands;
      for (VertexId v = 0; v < n && cands.size() < 12; ++v) {
        if (v != p) cands.push_back(v);
      }
      for (const double e : eps_values) transfer_check(geo, p, cands, e, tally);
    }
  };

  all_centres(broom_tree(BroomSequence::kDyadic, 5).graph);
  all_centres(broom_tree(BroomSequence::kHarmonic, 5).graph);

  WeightedGraph tripod(7);
  for (VertexId leg = 0; leg < 3; ++leg) {
    tripod.add_edge(0, 1 + 2 * leg, 1.0);
    tripod.add_edge(1 + 2 * leg, 2 + 2 * leg, 1.0);
  }
  all_centres(tripod);

  const auto laakso = laakso_graph(2);
  const GeodesicSet geo(laakso.graph);
  std::mt19937_64 rng(11);
  const std::size_t n = laakso.graph.vertex_count();
  for (VertexId p = 0; p < n; ++p) {
    for (int draw = 0; draw < 2; ++draw) {
      std::vector<VertexId> others;
      for (VertexId v = 0; v < n; ++v) {
        if (v != p) others.push_back(v);
      }
      std::shuffle(others.begin(), others.end(), rng);
      others.resize(12);
      std::sort(others.begin(), others.end());
      for (const double e : eps_values) transfer_check(geo, p, others, e, tally);
    }
  }
  r.require(tally.exceptions == 0, std::to_string(tally.exceptions) + " exceptions");
  r.require(tally.premise_holds > 0, "ATB* never held; the check is vacuous");
  if (r.pass) {
    r.detail = std::to_string(tally.configurations) + " configurations, ATB* held in " +
               std::to_string(tally.premise_holds) + ", 0 exceptions";
  }
  return r;
}

Result doubling() {
  Result r;
  r.require(doubling_threshold(1.0).n_tilde == 5, "threshold(1) != 5");
  r.require(doubling_threshold(0.5).n_tilde == 8, "threshold(0.5) != 8");
  r.require(doubling_threshold(0.6).n_tilde == 7, "threshold(0.6) != 7");
  std::vector<double> radii;
  for (int k = -12; k <= 1; ++k) radii.push_back(std::ldexp(1.0, k));
  std::string seen;
  for (const std::size_t n : {10u, 20u, 40u}) {
    const auto b = broom_tree(BroomSequence::kDyadic, n);
    std::vector<PointIndex> centres(b.space.size());
    for (std::size_t i = 0; i < centres.size(); ++i) centres[i] = i;
    const auto est = doubling_estimate(b.space, centres, radii);
    seen += (seen.empty() ? "" : ", ") + std::to_string(est.constant);
    r.require(est.constant == 5, "n = " + std::to_string(n) + " gives " +
                                     std::to_string(est.constant) + " (pinned 5)");
  }
  if (r.pass) r.detail = "thresholds 5, 8, 7; broom constants " + seen;
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"[1] Laakso G6 X is SRA(3/5)", laakso_sra},
      {"[2] snowflakes satisfy SRA", snowflake_sra},
      {"[3] SRA subsets meet the angle bound", angle_bound},
      {"[4] broom tree tips", broom},
      {"[5] Heisenberg axis", heisenberg},
      {"[6] Ramsey certificate", ramsey},
      {"[7] comparison-angle lemma fuzz", calemma},
      {"[8] oracle equivalences", oracles},
      {"[9] gradient descent is self-contracted", descent},
      {"[10] stable norm", stable_norm},
      {"[11] ATB* to ATB transfer", atb_transfer},
      {"[12] doubling threshold and broom constant", doubling},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Result res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    if (!res.pass) ++failures;
    std::printf("%s  %s: %s\n", res.pass ? "PASS" : "FAIL", name, res.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
