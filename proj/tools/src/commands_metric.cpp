#include <cmath>
#include <memory>
#include <numbers>
#include <set>

#include "commands.hpp"
#include "metrik/atb.hpp"
#include "metrik/error.hpp"

namespace metrik::cli {
namespace {

struct SpaceArgs {
  std::string path;
  std::string subset = "all";
};

void register_validate(CLI::App& app, Registry& reg) {
  auto o = std::make_shared<SpaceArgs>();
  auto max_violations = std::make_shared<std::size_t>(1000);
  auto* sub = app.add_subcommand("validate", "Check the metric axioms of a space");
  sub->add_option("space", o->path, "Space file (JSON, CSV or graph JSON)")->required();
  sub->add_option("--max-violations", *max_violations, "Stop after this many violations");
  add_tolerance(sub, reg);
  on_run(sub, reg, "validate", [o, max_violations, &reg](Report& r) {
    const auto doc = load_space(r, o->path, reg.tolerance);
    const auto report = validate_metric(doc.space, *max_violations);
    json violations = json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"kind", std::string(to_string(v.kind))},
                            {"i", v.i},
                            {"j", v.j},
                            {"k", v.k},
                            {"excess", v.excess}});
    }
    r.body()["points"] = doc.space.size();
    r.body()["tolerance"] = doc.space.tolerance();
    r.body()["violations"] = std::move(violations);
    r.body()["truncated"] = report.truncated;
    r.set_verdict(report.ok() ? Verdict::kPass : Verdict::kViolation);
  });
}

void register_sra(CLI::App& app, Registry& reg) {
  auto* sra = app.add_subcommand("sra", "SRA(alpha) checks and maximum subsets");
  sra->require_subcommand(1);

  {
    auto o = std::make_shared<SpaceArgs>();
    auto alpha = std::make_shared<double>();
    auto* sub = sra->add_subcommand("check", "Verify that a subset is SRA(alpha)");
    sub->add_option("space", o->path, "Space file")->required();
    sub->add_option("--alpha", *alpha, "Exponent in (0, 1)")->required();
    sub->add_option("--subset", o->subset,
                    "Metadata list name, 'all', or comma-separated labels/indices");
    add_tolerance(sub, reg);
    on_run(sub, reg, "sra check", [o, alpha, &reg](Report& r) {
      const auto doc = load_space(r, o->path, reg.tolerance);
      const SraParameter a(*alpha);
      const auto subset = io::resolve_subset(doc, o->subset);
      const SraReport report = verify_sra_set(doc.space, subset, a);
      r.body()["alpha"] = *alpha;
      r.body()["subset"] = points_json(doc.space, subset);
      r.body()["checked_triples"] = report.checked_triples;
      r.body()["witness"] = report.witness ? triple_json(doc.space, *report.witness) : json();
      if (report.pass) {
        try {
          const AngleBoundReport angles = sra_angle_bound(doc.space, subset, a);
          r.body()["angle_bound"] = {{"max_angle", angles.max_angle},
                                     {"bound", angles.bound},
                                     {"margin", angles.margin},
                                     {"pass", angles.pass}};
        } catch (const DegenerateInput& e) {
          r.body()["angle_bound"] = nullptr;
        }
      }
      r.set_verdict(report.pass ? Verdict::kPass : Verdict::kViolation);
    });
  }

  {
    auto o = std::make_shared<SpaceArgs>();
    auto alpha = std::make_shared<double>();
    auto exact = std::make_shared<bool>(false);
    auto greedy = std::make_shared<bool>(false);
    auto cap = std::make_shared<std::size_t>(kDefaultExactSraCap);
    auto* sub = sra->add_subcommand("max", "Largest SRA(alpha) subset");
    sub->add_option("space", o->path, "Space file")->required();
    sub->add_option("--alpha", *alpha, "Exponent in (0, 1)")->required();
    sub->add_option("--subset", o->subset, "Candidate pool");
    auto* fe = sub->add_flag("--exact", *exact, "Exact branch-and-bound (default)");
    auto* fg = sub->add_flag("--greedy", *greedy, "Greedy lower bound");
    fe->excludes(fg);
    sub->add_option("--cap", *cap, "Largest pool accepted by exact search");
    add_tolerance(sub, reg);
    on_run(sub, reg, "sra max", [o, alpha, greedy, cap, &reg](Report& r) {
      const auto doc = load_space(r, o->path, reg.tolerance);
      const auto pool = io::resolve_subset(doc, o->subset);
      const SearchMode mode = *greedy ? SearchMode::kGreedy : SearchMode::kExact;
      const SraSubset best = max_sra_subset(doc.space, pool, SraParameter(*alpha), mode, *cap);
      r.body()["alpha"] = *alpha;
      r.body()["mode"] = *greedy ? "greedy" : "exact";
      r.body()["pool_size"] = pool.size();
      r.body()["subset"] = points_json(doc.space, best.points);
      r.body()["size"] = best.points.size();
      r.body()["optimal"] = best.optimal;
      r.set_verdict(Verdict::kSuccess);
    });
  }
}

void register_angle(CLI::App& app, Registry& reg) {
  auto o = std::make_shared<SpaceArgs>();
  auto pts = std::make_shared<std::vector<std::string>>();
  auto alpha = std::make_shared<double>(0.0);
  auto* sub = app.add_subcommand("angle", "Comparison angle at z of the triangle (x, z, y)");
  sub->add_option("space", o->path, "Space file")->required();
  sub->add_option("points", *pts, "x z y as labels or indices")->required()->expected(3);
  sub->add_option("--alpha", *alpha, "Also compare with the SRA(alpha) angle bound");
  add_tolerance(sub, reg);
  on_run(sub, reg, "angle", [o, pts, alpha, &reg](Report& r) {
    const auto doc = load_space(r, o->path, reg.tolerance);
    const PointIndex x = resolve_point(doc, (*pts)[0]);
    const PointIndex z = resolve_point(doc, (*pts)[1]);
    const PointIndex y = resolve_point(doc, (*pts)[2]);
    const Angle a = comparison_angle(doc.space, x, z, y);
    r.body()["triangle"] = points_json(doc.space, {x, z, y});
    r.body()["radians"] = a.radians;
    r.body()["degrees"] = a.radians * 180.0 / std::numbers::pi;
    r.set_verdict(Verdict::kSuccess);
    if (*alpha != 0.0) {
      const SraParameter p(*alpha);
      r.body()["alpha"] = *alpha;
      r.body()["bound"] = p.angle_bound();
      r.set_verdict(a.radians <= p.angle_bound() + doc.space.tolerance() ? Verdict::kPass
                                                                           : Verdict::kViolation);
    }
  });
}

void register_beta(CLI::App& app, Registry& reg) {
  auto eps = std::make_shared<double>();
  auto* sub = app.add_subcommand("beta", "beta(epsilon) = (1 - cos e) sin e / (2 (1 + sin e))");
  sub->add_option("--epsilon", *eps, "Angle in (0, pi/2)")->required();
  on_run(sub, reg, "beta", [eps](Report& r) {
    r.body()["epsilon"] = *eps;
    r.body()["beta"] = compute_beta(*eps);
    r.set_verdict(Verdict::kSuccess);
  });
}

void register_bound(CLI::App& app, Registry& reg) {
  auto* bound = app.add_subcommand("bound", "Ramsey and doubling thresholds");
  bound->require_subcommand(1);

  {
    auto L = std::make_shared<int>();
    auto* sub = bound->add_subcommand("n-of-l", "Size N(L) forcing an SRA-free ATB failure");
    sub->add_option("--l,-L", *L, "ATB constant L >= 2")->required();
    on_run(sub, reg, "bound n-of-l", [L](Report& r) {
      const RamseyCertificate cert = compute_sra_free_bound(*L);
      json chain = json::array();
      for (const ChainEntry& e : cert.chain) {
        chain.push_back({{"index", e.index}, {"value", bigint_json(e.value)}, {"exact", e.exact}});
      }
      r.body()["L"] = *L;
      r.body()["N"] = bigint_json(cert.N);
      r.body()["chain"] = std::move(chain);
      r.body()["exactness"] = cert.exact() ? "all-exact" : "bound";
      r.set_verdict(Verdict::kSuccess);
    });
  }
  {
    auto alpha = std::make_shared<double>();
    auto* sub = bound->add_subcommand("ntilde", "Doubling threshold N~(alpha)");
    sub->add_option("--alpha", *alpha, "Exponent in (0, 1]")->required();
    on_run(sub, reg, "bound ntilde", [alpha](Report& r) {
      const DoublingThreshold t = doubling_threshold(*alpha);
      r.body()["alpha"] = t.alpha;
      r.body()["n_tilde"] = t.n_tilde;
      r.set_verdict(Verdict::kSuccess);
    });
  }
  {
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto* sub = bound->add_subcommand("ramsey", "Upper bound on the Ramsey number R(a, b)");
    sub->add_option("a", *a, "First argument")->required();
    sub->add_option("b", *b, "Second argument")->required();
    on_run(sub, reg, "bound ramsey", [a, b](Report& r) {
      BigInt va, vb;
      try {
        va = BigInt(*a);
        vb = BigInt(*b);
      } catch (const std::exception&) {
        throw MalformedInput("Ramsey arguments must be integers");
      }
      const RamseyValue v = ramsey_upper_bound(va, vb);
      r.body()["a"] = bigint_json(va);
      r.body()["b"] = bigint_json(vb);
      r.body()["value"] = bigint_json(v.value);
      r.body()["exact"] = v.exact;
      r.set_verdict(Verdict::kSuccess);
    });
  }
}

std::vector<double> dyadic_radii(const FiniteMetricSpace& space) {
  double lo = 0.0;
  double hi = 0.0;
  for (PointIndex i = 0; i < space.size(); ++i) {
    for (PointIndex j = i + 1; j < space.size(); ++j) {
      const double d = space(i, j);
      if (d > space.tolerance() && (lo == 0.0 || d < lo)) lo = d;
      hi = std::max(hi, d);
    }
  }
  std::vector<double> radii;
  if (hi == 0.0) return radii;
  for (int k = static_cast<int>(std::floor(std::log2(lo))); k <= std::ceil(std::log2(hi)); ++k) {
    radii.push_back(std::ldexp(1.0, k));
  }
  return radii;
}

void register_doubling(CLI::App& app, Registry& reg) {
  auto o = std::make_shared<SpaceArgs>();
  auto radii_text = std::make_shared<std::string>();
  auto* sub = app.add_subcommand("doubling", "Greedy doubling-constant estimate");
  sub->add_option("space", o->path, "Space file")->required();
  sub->add_option("--centers", o->subset, "Ball centres (default: all points)");
  sub->add_option("--radii", *radii_text,
                  "Comma-separated radii (default: powers of two spanning the distances)");
  add_tolerance(sub, reg);
  on_run(sub, reg, "doubling", [o, radii_text, &reg](Report& r) {
    const auto doc = load_space(r, o->path, reg.tolerance);
    const auto centers = io::resolve_subset(doc, o->subset);
    const std::vector<double> radii =
        radii_text->empty() ? dyadic_radii(doc.space) : parse_vector(*radii_text);
    const DoublingEstimate est = doubling_estimate(doc.space, centers, radii);
    const double tol = doc.space.tolerance();
    bool covered = true;
    json scales = json::array();
    for (const BallCover& b : est.scales) {
      for (PointIndex q = 0; q < doc.space.size(); ++q) {
        if (doc.space(b.center, q) > b.radius + tol) continue;
        const bool hit = std::any_of(b.cover_centers.begin(), b.cover_centers.end(),
                                     [&](PointIndex c) {
                                       return doc.space(c, q) <= b.radius / 2.0 + tol;
                                     });
        covered = covered && hit;
      }
      scales.push_back({{"center", b.center},
                        {"radius", b.radius},
                        {"ball_size", b.ball_size},
                        {"cover", b.cover_centers}});
    }
    r.body()["constant"] = est.constant;
    r.body()["radii"] = radii;
    r.body()["scales"] = std::move(scales);
    r.body()["covers_verified"] = covered;
    r.set_verdict(covered ? Verdict::kSuccess : Verdict::kViolation);
  });
}

void register_separated(CLI::App& app, Registry& reg) {
  auto o = std::make_shared<SpaceArgs>();
  auto radius = std::make_shared<double>();
  auto cap = std::make_shared<std::size_t>(30);
  auto* sub = app.add_subcommand("separated", "Largest r-separated subset");
  sub->add_option("space", o->path, "Space file")->required();
  sub->add_option("--r", *radius, "Separation r > 0")->required();
  sub->add_option("--within", o->subset, "Candidate points (default: all)");
  sub->add_option("--cap", *cap, "Largest pool searched exactly");
  add_tolerance(sub, reg);
  on_run(sub, reg, "separated", [o, radius, cap, &reg](Report& r) {
    const auto doc = load_space(r, o->path, reg.tolerance);
    const auto pool = io::resolve_subset(doc, o->subset);
    const SeparatedSubset s =
        max_separated_subset(doc.space, *radius, std::span<const PointIndex>(pool), *cap);
    r.body()["r"] = *radius;
    r.body()["subset"] = points_json(doc.space, s.points);
    r.body()["size"] = s.points.size();
    r.body()["exact"] = s.exact;
    r.set_verdict(Verdict::kSuccess);
  });
}

}  // namespace

void register_metric_commands(CLI::App& app, Registry& reg) {
  register_validate(app, reg);
  register_sra(app, reg);
  register_angle(app, reg);
  register_beta(app, reg);
  register_bound(app, reg);
  register_doubling(app, reg);
  register_separated(app, reg);
}

}  // namespace metrik::cli
