#include <memory>

#include "commands.hpp"
#include "metrik/atb.hpp"
#include "metrik/error.hpp"

namespace metrik::cli {
namespace {

// Space view of a geodesic set, so labels and metadata lists resolve the same way.
io::SpaceDocument as_space(const GeodesicSet& geo, const json& metadata) {
  return {geo.metric(), metadata};
}

void register_atb_point(CLI::App* atb, Registry& reg) {
  struct Args {
    std::string path;
    std::string center;
    std::string candidates = "all";
    double epsilon = 0.0;
    double radius = 0.0;
    std::size_t L = 0;
    std::size_t cap = 30;
  };
  auto o = std::make_shared<Args>();
  auto* sub = atb->add_subcommand("point", "Largest epsilon-angle-separated candidate set at p");
  sub->add_option("space", o->path, "Space file")->required();
  sub->add_option("--center,-p", o->center, "Centre point")->required();
  sub->add_option("--epsilon", o->epsilon, "Angle in (0, pi/2)")->required();
  sub->add_option("--candidates", o->candidates, "Candidate points (default: all but p)");
  sub->add_option("--radius", o->radius, "Keep candidates within this distance of p");
  sub->add_option("--L", o->L, "Report pass iff the separated set has fewer than L points");
  sub->add_option("--cap", o->cap, "Largest pool searched exactly");
  add_tolerance(sub, reg);
  on_run(sub, reg, "atb point", [o, &reg](Report& r) {
    const auto doc = load_space(r, o->path, reg.tolerance);
    const PointIndex p = resolve_point(doc, o->center);
    std::vector<PointIndex> cands = io::resolve_subset(doc, o->candidates);
    std::erase(cands, p);
    const std::optional<double> radius =
        o->radius > 0.0 ? std::optional<double>(o->radius) : std::nullopt;
    const AngleSeparationWitness w =
        max_angle_separated(doc.space, p, o->epsilon, cands, radius, o->cap);
    r.body()["center"] = points_json(doc.space, {p});
    r.body()["epsilon"] = o->epsilon;
    r.body()["separated"] = points_json(doc.space, w.points);
    r.body()["cardinality"] = w.cardinality();
    r.body()["exact"] = w.exact;
    r.body()["scope"] = "empirical: supplied candidates only";
    if (o->L > 0) {
      r.body()["L"] = o->L;
      r.set_verdict(w.satisfies_atb(o->L) ? Verdict::kPass : Verdict::kViolation);
    } else {
      r.set_verdict(Verdict::kSuccess);
    }
  });
}

void register_atb_star(CLI::App* atb, Registry& reg) {
  struct Args {
    std::string path;
    std::string center;
    std::string targets;
    double epsilon = 0.0;
  };
  auto o = std::make_shared<Args>();
  auto* sub = atb->add_subcommand("star", "ATB* check on a weighted graph");
  sub->add_option("graph", o->path, "Graph JSON")->required();
  sub->add_option("--center,-p", o->center, "Centre vertex")->required();
  sub->add_option("--epsilon", o->epsilon, "Angle in (0, pi/2)")->required();
  sub->add_option("--targets", o->targets, "Endpoints y_1..y_L")->required();
  add_tolerance(sub, reg);
  on_run(sub, reg, "atb star", [o, &reg](Report& r) {
    const GraphDocument g = load_graph(r, o->path);
    const GeodesicSet geo(g.graph, reg.tolerance > 0.0 ? reg.tolerance : kDefaultTolerance);
    const auto doc = as_space(geo, g.metadata);
    const PointIndex p = resolve_point(doc, o->center);
    const auto targets = io::resolve_subset(doc, o->targets);
    const AtbStarResult res = atb_star_check(geo, p, o->epsilon, targets);
    r.body()["center"] = points_json(doc.space, {p});
    r.body()["epsilon"] = o->epsilon;
    r.body()["beta"] = compute_beta(o->epsilon);
    r.body()["targets"] = points_json(doc.space, targets);
    if (res.witness) {
      r.body()["witness"] = {{"i", res.witness->first},
                             {"j", res.witness->second},
                             {"y_i", targets[res.witness->first]},
                             {"y_j", targets[res.witness->second]},
                             {"distance", res.distance},
                             {"threshold", res.threshold}};
    } else {
      r.body()["witness"] = nullptr;
    }
    r.set_verdict(res.pass ? Verdict::kPass : Verdict::kViolation);
  });
}

void register_calemma(CLI::App* atb, Registry& reg) {
  struct Args {
    int dim = 2;
    double epsilon = 0.0;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
  };
  auto o = std::make_shared<Args>();
  auto* sub = atb->add_subcommand("calemma", "Seeded fuzz of the beta-neighbourhood angle lemma");
  sub->add_option("--dim", o->dim, "Euclidean dimension");
  sub->add_option("--epsilon", o->epsilon, "Angle in (0, pi/2)")->required();
  sub->add_option("--trials", o->trials, "Number of trials");
  sub->add_option("--seed", o->seed, "Random seed")->required();
  on_run(sub, reg, "atb calemma", [o](Report& r) {
    r.set_seed(o->seed);
    const CaLemmaFuzzReport f = calemma_fuzz(o->dim, o->epsilon, o->trials, o->seed);
    r.body()["dimension"] = f.dimension;
    r.body()["epsilon"] = f.epsilon;
    r.body()["beta"] = f.beta;
    r.body()["trials"] = f.trials;
    r.body()["violations"] = f.violations;
    r.body()["max_angle"] = f.max_angle;
    r.set_verdict(f.violations == 0 ? Verdict::kPass : Verdict::kViolation);
  });
}

void register_lrb(CLI::App& app, Registry& reg) {
  struct Args {
    std::string path;
    std::string center;
    double horizon = 0.0;
    std::size_t samples = 64;
  };
  auto o = std::make_shared<Args>();
  auto* sub = app.add_subcommand("lrb", "Linear reverse-bicombing constant of the chosen geodesics");
  sub->add_option("graph", o->path, "Graph JSON")->required();
  sub->add_option("--center,-p", o->center, "Centre vertex")->required();
  sub->add_option("--horizon,-H", o->horizon, "Ball radius H > 0")->required();
  sub->add_option("--samples", o->samples, "Uniform t samples (breakpoints are added)");
  add_tolerance(sub, reg);
  on_run(sub, reg, "lrb", [o, &reg](Report& r) {
    const GraphDocument g = load_graph(r, o->path);
    const GeodesicSet geo(g.graph, reg.tolerance > 0.0 ? reg.tolerance : kDefaultTolerance);
    const auto doc = as_space(geo, g.metadata);
    const PointIndex p = resolve_point(doc, o->center);
    const LrbEstimate est = lrb_constant_estimate(geo, p, o->horizon, o->samples);
    r.body()["center"] = points_json(doc.space, {p});
    r.body()["horizon"] = est.horizon;
    r.body()["K"] = est.K;
    r.body()["pairs"] = est.pairs;
    r.body()["samples"] = est.samples;
    r.body()["worst"] = est.worst ? json(*est.worst) : json(nullptr);
    r.set_verdict(Verdict::kSuccess);
  });
}

}  // namespace

void register_atb_commands(CLI::App& app, Registry& reg) {
  auto* atb = app.add_subcommand("atb", "Angle-separated sets, ATB* checks and the angle lemma");
  atb->require_subcommand(1);
  register_atb_point(atb, reg);
  register_atb_star(atb, reg);
  register_calemma(atb, reg);
  register_lrb(app, reg);
}

}  // namespace metrik::cli
