#include <memory>

#include "commands.hpp"
#include "metrik/curves.hpp"
#include "metrik/error.hpp"

namespace metrik::cli {
namespace {

json violation_json(const SelfContractionViolation& v) {
  return {{"t1", v.t1}, {"t2", v.t2}, {"t3", v.t3}, {"near", v.near}, {"far", v.far}};
}

void register_curve(CLI::App& app, Registry& reg) {
  auto* curve = app.add_subcommand("curve", "Discrete curves: self-contractedness, length, SRA");
  curve->require_subcommand(1);

  {
    auto path = std::make_shared<std::string>();
    auto* sub = curve->add_subcommand("check", "Is the curve self-contracted?");
    sub->add_option("curve", *path, "Curve JSON")->required();
    add_tolerance(sub, reg);
    on_run(sub, reg, "curve check", [path, &reg](Report& r) {
      const DiscreteCurve c = load_curve(r, *path, reg.tolerance);
      const double tol = reg.tolerance > 0.0 ? reg.tolerance : c.native_tolerance();
      const SelfContractedReport rep = is_self_contracted(c, tol);
      r.body()["points"] = c.size();
      r.body()["tolerance"] = tol;
      r.body()["witness"] = rep.witness ? violation_json(*rep.witness) : json(nullptr);
      r.set_verdict(rep.pass ? Verdict::kPass : Verdict::kViolation);
    });
  }
  {
    auto path = std::make_shared<std::string>();
    auto prefixes = std::make_shared<bool>(false);
    auto* sub = curve->add_subcommand("length", "Polygonal length");
    sub->add_option("curve", *path, "Curve JSON")->required();
    sub->add_flag("--prefixes", *prefixes, "Include the cumulative lengths");
    on_run(sub, reg, "curve length", [path, prefixes, &reg](Report& r) {
      const DiscreteCurve c = load_curve(r, *path, reg.tolerance);
      const LengthReport len = curve_length(c);
      r.body()["points"] = c.size();
      r.body()["length"] = len.polygonal_length;
      if (*prefixes) r.body()["prefix_lengths"] = len.prefix_lengths;
      r.set_verdict(Verdict::kSuccess);
    });
  }
  {
    struct Args {
      std::string path;
      double alpha = 0.0;
      std::size_t size = 3;
      std::size_t window = 40;
    };
    auto o = std::make_shared<Args>();
    auto* sub = curve->add_subcommand("extract-sra", "Find an SRA(alpha) subset of the image");
    sub->add_option("curve", o->path, "Curve JSON")->required();
    sub->add_option("--alpha", o->alpha, "Exponent in (0, 1)")->required();
    sub->add_option("--size,-k", o->size, "Target subset size")->required();
    sub->add_option("--window", o->window, "Exact-search window");
    add_tolerance(sub, reg);
    on_run(sub, reg, "curve extract-sra", [o, &reg](Report& r) {
      const DiscreteCurve c = load_curve(r, o->path, reg.tolerance);
      const CurveSraExtraction ex =
          extract_sra_from_curve(c, SraParameter(o->alpha), o->size, o->window);
      r.body()["alpha"] = o->alpha;
      r.body()["target_size"] = o->size;
      r.body()["image_size"] = ex.image_size;
      r.body()["best_size"] = ex.best_size;
      r.body()["positions"] = ex.positions;
      r.set_verdict(ex.found ? Verdict::kSuccess : Verdict::kNotFound);
    });
  }
}

void register_descend(CLI::App& app, Registry& reg) {
  struct Args {
    std::string objective = "quadratic";
    std::string matrix;
    std::size_t dim = 2;
    std::string start;
    double step = 0.0;
    std::size_t iterations = 100;
    std::string norm = "l2";
    double check_tolerance = 1e-7;
  };
  auto o = std::make_shared<Args>();
  auto* sub = app.add_subcommand("descend", "Gradient-descent trajectory and its self-contractedness");
  sub->add_option("--objective", o->objective,
                  "quadratic, half-sq-norm, sin-x1 or ball-distance");
  sub->add_option("--matrix", o->matrix, "Quadratic form rows, e.g. \"2,0;0,1\"");
  sub->add_option("--dim", o->dim, "Dimension for named objectives");
  sub->add_option("--start", o->start, "Starting point, comma separated")->required();
  sub->add_option("--step", o->step, "Step size h (default 1/lambda_max for quadratics)");
  sub->add_option("--iterations", o->iterations, "Number of steps");
  sub->add_option("--norm", o->norm, "Norm used to measure the trajectory");
  sub->add_option("--tolerance", o->check_tolerance, "Self-contracted tolerance");
  on_run(sub, reg, "descend", [o](Report& r) {
    std::optional<Objective> f;
    if (o->objective == "quadratic") {
      if (o->matrix.empty()) throw ParameterError("--objective quadratic needs --matrix");
      f = Objective::quadratic(SquareMatrix::from_rows(parse_matrix(o->matrix)));
    } else {
      f = Objective::named(o->objective, o->dim);
    }
    double step = o->step;
    if (step <= 0.0) {
      if (!f->quadratic_form()) throw ParameterError("--step is required for this objective");
      step = 1.0 / largest_eigenvalue(*f->quadratic_form());
    }
    DescentSpec spec{*f, Norm::parse(o->norm), step, o->iterations, parse_vector(o->start)};
    const DiscreteCurve traj = gradient_descent_trajectory(spec);
    const SelfContractedReport rep = is_self_contracted(traj, o->check_tolerance);
    const auto& coords = std::get<DiscreteCurve::InNormedSpace>(traj.backing()).coords;
    r.body()["objective"] = f->name();
    r.body()["step"] = step;
    r.body()["iterations"] = o->iterations;
    r.body()["norm"] = spec.norm.tag();
    r.body()["coords"] = coords;
    r.body()["final_value"] = f->value(coords.back());
    r.body()["length"] = curve_length(traj).polygonal_length;
    r.body()["check_tolerance"] = o->check_tolerance;
    r.body()["witness"] = rep.witness ? violation_json(*rep.witness) : json(nullptr);
    r.set_verdict(rep.pass ? Verdict::kPass : Verdict::kViolation);
  });
}

void register_quasiconvex(CLI::App& app, Registry& reg) {
  struct Args {
    std::string objective;
    std::size_t dim = 2;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::string norm = "l2";
    double box = 4.0;
  };
  auto o = std::make_shared<Args>();
  auto* sub = app.add_subcommand("quasiconvex", "Sample the quasi-convexity inequality on segments");
  sub->add_option("--objective", o->objective, "half-sq-norm, sin-x1 or ball-distance")
      ->required();
  sub->add_option("--dim", o->dim, "Dimension");
  sub->add_option("--trials", o->trials, "Number of sampled segments");
  sub->add_option("--seed", o->seed, "Random seed")->required();
  sub->add_option("--norm", o->norm, "Norm label");
  sub->add_option("--box", o->box, "Sample in [-box, box]^dim");
  add_tolerance(sub, reg);
  on_run(sub, reg, "quasiconvex", [o, &reg](Report& r) {
    r.set_seed(o->seed);
    const Objective f = Objective::named(o->objective, o->dim);
    const double tol = reg.tolerance > 0.0 ? reg.tolerance : kDefaultTolerance;
    const QuasiConvexityReport q =
        quasi_convexity_sample(f, Norm::parse(o->norm), o->trials, o->seed, o->box, tol);
    r.body()["objective"] = f.name();
    r.body()["norm"] = q.norm;
    r.body()["trials"] = q.trials;
    if (q.counterexample) {
      const auto& c = *q.counterexample;
      r.body()["counterexample"] = {{"x", c.x},
                                    {"y", c.y},
                                    {"t", c.t},
                                    {"value_mid", c.value_mid},
                                    {"value_max", c.value_max}};
    } else {
      r.body()["counterexample"] = nullptr;
    }
    r.set_verdict(q.pass ? Verdict::kPass : Verdict::kViolation);
  });
}

}  // namespace

void register_curve_commands(CLI::App& app, Registry& reg) {
  register_curve(app, reg);
  register_descend(app, reg);
  register_quasiconvex(app, reg);
}

}  // namespace metrik::cli
