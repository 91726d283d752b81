#include <cmath>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "metrik/error.hpp"
#include "metrik/spaces.hpp"

namespace metrik::cli {
namespace {

// Dense outputs larger than this are refused; use a graph or curve format.
constexpr std::size_t kMaxDensePoints = 4000;

void merge_into(Report& r, const json& doc) {
  for (const auto& [key, value] : doc.items()) r.body()[key] = value;
}

std::vector<LatticePoint> parse_generators(const std::string& text) {
  std::vector<LatticePoint> gens;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    LatticePoint g;
    for (const double x : parse_vector(row)) {
      if (x != std::floor(x) || std::abs(x) > 1e15) {
        throw MalformedInput("generator entries must be integers");
      }
      g.push_back(static_cast<std::int64_t>(x));
    }
    gens.push_back(std::move(g));
  }
  if (gens.empty()) throw MalformedInput("no generators given");
  return gens;
}

// Adds missing inverses and drops duplicates, keeping first-seen order.
std::vector<LatticePoint> symmetric_closure(const std::vector<LatticePoint>& gens) {
  std::vector<LatticePoint> out;
  std::set<LatticePoint> seen;
  auto push = [&](const LatticePoint& g) {
    if (seen.insert(g).second) out.push_back(g);
  };
  for (const auto& g : gens) {
    push(g);
    LatticePoint neg = g;
    for (auto& x : neg) x = -x;
    push(neg);
  }
  return out;
}

std::string lattice_label(const LatticePoint& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(g[i]);
  }
  return s + ")";
}

void register_laakso(CLI::App* gen, Registry& reg) {
  struct Args {
    int level = 1;
    int sra_points = 0;
    std::string format = "space";
    int cap = kDefaultLaaksoCap;
  };
  auto o = std::make_shared<Args>();
  auto* sub = gen->add_subcommand("laakso", "Laakso graph G_N");
  sub->add_option("--level,-N", o->level, "Level N >= 0")->required();
  sub->add_option("--sra-points", o->sra_points,
                  "Emit only the points x_1..x_n (1 <= n <= N) of the SRA(3/5) family");
  sub->add_option("--format", o->format, "space or graph")
      ->check(CLI::IsMember({"space", "graph"}));
  sub->add_option("--cap", o->cap, "Largest level accepted");
  add_tolerance(sub, reg);
  on_run(sub, reg, "gen laakso", [o, &reg](Report& r) {
    const LaaksoGraph g = laakso_graph(o->level, o->cap);
    const double tol = reg.tolerance > 0.0 ? reg.tolerance : kDefaultTolerance;
    json meta = {{"construction", "laakso"},
                 {"level", g.level},
                 {"edge_length", g.edge_length},
                 {"vertices", g.graph.vertex_count()},
                 {"edges", g.graph.edge_count()},
                 {"root", g.root},
                 {"far_end", g.far_end}};
    std::optional<LaaksoSraPoints> sra;
    if (o->sra_points > 0) sra = laakso_sra_points(g, o->sra_points);

    if (o->format == "graph") {
      if (sra) meta["points"] = {{"X", sra->x}, {"Y", sra->y}};
      json doc = io::graph_to_json(g.graph);
      doc["metadata"] = std::move(meta);
      merge_into(r, doc);
    } else if (sra) {
      FiniteMetricSpace space = graph_metric(g.graph, sra->x, tol);
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < sra->x.size(); ++i) labels.push_back("x" + std::to_string(i + 1));
      space = FiniteMetricSpace(labels, std::vector<double>(space.flat().begin(), space.flat().end()),
                                space.size(), tol);
      std::vector<PointIndex> all(space.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      meta["points"] = {{"X", all}};
      meta["graph_vertices"] = {{"X", sra->x}, {"Y", sra->y}};
      merge_into(r, io::space_to_json(space, meta));
    } else {
      if (g.graph.vertex_count() > kMaxDensePoints) {
        throw CapacityExceeded("G_" + std::to_string(o->level) + " has " +
                               std::to_string(g.graph.vertex_count()) +
                               " vertices; use --format graph or --sra-points");
      }
      meta["points"] = {{"root", {g.root}}, {"far_end", {g.far_end}}};
      merge_into(r, io::space_to_json(graph_metric(g.graph, tol), meta));
    }
    r.set_verdict(Verdict::kSuccess);
  });
}

void register_broom(CLI::App* gen, Registry& reg) {
  struct Args {
    std::size_t n = 10;
    std::string sequence = "dyadic";
    std::string format = "space";
  };
  auto o = std::make_shared<Args>();
  auto* sub = gen->add_subcommand("broom", "Broom tree with branches of height t_i");
  sub->add_option("--n", o->n, "Number of branches")->required();
  sub->add_option("--sequence", o->sequence, "dyadic (t_i = 2^(1-i)) or harmonic (t_i = 1/i)")
      ->check(CLI::IsMember({"dyadic", "harmonic"}));
  sub->add_option("--format", o->format, "space, graph, or curve (the tips in order)")
      ->check(CLI::IsMember({"space", "graph", "curve"}));
  add_tolerance(sub, reg);
  on_run(sub, reg, "gen broom", [o, &reg](Report& r) {
    const BroomSequence seq =
        o->sequence == "dyadic" ? BroomSequence::kDyadic : BroomSequence::kHarmonic;
    const BroomTree b =
        broom_tree(seq, o->n, reg.tolerance > 0.0 ? reg.tolerance : kDefaultTolerance);
    json meta = {{"construction", "broom"},
                 {"sequence", o->sequence},
                 {"t", b.t},
                 {"points",
                  {{"root", {b.root}}, {"branch_points", b.branch_points}, {"tips", b.tips}}}};
    if (o->format == "curve") {
      merge_into(r, {{"space", io::space_to_json(b.space, meta)},
                     {"order", b.tips},
                     {"metadata", meta}});
    } else if (o->format == "graph") {
      json doc = io::graph_to_json(b.graph);
      doc["metadata"] = std::move(meta);
      merge_into(r, doc);
    } else {
      merge_into(r, io::space_to_json(b.space, meta));
    }
    r.set_verdict(Verdict::kSuccess);
  });
}

void register_heisenberg(CLI::App* gen, Registry& reg) {
  struct Args {
    std::size_t steps = 100;
    double lo = 0.0;
    double hi = 1.0;
    std::string format = "curve";
  };
  auto o = std::make_shared<Args>();
  auto* sub = gen->add_subcommand("heisenberg", "Uniform samples of the Heisenberg z-axis");
  sub->add_option("--steps,-n", o->steps, "Number of steps (steps + 1 points)")->required();
  sub->add_option("--lo", o->lo, "Start parameter");
  sub->add_option("--hi", o->hi, "End parameter");
  sub->add_option("--format", o->format, "curve (implicit metric) or space (dense)")
      ->check(CLI::IsMember({"curve", "space"}));
  add_tolerance(sub, reg);
  on_run(sub, reg, "gen heisenberg", [o, &reg](Report& r) {
    json meta = {{"construction", "heisenberg-axis"},
                 {"steps", o->steps},
                 {"lo", o->lo},
                 {"hi", o->hi},
                 {"distance", "2 sqrt(pi |s - t|)"}};
    if (o->format == "space") {
      if (o->steps + 1 > kMaxDensePoints) {
        throw CapacityExceeded("too many samples for a dense space; use --format curve");
      }
      FiniteMetricSpace s = heisenberg_axis(o->steps, o->lo, o->hi);
      if (reg.tolerance > 0.0) s = s.with_tolerance(reg.tolerance);
      merge_into(r, io::space_to_json(s, meta));
    } else {
      merge_into(r, {{"line",
                      {{"params", heisenberg_axis_parameters(o->steps, o->lo, o->hi)},
                       {"scale", 2.0 * std::sqrt(std::numbers::pi)},
                       {"exponent", 0.5}}},
                     {"metadata", meta}});
    }
    r.set_verdict(Verdict::kSuccess);
  });
}

void register_cayley(CLI::App* gen, Registry& reg) {
  struct Args {
    std::string generators;
    long radius = 2;
  };
  auto o = std::make_shared<Args>();
  auto* sub = gen->add_subcommand("cayley", "Word-metric ball of Z^n");
  sub->add_option("--generators", o->generators,
                  "Generators as rows, e.g. \"1,0;0,1\" (inverses are added)")
      ->required();
  sub->add_option("--radius", o->radius, "Ball radius")->required();
  add_tolerance(sub, reg);
  on_run(sub, reg, "gen cayley", [o, &reg](Report& r) {
    const auto gens = symmetric_closure(parse_generators(o->generators));
    const WordMetricBall ball = cayley_ball(gens, o->radius);
    if (ball.size() > kMaxDensePoints) {
      throw CapacityExceeded("ball has " + std::to_string(ball.size()) +
                             " elements; lower --radius");
    }
    std::vector<LatticePoint> elems;
    std::vector<long> lengths;
    for (const auto& [g, d] : ball.table()) {
      elems.push_back(g);
      lengths.push_back(d);
    }
    std::vector<std::string> labels;
    for (const auto& g : elems) labels.push_back(lattice_label(g));
    // Differences of elements of B(r) lie in B(2r).
    const WordMetricBall wide = cayley_ball(gens, 2 * o->radius);
    const auto space = FiniteMetricSpace::from_function(
        elems.size(),
        [&](std::size_t a, std::size_t b) {
          return static_cast<double>(wide.distance(elems[a], elems[b]));
        },
        labels, reg.tolerance > 0.0 ? reg.tolerance : kDefaultTolerance);
    json meta = {{"construction", "cayley"},
                 {"generators", gens},
                 {"radius", o->radius},
                 {"elements", elems},
                 {"word_length", lengths}};
    merge_into(r, io::space_to_json(space, meta));
    r.set_verdict(Verdict::kSuccess);
  });
}

void register_sample(CLI::App* gen, Registry& reg) {
  struct Args {
    std::size_t dim = 2;
    std::size_t count = 10;
    std::string norm = "l2";
    std::uint64_t seed = 0;
  };
  auto o = std::make_shared<Args>();
  auto* sub = gen->add_subcommand("sample", "Uniform points of [0, 1]^dim under an lp norm");
  sub->add_option("--dim", o->dim, "Dimension");
  sub->add_option("--count", o->count, "Number of points")->required();
  sub->add_option("--norm", o->norm, "l1, l2, linf or lp:<p>");
  sub->add_option("--seed", o->seed, "Random seed")->required();
  add_tolerance(sub, reg);
  on_run(sub, reg, "gen sample", [o, &reg](Report& r) {
    r.set_seed(o->seed);
    if (o->count > kMaxDensePoints) throw CapacityExceeded("too many points for a dense space");
    std::vector<std::vector<double>> coords;
    const Norm norm = Norm::parse(o->norm);
    FiniteMetricSpace s = normed_sample(o->dim, norm, o->count, o->seed, &coords);
    if (reg.tolerance > 0.0) s = s.with_tolerance(reg.tolerance);
    json meta = {{"construction", "sample"},
                 {"dimension", o->dim},
                 {"norm", norm.tag()},
                 {"seed", o->seed},
                 {"coords", coords}};
    merge_into(r, io::space_to_json(s, meta));
    r.set_verdict(Verdict::kSuccess);
  });
}

void register_stable_norm(CLI::App& app, Registry& reg) {
  struct Args {
    std::string generators;
    std::string g;
    long k_max = 32;
    std::size_t budget = kDefaultBfsBudget;
  };
  auto o = std::make_shared<Args>();
  auto* sub = app.add_subcommand("stable-norm", "Bracket the stable norm lim |k g| / k on Z^n");
  sub->add_option("--generators", o->generators,
                  "Generators as rows, e.g. \"1,0;0,1\" (inverses are added)")
      ->required();
  sub->add_option("--g", o->g, "Element, comma separated")->required();
  sub->add_option("--kmax", o->k_max, "Largest multiple k");
  sub->add_option("--budget", o->budget, "BFS element budget");
  on_run(sub, reg, "stable-norm", [o](Report& r) {
    const auto gens = symmetric_closure(parse_generators(o->generators));
    LatticePoint g;
    for (const auto& row : parse_generators(o->g)) g.insert(g.end(), row.begin(), row.end());
    const StableNormEstimate est = stable_norm_estimate(gens, g, o->k_max, o->budget);
    r.body()["generators"] = gens;
    r.body()["g"] = est.g;
    r.body()["k_max"] = o->k_max;
    r.body()["word_lengths"] = est.f;
    r.body()["estimate"] = est.estimate;
    r.body()["lower"] = est.lower;
    r.body()["upper"] = est.upper;
    r.body()["bracket_width"] = est.bracket_width();
    r.body()["two_c"] = est.two_c;
    r.body()["subadditive"] = est.subadditive;
    r.set_verdict(Verdict::kSuccess);
  });
}

}  // namespace

void register_gen_commands(CLI::App& app, Registry& reg) {
  auto* gen = app.add_subcommand("gen", "Generate spaces, graphs and curves");
  gen->require_subcommand(1);
  register_laakso(gen, reg);
  register_broom(gen, reg);
  register_heisenberg(gen, reg);
  register_cayley(gen, reg);
  register_sample(gen, reg);
  register_stable_norm(app, reg);
}

}  // namespace metrik::cli
