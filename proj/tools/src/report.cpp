#include "report.hpp"

#include <sstream>

#include "cli.hpp"
#include "metrik/error.hpp"

namespace metrik::cli {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kViolation: return "violation";
    case Verdict::kSuccess: return "success";
    case Verdict::kNotFound: return "not-found";
    case Verdict::kError: return "error";
  }
  return "error";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::kPass:
    case Verdict::kSuccess: return 0;
    case Verdict::kViolation:
    case Verdict::kNotFound: return 1;
    case Verdict::kError: return 2;
  }
  return 2;
}

Report::Report(std::vector<std::string> args) : args_(std::move(args)) {}

std::string Report::read_input(const std::filesystem::path& path) {
  std::string text = io::read_file(path);
  inputs_.push_back({{"path", path.string()}, {"fnv1a64", io::fnv1a64_hex(text)}});
  return text;
}

json Report::render(double elapsed_ms) const {
  json out = body_;
  out["schema"] = kReportSchema;
  out["command"] = args_;
  out["subcommand"] = subcommand_;
  out["verdict"] = to_string(verdict_);
  out["exit_code"] = exit_code(verdict_);
  out["inputs"] = inputs_;
  out["seed"] = seed_ ? json(*seed_) : json(nullptr);
  out["timing"] = {{"elapsed_ms", elapsed_ms}};
  return out;
}

namespace {

json parse_input_json(Report& report, const std::filesystem::path& path) {
  return io::parse_json(report.read_input(path), path.string());
}

}  // namespace

io::SpaceDocument load_space(Report& report, const std::filesystem::path& path,
                             double tolerance) {
  if (path.extension() == ".csv") {
    const std::string text = report.read_input(path);
    return {io::space_from_csv(text, tolerance > 0.0 ? tolerance : kDefaultTolerance),
            json::object()};
  }
  const json doc = parse_input_json(report, path);
  if (io::looks_like_graph(doc)) {
    io::SpaceDocument out{
        graph_metric(io::graph_from_json(doc), tolerance > 0.0 ? tolerance : kDefaultTolerance),
        json::object()};
    if (doc.contains("metadata") && doc["metadata"].is_object()) out.metadata = doc["metadata"];
    return out;
  }
  return io::space_from_json(doc, tolerance);
}

GraphDocument load_graph(Report& report, const std::filesystem::path& path) {
  const json doc = parse_input_json(report, path);
  if (!io::looks_like_graph(doc)) {
    throw MalformedInput("'" + path.string() + "' is not a graph document (needs \"edges\")");
  }
  GraphDocument out{io::graph_from_json(doc), json::object()};
  if (doc.contains("metadata") && doc["metadata"].is_object()) out.metadata = doc["metadata"];
  return out;
}

DiscreteCurve load_curve(Report& report, const std::filesystem::path& path, double tolerance) {
  json doc = parse_input_json(report, path);
  if (doc.is_object() && doc.contains("space") && doc["space"].is_string()) {
    std::filesystem::path sp = doc["space"].get<std::string>();
    if (sp.is_relative()) sp = path.parent_path() / sp;
    const io::SpaceDocument space = load_space(report, sp, tolerance);
    doc["space"] = io::space_to_json(space.space, space.metadata);
  }
  return io::curve_from_json(doc, path.parent_path(), tolerance);
}

PointIndex resolve_point(const io::SpaceDocument& doc, const std::string& expr) {
  const auto pts = io::resolve_subset(doc, expr);
  if (pts.size() != 1) throw MalformedInput("'" + expr + "' must name exactly one point");
  return pts.front();
}

json triple_json(const FiniteMetricSpace& space, const TripleCheck& t) {
  return {{"x", t.x},
          {"z", t.z},
          {"y", t.y},
          {"labels", {space.label(t.x), space.label(t.z), space.label(t.y)}},
          {"lhs", t.lhs},
          {"rhs", t.rhs}};
}

json points_json(const FiniteMetricSpace& space, const std::vector<PointIndex>& points) {
  json labels = json::array();
  for (const PointIndex p : points) labels.push_back(space.label(p));
  return {{"indices", points}, {"labels", std::move(labels)}};
}

json bigint_json(const BigInt& v) {
  if (v <= BigInt(9007199254740992LL)) return json(v.convert_to<long long>());
  return json(v.str());
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      while (used < cell.size() && cell[used] == ' ') ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw MalformedInput("cannot parse number '" + cell + "'");
    }
  }
  if (out.empty()) throw MalformedInput("empty number list");
  return out;
}

std::vector<std::vector<double>> parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) out.push_back(parse_vector(row));
  if (out.empty()) throw MalformedInput("empty matrix");
  return out;
}

}  // namespace metrik::cli
