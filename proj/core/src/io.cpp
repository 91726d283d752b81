#include "metrik/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "metrik/error.hpp"

namespace metrik::io {
namespace {

double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw MalformedInput("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

double json_number(const json& v, std::string_view what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_number(v.get_ref<const std::string&>(), what);
  throw MalformedInput(std::string(what) + " must be a number");
}

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<PointIndex> index_list(const json& v, std::size_t n, std::string_view what) {
  if (!v.is_array()) throw MalformedInput(std::string(what) + " must be an array of indices");
  std::vector<PointIndex> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 0 ||
        static_cast<std::size_t>(x.get<long long>()) >= n) {
      throw MalformedInput(std::string(what) + " contains an invalid index");
    }
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MalformedInput("cannot write '" + path.string() + "'");
  out << text;
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string(what) + " is not valid JSON: " + e.what());
  }
}

SpaceDocument space_from_json(const json& doc, double tolerance_override) {
  if (!doc.is_object() || !doc.contains("dist")) {
    throw MalformedInput("space JSON needs a \"dist\" matrix");
  }
  const json& dist = doc.at("dist");
  if (!dist.is_array()) throw MalformedInput("\"dist\" must be an array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(dist.size());
  for (const auto& row : dist) {
    if (!row.is_array()) throw MalformedInput("\"dist\" rows must be arrays");
    auto& r = rows.emplace_back();
    r.reserve(row.size());
    for (const auto& v : row) r.push_back(json_number(v, "distance entry"));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& ls = doc.at("labels");
    if (!ls.is_array()) throw MalformedInput("\"labels\" must be an array");
    for (const auto& l : ls) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    if (labels.size() != rows.size()) {
      throw MalformedInput("label count does not match the distance matrix");
    }
  }
  double tol = kDefaultTolerance;
  if (doc.contains("tolerance")) tol = json_number(doc.at("tolerance"), "tolerance");
  if (tolerance_override > 0.0) tol = tolerance_override;
  if (!(tol >= 0.0)) throw ParameterError("tolerance must be nonnegative");

  SpaceDocument out{FiniteMetricSpace(std::move(labels), rows, tol), json::object()};
  if (doc.contains("metadata")) {
    if (!doc.at("metadata").is_object()) throw MalformedInput("\"metadata\" must be an object");
    out.metadata = doc.at("metadata");
  }
  return out;
}

json space_to_json(const FiniteMetricSpace& space, const json& metadata) {
  json dist = json::array();
  for (PointIndex i = 0; i < space.size(); ++i) {
    const auto r = space.row(i);
    dist.push_back(std::vector<double>(r.begin(), r.end()));
  }
  json doc = {{"labels", space.labels()}, {"dist", std::move(dist)},
              {"tolerance", space.tolerance()}};
  if (!metadata.empty()) doc["metadata"] = metadata;
  return doc;
}

FiniteMetricSpace space_from_csv(std::string_view text, double tolerance) {
  std::vector<std::string> lines;
  for (auto& l : split(text, '\n')) {
    if (!trim(l).empty()) lines.push_back(std::move(l));
  }
  if (lines.empty()) throw MalformedInput("CSV space is empty");
  std::vector<std::string> labels;
  for (auto& h : split(lines.front(), ',')) labels.push_back(trim(std::move(h)));
  // An empty leading header cell marks a labelled first column.
  const bool row_labels = !labels.empty() && labels.front().empty() && labels.size() == lines.size();
  if (row_labels) labels.erase(labels.begin());
  if (labels.size() != lines.size() - 1) {
    throw MalformedInput("CSV header has " + std::to_string(labels.size()) + " labels but " +
                         std::to_string(lines.size() - 1) + " rows");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto cells = split(lines[r], ',');
    if (row_labels && !cells.empty()) cells.erase(cells.begin());
    auto& row = rows.emplace_back();
    for (const auto& c : cells) row.push_back(parse_number(c, "CSV entry"));
  }
  return FiniteMetricSpace(std::move(labels), rows, tolerance);
}

std::string space_to_csv(const FiniteMetricSpace& space) {
  std::string out;
  for (PointIndex i = 0; i < space.size(); ++i) {
    if (i) out += ',';
    out += space.label(i);
  }
  out += '\n';
  for (PointIndex i = 0; i < space.size(); ++i) {
    for (PointIndex j = 0; j < space.size(); ++j) {
      if (j) out += ',';
      out += format17(space(i, j));
    }
    out += '\n';
  }
  return out;
}

SpaceDocument load_space(const std::filesystem::path& path, double tolerance_override) {
  const std::string text = read_file(path);
  if (path.extension() == ".csv") {
    const double tol = tolerance_override > 0.0 ? tolerance_override : kDefaultTolerance;
    return {space_from_csv(text, tol), json::object()};
  }
  const json doc = parse_json(text, path.string());
  if (looks_like_graph(doc)) {
    const WeightedGraph g = graph_from_json(doc);
    const double tol = tolerance_override > 0.0 ? tolerance_override : kDefaultTolerance;
    SpaceDocument out{graph_metric(g, tol), json::object()};
    if (doc.contains("metadata") && doc.at("metadata").is_object()) out.metadata = doc.at("metadata");
    return out;
  }
  return space_from_json(doc, tolerance_override);
}

bool looks_like_graph(const json& doc) {
  return doc.is_object() && doc.contains("edges") && !doc.contains("dist");
}

WeightedGraph graph_from_json(const json& doc) {
  if (!looks_like_graph(doc)) throw MalformedInput("graph JSON needs an \"edges\" list");
  std::vector<std::string> labels;
  std::size_t n = 0;
  if (doc.contains("vertices")) {
    const json& vs = doc.at("vertices");
    if (vs.is_number_integer()) {
      if (vs.get<long long>() < 0) throw MalformedInput("vertex count must be nonnegative");
      n = vs.get<std::size_t>();
    } else if (vs.is_array()) {
      for (const auto& v : vs) labels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      n = labels.size();
    } else {
      throw MalformedInput("\"vertices\" must be a count or a list of labels");
    }
  }
  const json& edges = doc.at("edges");
  if (!edges.is_array()) throw MalformedInput("\"edges\" must be an array");
  if (!doc.contains("vertices")) {
    for (const auto& e : edges) {
      if (e.is_array() && e.size() == 3 && e[0].is_number_integer() && e[1].is_number_integer()) {
        n = std::max({n, e[0].get<std::size_t>() + 1, e[1].get<std::size_t>() + 1});
      }
    }
  }
  WeightedGraph g(n, std::move(labels));
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw MalformedInput("each edge must be [i, j, length]");
    }
    const long long a = e[0].get<long long>();
    const long long b = e[1].get<long long>();
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
      throw MalformedInput("edge endpoint out of range");
    }
    g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b), json_number(e[2], "edge length"));
  }
  return g;
}

json graph_to_json(const WeightedGraph& graph) {
  json edges = json::array();
  for (const Edge& e : graph.edges()) edges.push_back(json::array({e.from, e.to, e.length}));
  return {{"vertices", graph.labels()}, {"edges", std::move(edges)}};
}

DiscreteCurve curve_from_json(const json& doc, const std::filesystem::path& base_dir,
                              double tolerance_override) {
  if (!doc.is_object()) throw MalformedInput("curve JSON must be an object");
  if (doc.contains("coords")) {
    std::vector<std::vector<double>> coords;
    for (const auto& p : doc.at("coords")) {
      if (!p.is_array()) throw MalformedInput("\"coords\" must be an array of points");
      auto& c = coords.emplace_back();
      for (const auto& x : p) c.push_back(json_number(x, "coordinate"));
    }
    const Norm norm = Norm::parse(doc.value("norm", std::string("l2")));
    return DiscreteCurve::in_normed_space(std::move(coords), norm);
  }
  if (doc.contains("line")) {
    const json& line = doc.at("line");
    std::vector<double> params;
    for (const auto& x : line.at("params")) params.push_back(json_number(x, "line parameter"));
    return DiscreteCurve::on_snowflaked_line(std::move(params),
                                             json_number(line.value("scale", json(1.0)), "scale"),
                                             json_number(line.value("exponent", json(1.0)), "exponent"));
  }
  if (!doc.contains("space")) {
    throw MalformedInput("curve JSON needs \"space\"+\"order\", \"coords\", or \"line\"");
  }
  const json& sp = doc.at("space");
  SpaceDocument space_doc;
  if (sp.is_string()) {
    std::filesystem::path p = sp.get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    space_doc = load_space(p, tolerance_override);
  } else if (looks_like_graph(sp)) {
    const double tol = tolerance_override > 0.0 ? tolerance_override : kDefaultTolerance;
    space_doc.space = graph_metric(graph_from_json(sp), tol);
  } else {
    space_doc = space_from_json(sp, tolerance_override);
  }
  const std::size_t n = space_doc.space.size();
  std::vector<PointIndex> order;
  if (doc.contains("order")) {
    const json& o = doc.at("order");
    if (o.is_string()) {
      order = resolve_subset(space_doc, o.get<std::string>());
    } else {
      if (!o.is_array()) throw MalformedInput("\"order\" must be a list or subset name");
      for (const auto& x : o) {
        if (x.is_string()) {
          const auto idx = space_doc.space.find(x.get<std::string>());
          if (!idx) throw MalformedInput("\"order\" names an unknown label");
          order.push_back(*idx);
        } else {
          order.push_back(index_list(json::array({x}), n, "\"order\"").front());
        }
      }
    }
  } else {
    for (PointIndex i = 0; i < n; ++i) order.push_back(i);
  }
  return DiscreteCurve::on_space(
      std::make_shared<const FiniteMetricSpace>(std::move(space_doc.space)), std::move(order));
}

DiscreteCurve load_curve(const std::filesystem::path& path, double tolerance_override) {
  const json doc = parse_json(read_file(path), path.string());
  return curve_from_json(doc, path.parent_path(), tolerance_override);
}

std::vector<PointIndex> resolve_subset(const SpaceDocument& doc, std::string_view expr) {
  const std::size_t n = doc.space.size();
  const std::string key(expr);
  if (key == "all") {
    std::vector<PointIndex> all(n);
    for (PointIndex i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  if (doc.metadata.contains("points") && doc.metadata.at("points").contains(key)) {
    return index_list(doc.metadata.at("points").at(key), n, key);
  }
  if (doc.metadata.contains(key) && doc.metadata.at(key).is_array()) {
    return index_list(doc.metadata.at(key), n, key);
  }
  std::vector<PointIndex> out;
  for (auto& tok : split(expr, ',')) {
    tok = trim(std::move(tok));
    if (tok.empty()) continue;
    if (const auto found = doc.space.find(tok)) {
      out.push_back(*found);
      continue;
    }
    std::size_t idx = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), idx);
    if (ec != std::errc{} || end != tok.data() + tok.size() || idx >= n) {
      throw MalformedInput("unknown point or point list '" + tok + "'");
    }
    out.push_back(idx);
  }
  if (out.empty()) throw MalformedInput("subset expression '" + key + "' selects no points");
  return out;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace metrik::io
