#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "metrik/curves.hpp"
#include "metrik/graph.hpp"
#include "metrik/metric_space.hpp"

namespace metrik::io {

using nlohmann::json;

/// A metric space plus the free-form metadata block that generators attach
/// (construction parameters, named point lists such as "tips" or "X").
struct SpaceDocument {
  FiniteMetricSpace space;
  json metadata = json::object();
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

/// Parses JSON text; syntax errors become MalformedInput.
json parse_json(std::string_view text, std::string_view what = "input");

/// {"labels": [...], "dist": [[...]], "tolerance": 1e-9, "metadata": {...}}.
/// Distance entries may be numbers or decimal strings. `tolerance_override`
/// replaces the stored tolerance when positive.
SpaceDocument space_from_json(const json& doc, double tolerance_override = -1.0);
json space_to_json(const FiniteMetricSpace& space, const json& metadata = json::object());

/// Square matrix with a header row of labels; entries printed with 17
/// significant digits.
FiniteMetricSpace space_from_csv(std::string_view text, double tolerance = kDefaultTolerance);
std::string space_to_csv(const FiniteMetricSpace& space);

/// Dispatches on the extension: ".csv" reads CSV, anything else JSON.
SpaceDocument load_space(const std::filesystem::path& path, double tolerance_override = -1.0);

/// {"vertices": [...], "edges": [[i, j, length], ...]}. "vertices" is either
/// a list of labels or a vertex count.
WeightedGraph graph_from_json(const json& doc);
json graph_to_json(const WeightedGraph& graph);
bool looks_like_graph(const json& doc);

/// {"space": "<path>" | {space json}, "order": [...]},
/// {"coords": [[...]], "norm": "l2"}, or
/// {"line": {"params": [...], "scale": s, "exponent": e}}.
/// "order" entries are indices or labels. Relative space paths resolve
/// against `base_dir`.
DiscreteCurve curve_from_json(const json& doc, const std::filesystem::path& base_dir = {},
                              double tolerance_override = -1.0);
DiscreteCurve load_curve(const std::filesystem::path& path, double tolerance_override = -1.0);

/// Resolves a subset expression against a space document: a metadata list
/// name such as "tips", or comma-separated indices or labels.
std::vector<PointIndex> resolve_subset(const SpaceDocument& doc, std::string_view expr);

/// 64-bit FNV-1a of raw bytes, rendered as 16 hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace metrik::io
