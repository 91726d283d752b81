#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "metrik/graph.hpp"
#include "metrik/io.hpp"
#include "metrik/metric_space.hpp"
#include "metrik/sra.hpp"

namespace metrik::cli {

using nlohmann::json;

enum class Verdict { kPass, kViolation, kSuccess, kNotFound, kError };

const char* to_string(Verdict v);
int exit_code(Verdict v);

class Report {
 public:
  explicit Report(std::vector<std::string> args);

  void set_subcommand(std::string name) { subcommand_ = std::move(name); }
  const std::string& subcommand() const { return subcommand_; }

  /// Command-specific fields, merged into the top level of the report.
  json& body() { return body_; }

  /// Reads a file and records its path and FNV-1a digest.
  std::string read_input(const std::filesystem::path& path);

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void set_verdict(Verdict v) { verdict_ = v; }
  Verdict verdict() const { return verdict_; }

  json render(double elapsed_ms) const;

 private:
  std::vector<std::string> args_;
  std::string subcommand_;
  json body_ = json::object();
  json inputs_ = json::array();
  std::optional<std::uint64_t> seed_;
  Verdict verdict_ = Verdict::kSuccess;
};

// Input helpers that record digests through the report.

io::SpaceDocument load_space(Report& report, const std::filesystem::path& path,
                             double tolerance);

struct GraphDocument {
  WeightedGraph graph;
  json metadata = json::object();
};
GraphDocument load_graph(Report& report, const std::filesystem::path& path);

DiscreteCurve load_curve(Report& report, const std::filesystem::path& path, double tolerance);

/// One point by label or index.
PointIndex resolve_point(const io::SpaceDocument& doc, const std::string& expr);

// JSON fragments.

json triple_json(const FiniteMetricSpace& space, const TripleCheck& t);
json points_json(const FiniteMetricSpace& space, const std::vector<PointIndex>& points);
json bigint_json(const BigInt& v);

/// "1,0;-1,0" -> {{1,0},{-1,0}}; "0.5,1" -> {0.5, 1}.
std::vector<std::vector<double>> parse_matrix(const std::string& text);
std::vector<double> parse_vector(const std::string& text);

}  // namespace metrik::cli
