#pragma once

#include <functional>
#include <string>

#include <CLI11.hpp>

#include "report.hpp"

namespace metrik::cli {

struct Registry {
  double tolerance = -1.0;  // <= 0 keeps the tolerance stored with the input
  std::string output;
  std::string name;
  std::function<void(Report&)> action;
};

void add_common(CLI::App* sub, Registry& reg);
void add_tolerance(CLI::App* sub, Registry& reg);
void on_run(CLI::App* sub, Registry& reg, std::string name, std::function<void(Report&)> fn);

void register_metric_commands(CLI::App& app, Registry& reg);
void register_atb_commands(CLI::App& app, Registry& reg);
void register_curve_commands(CLI::App& app, Registry& reg);
void register_gen_commands(CLI::App& app, Registry& reg);

}  // namespace metrik::cli
