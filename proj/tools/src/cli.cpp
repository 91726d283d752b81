#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "metrik/error.hpp"

namespace metrik::cli {

void add_tolerance(CLI::App* sub, Registry& reg) {
  sub->add_option("--tolerance", reg.tolerance,
                  "Comparison tolerance (default: the input's own, else 1e-9)");
}

void add_common(CLI::App* sub, Registry& reg) {
  sub->add_option("--output,-o", reg.output, "Write the report to this path");
}

void on_run(CLI::App* sub, Registry& reg, std::string name, std::function<void(Report&)> fn) {
  add_common(sub, reg);
  sub->callback([&reg, name = std::move(name), fn = std::move(fn)] {
    reg.name = name;
    reg.action = fn;
  });
}

namespace {

void emit(const json& doc, const std::string& output, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (output.empty()) {
    out << text;
  } else {
    io::write_file(output, text);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"metrik: finite metric space analysis (SRA, ATB, self-contracted curves)",
               "metrik"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Registry reg;
  register_metric_commands(app, reg);
  register_atb_commands(app, reg);
  register_curve_commands(app, reg);
  register_gen_commands(app, reg);

  Report report(args);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };
  auto fail = [&](const std::string& message) {
    err << "metrik: error: " << message << "\n";
    report.set_verdict(Verdict::kError);
    report.body()["error"] = message;
    try {
      emit(report.render(elapsed_ms()), reg.output, out);
    } catch (const std::exception&) {
      emit(report.render(elapsed_ms()), "", out);
    }
    return 2;
  };

  std::vector<const char*> argv{"metrik"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << app.help() << "\n";
    return fail(e.what());
  }

  report.set_subcommand(reg.name);
  try {
    reg.action(report);
  } catch (const Error& e) {
    return fail(e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(std::string("malformed JSON input: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail("out of memory");
  }
  emit(report.render(elapsed_ms()), reg.output, out);
  return exit_code(report.verdict());
}

}  // namespace metrik::cli
