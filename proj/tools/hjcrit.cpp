// hjcrit: run <config> | verify [--fast] | plot <csv> --cols a,b [--log]

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "hjcrit/acceptance.hpp"
#include "hjcrit/config.hpp"
#include "hjcrit/csv.hpp"
#include "hjcrit/experiments.hpp"
#include "hjcrit/gaussian.hpp"
#include "hjcrit/plot.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for the viscous Hamilton-Jacobi equation at the critical exponent"};
  app.set_version_flag("--version", std::string(hjcrit::version()));
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);

  bool fast = false;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--fast", fast, "only the sub-second criteria 1-4");

  std::string csv_path, svg_path;
  std::vector<std::string> columns;
  bool log_axis = false;
  int dim = 1;
  auto* plot = app.add_subcommand("plot", "render CSV columns against tau as SVG");
  plot->add_option("csv", csv_path, "CSV written by run")->required();
  plot->add_option("--cols", columns, "comma-separated column names")->required()->delimiter(',');
  plot->add_flag("--log", log_axis, "logarithmic y axis");
  plot->add_option("--dim", dim, "dimension for the M* reference line")->check(CLI::Range(1, 2));
  plot->add_option("-o,--out", svg_path, "output path (default: CSV path with .svg)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const hjcrit::ExperimentConfig cfg = hjcrit::parse_config_file(config_path);
      return hjcrit::run_experiment(cfg, std::cout, std::cerr);
    }
    if (*verify) {
      hjcrit::AcceptanceOptions options;
      options.fast = fast;
      const auto report = hjcrit::run_acceptance(options);
      for (const auto& r : report.results) std::cout << hjcrit::format_line(r) << "\n";
      const bool ok = report.all_passed();
      std::cout << (ok ? "verify: all criteria passed" : "verify: FAILED") << "\n";
      return ok ? 0 : 1;
    }
    if (*plot) {
      if (svg_path.empty()) svg_path = std::filesystem::path(csv_path).replace_extension(".svg").string();
      hjcrit::PlotOptions options;
      options.columns = columns;
      options.log_y = log_axis;
      for (const auto& c : columns) {
        if (c == "rescaled_mass") options.reference = hjcrit::m_star(dim);
      }
      hjcrit::write_plot(svg_path, hjcrit::read_csv(csv_path), options);
      std::cout << "wrote " << svg_path << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
