#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcurv/error.hpp"
#include "qcurv/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prescribed Q-curvature on round spheres: spectra, bubbles, thresholds, solver"};
  app.require_subcommand(1);

  int n = 0, k = 0, lmax = 0;
  auto* spectrum = app.add_subcommand("spectrum", "GJMS eigenvalues and coercivity");
  spectrum->add_option("--n", n, "sphere dimension")->required();
  spectrum->add_option("--k", k, "half the operator order")->required();
  spectrum->add_option("--lmax", lmax, "largest degree")->required();

  std::string config;
  std::string out_dir;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config, "scenario JSON")->required();
  };
  auto* bubble = app.add_subcommand("bubble", "bubble identities and interaction constants");
  add_config(bubble);
  auto* solve = app.add_subcommand("solve", "subcritical continuation and verdict");
  add_config(solve);
  solve->add_option("--out", out_dir, "directory for report, table and curves");
  std::string golden;
  solve->add_option("--golden", golden, "write the report without timing to this file");
  auto* threshold = app.add_subcommand("threshold", "concentration thresholds and test energies");
  add_config(threshold);
  auto* obstruction = app.add_subcommand("obstruction", "obstruction functional on trial fields");
  add_config(obstruction);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  using namespace qcurv;
  try {
    if (spectrum->parsed()) {
      if (lmax < 0) throw ConfigError("--lmax must be nonnegative");
      std::cout << scenario::spectrum_report(n, k, lmax).dump(2) << "\n";
      return 0;
    }
    const auto cfg = scenario::ScenarioConfig::load(config);
    if (bubble->parsed()) {
      std::cout << scenario::bubble_report(cfg).dump(2) << "\n";
    } else if (threshold->parsed()) {
      std::cout << scenario::threshold_report(cfg).dump(2) << "\n";
    } else if (obstruction->parsed()) {
      std::cout << scenario::obstruction_report(cfg).dump(2) << "\n";
    } else {
      const auto report = scenario::run_scenario(cfg);
      if (!golden.empty()) {
        std::ofstream out(golden, std::ios::binary | std::ios::trunc);
        out << scenario::without_timing(report.to_json()).dump(2) << "\n";
        if (!out) throw Error("failed writing '" + golden + "'");
      }
      if (out_dir.empty()) {
        std::cout << report.to_json().dump(2) << "\n";
      } else {
        for (const auto& p : scenario::emit_reports(report, out_dir)) std::cout << p.string() << "\n";
        std::cout << "verdict: " << solver::to_string(report.verdict()) << "\n";
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
