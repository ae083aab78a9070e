// Command-line front end: simulate, convergence, sweep-mu, check.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bbmb/csv.hpp"
#include "bbmb/scenario.hpp"
#include "check.hpp"

namespace fs = std::filesystem;
using namespace bbmb;

namespace {

int cmd_simulate(const ScenarioConfig& cfg, const std::optional<fs::path>& out) {
  auto mesh = std::make_shared<const Mesh>(uniform_mesh(cfg.n_cells));
  const auto result = run_simulation(initial_field(cfg, mesh), cfg.params, cfg.stepper);
  const fs::path path = out.value_or(cfg.out_path);
  csv::write_atomic(path, csv::simulation_table(result));
  fmt::print("wrote {} ({} samples, max Newton iterations {})\n", path.string(), result.times.size(),
             result.newton.max_iterations);
  return 0;
}

int cmd_convergence(const ScenarioConfig& cfg, const std::vector<std::size_t>& meshes,
                    std::size_t ref_factor, double t_eval, const std::optional<fs::path>& out) {
  const auto rows = convergence_study(cfg.params, cfg.stepper, meshes, ref_factor, t_eval,
                                      make_projector(cfg));
  const fs::path path = out.value_or(cfg.out_path);
  csv::write_atomic(path, csv::convergence_table(rows));
  fmt::print("wrote {} ({} meshes, reference {} cells)\n", path.string(), rows.size(),
             meshes.back() * ref_factor);
  return 0;
}

int cmd_sweep_mu(const ScenarioConfig& cfg, const std::vector<double>& mus, const fs::path& out_dir) {
  const auto sweep = mu_sweep(cfg.params, cfg.stepper, mus, cfg.n_cells, make_projector(cfg));
  std::vector<std::string> files;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const std::string name = fmt::format("trajectory_{:02d}.csv", i);
    csv::write_atomic(out_dir / name, csv::simulation_table(sweep.runs[i]));
    files.push_back(name);
  }
  csv::write_atomic(out_dir / "summary.csv", csv::sweep_summary_table(sweep, files));
  for (std::size_t i = 0; i < mus.size(); ++i) {
    fmt::print("mu = {:<8g} sup deviation from mu = 0: {:.6e}\n", mus[i], sweep.deviations[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary feedback stabilization of the BBM-Burgers equation (P1 FEM, backward Euler)"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_path;

  auto* sim = app.add_subcommand("simulate", "Run one scenario and write its time series CSV");
  sim->add_option("config", config_path, "Scenario file (key = value)")->required()->check(CLI::ExistingFile);
  sim->add_option("-o,--out", out_path, "Output CSV (default: out_path from the config)");

  std::vector<std::size_t> meshes{10, 20, 40, 80};
  std::size_t ref_factor = 8;
  double t_eval = 1.0;
  auto* conv = app.add_subcommand("convergence", "Mesh convergence study against a refined reference");
  conv->add_option("config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  conv->add_option("--meshes", meshes, "Cell counts, each dividing the next")->delimiter(',');
  conv->add_option("--ref-factor", ref_factor, "Reference mesh = finest mesh refined by this factor")
      ->check(CLI::PositiveNumber);
  conv->add_option("--t-eval", t_eval, "Comparison time")->check(CLI::PositiveNumber);
  conv->add_option("-o,--out", out_path, "Output CSV (default: out_path from the config)");

  std::vector<double> mus{0.5, 0.1, 0.01, 0.001, 0.0};
  std::string out_dir = "mu_sweep";
  auto* sweep = app.add_subcommand("sweep-mu", "Compare L2 trajectories against the mu = 0 limit");
  sweep->add_option("config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--mus", mus, "Dispersion values; must include 0")->delimiter(',');
  sweep->add_option("--out-dir", out_dir, "Directory for trajectory files and summary.csv");

  auto* check = app.add_subcommand("check", "Run the operator and trajectory invariant suite");
  check->add_option("config", config_path, "Optional scenario file for the trajectory checks")
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  std::optional<fs::path> out;
  if (out_path) out = fs::path(*out_path);

  try {
    if (check->parsed()) {
      std::optional<ScenarioConfig> sc;
      if (!config_path.empty()) sc = ScenarioConfig::from_file(config_path);
      return tools::run_invariant_checks(sc) == 0 ? 0 : 1;
    }
    const ScenarioConfig cfg = ScenarioConfig::from_file(config_path);
    if (sim->parsed()) return cmd_simulate(cfg, out);
    if (conv->parsed()) return cmd_convergence(cfg, meshes, ref_factor, t_eval, out);
    if (sweep->parsed()) return cmd_sweep_mu(cfg, mus, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NewtonDivergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
