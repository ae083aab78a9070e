#pragma once

#include <filesystem>
#include <istream>
#include <memory>
#include <stdexcept>
#include <string>

#include "bbmb/analysis.hpp"
#include "bbmb/feedback.hpp"
#include "bbmb/stepper.hpp"

namespace bbmb {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class InitialKind {
  /// 20 (0.5 - x)^3 - 3, paired with w_d = 3.
  cubic,
  /// 15 sin(pi x) - 5, paired with w_d = 5.
  sine,
  zero,
  /// One value per node, whitespace separated, from a text file.
  nodal_file,
};

/// A complete run description, read from a flat `key = value` file.
struct ScenarioConfig {
  ModelParams params;
  StepperConfig stepper;
  std::size_t n_cells{60};
  InitialKind initial{InitialKind::cubic};
  std::filesystem::path nodal_path;
  std::filesystem::path out_path{"out.csv"};

  /// Throws ConfigError on unknown keys, malformed values or violated
  /// invariants. Relative paths are resolved against `base_dir`.
  [[nodiscard]] static ScenarioConfig parse(std::istream& in,
                                            const std::filesystem::path& base_dir = {});
  [[nodiscard]] static ScenarioConfig from_file(const std::filesystem::path& path);

  void validate() const;
};

/// Analytic profile and derivative for cubic/sine initial data.
struct InitialProfile {
  ScalarFunction f;
  ScalarFunction df;
};

[[nodiscard]] InitialProfile example1_profile();
[[nodiscard]] InitialProfile example2_profile();

/// W^0 on `mesh`: H^1 projection of analytic data, or the nodal file as is.
/// In Dirichlet-left mode the node at x = 0 is set to zero.
[[nodiscard]] NodalField initial_field(const ScenarioConfig& cfg, std::shared_ptr<const Mesh> mesh);
[[nodiscard]] InitialProjector make_projector(const ScenarioConfig& cfg);

}  // namespace bbmb
