#pragma once

#include <optional>

#include "bbmb/scenario.hpp"

namespace bbmb::tools {

/// Runs the operator and trajectory invariant checks, printing one line per
/// check. Returns the number of failed checks.
int run_invariant_checks(const std::optional<ScenarioConfig>& scenario);

}  // namespace bbmb::tools
