#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "bbmb/analysis.hpp"
#include "bbmb/stepper.hpp"

namespace bbmb::csv {

/// 17 significant digits, enough to round-trip a double.
[[nodiscard]] std::string format_double(double v);

/// Columns: t,l2,linf,tnorm,e1,lyapunov,v0,v1,newton_iters
[[nodiscard]] std::string simulation_table(const SimulationResult& result);

/// Columns: h,e_l2,e_linf,e_tnorm,e_v0,e_v1,order_l2,order_linf,order_tnorm,order_v0,order_v1
/// Order cells are empty where no previous row exists.
[[nodiscard]] std::string convergence_table(std::span<const ConvergenceRow> rows);

/// Columns: mu,sup_deviation,trajectory_file
[[nodiscard]] std::string sweep_summary_table(const MuSweepResult& sweep,
                                              std::span<const std::string> files);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace bbmb::csv
