#include "bbmb/csv.hpp"

#include <fmt/format.h>

#include <fstream>
#include <stdexcept>
#include <system_error>

namespace bbmb::csv {

std::string format_double(double v) {
  // Print negative zero as 0 so that zero columns read uniformly.
  return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v);
}

std::string simulation_table(const SimulationResult& r) {
  std::string out = "t,l2,linf,tnorm,e1,lyapunov,v0,v1,newton_iters\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    const auto& e = r.energy[i];
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", format_double(r.times[i]),
                       format_double(r.l2[i]), format_double(r.linf[i]), format_double(r.tnorm[i]),
                       format_double(e.e1), format_double(e.lyapunov), format_double(e.v0),
                       format_double(e.v1), r.newton_iters[i]);
  }
  return out;
}

std::string convergence_table(std::span<const ConvergenceRow> rows) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
  std::string out =
      "h,e_l2,e_linf,e_tnorm,e_v0,e_v1,order_l2,order_linf,order_tnorm,order_v0,order_v1\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", format_double(r.h),
                       format_double(r.e_l2), format_double(r.e_linf), format_double(r.e_tnorm),
                       format_double(r.e_v0), format_double(r.e_v1), opt(r.order_l2),
                       opt(r.order_linf), opt(r.order_tnorm), opt(r.order_v0), opt(r.order_v1));
  }
  return out;
}

std::string sweep_summary_table(const MuSweepResult& sweep, std::span<const std::string> files) {
  if (files.size() != sweep.mus.size()) throw std::invalid_argument("sweep_summary_table: size mismatch");
  std::string out = "mu,sup_deviation,trajectory_file\n";
  for (std::size_t i = 0; i < sweep.mus.size(); ++i) {
    out += fmt::format("{},{},{}\n", format_double(sweep.mus[i]), format_double(sweep.deviations[i]),
                       files[i]);
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace bbmb::csv
