#include "bbmb/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace bbmb {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || !std::isfinite(d)) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return d;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const long long n = to_integer(key, v);
  if (n < 1) throw ConfigError("config: '" + key + "' must be a positive integer");
  return static_cast<std::size_t>(n);
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(std::istream& in, const std::filesystem::path& base_dir) {
  ScenarioConfig cfg;
  std::map<std::string, std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!seen.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }

    if (key == "mode") {
      try {
        cfg.params.mode = parse_boundary_mode(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    } else if (key == "mu") {
      cfg.params.mu = to_double(key, value);
    } else if (key == "nu") {
      cfg.params.nu = to_double(key, value);
    } else if (key == "w_d") {
      cfg.params.w_d = to_double(key, value);
    } else if (key == "c0") {
      cfg.params.c0 = to_double(key, value);
    } else if (key == "c1") {
      cfg.params.c1 = to_double(key, value);
    } else if (key == "n_cells") {
      cfg.n_cells = to_count(key, value);
    } else if (key == "dt") {
      cfg.stepper.dt = to_double(key, value);
    } else if (key == "t_end") {
      cfg.stepper.t_end = to_double(key, value);
    } else if (key == "record_every") {
      cfg.stepper.record_every = to_count(key, value);
    } else if (key == "newton_tol") {
      cfg.stepper.newton_tol = to_double(key, value);
    } else if (key == "newton_max_iters") {
      cfg.stepper.newton_max_iters = static_cast<int>(to_count(key, value));
    } else if (key == "out_path") {
      cfg.out_path = value;
    } else if (key == "initial") {
      if (value == "cubic") {
        cfg.initial = InitialKind::cubic;
      } else if (value == "sine") {
        cfg.initial = InitialKind::sine;
      } else if (value == "zero") {
        cfg.initial = InitialKind::zero;
      } else if (value.starts_with("nodal:")) {
        cfg.initial = InitialKind::nodal_file;
        const std::filesystem::path p = trim(value.substr(6));
        cfg.nodal_path = (base_dir.empty() || p.is_absolute()) ? p : base_dir / p;
      } else {
        throw ConfigError("config: unknown initial profile '" + value + "'");
      }
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse(in, path.parent_path());
}

void ScenarioConfig::validate() const {
  try {
    params.validate();
    stepper.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  // The shifted state must vanish at the declared target.
  if (initial == InitialKind::cubic && params.w_d != 3.0) {
    throw ConfigError("config: initial = cubic is defined relative to w_d = 3");
  }
  if (initial == InitialKind::sine && params.w_d != 5.0) {
    throw ConfigError("config: initial = sine is defined relative to w_d = 5");
  }
  if (initial == InitialKind::nodal_file && nodal_path.empty()) {
    throw ConfigError("config: nodal initial data needs a file path");
  }
}

InitialProfile example1_profile() {
  return {[](double x) { return 20.0 * std::pow(0.5 - x, 3) - 3.0; },
          [](double x) { return -60.0 * (0.5 - x) * (0.5 - x); }};
}

InitialProfile example2_profile() {
  using std::numbers::pi;
  return {[](double x) { return 15.0 * std::sin(pi * x) - 5.0; },
          [](double x) { return 15.0 * pi * std::cos(pi * x); }};
}

NodalField initial_field(const ScenarioConfig& cfg, std::shared_ptr<const Mesh> mesh) {
  NodalField w(mesh);
  switch (cfg.initial) {
    case InitialKind::cubic: {
      const auto prof = example1_profile();
      w = auxiliary_projection(prof.f, prof.df, mesh, 1.0);
      break;
    }
    case InitialKind::sine: {
      const auto prof = example2_profile();
      w = auxiliary_projection(prof.f, prof.df, mesh, 1.0);
      break;
    }
    case InitialKind::zero:
      break;
    case InitialKind::nodal_file: {
      std::ifstream in(cfg.nodal_path);
      if (!in) throw ConfigError("cannot open nodal file " + cfg.nodal_path.string());
      std::vector<double> values;
      double v = 0.0;
      while (in >> v) values.push_back(v);
      if (!in.eof()) throw ConfigError("nodal file contains a non-numeric entry");
      if (values.size() != mesh->num_nodes()) {
        throw ConfigError("nodal file has " + std::to_string(values.size()) + " values, mesh has " +
                          std::to_string(mesh->num_nodes()) + " nodes");
      }
      w = NodalField(mesh, std::move(values));
      break;
    }
  }
  if (cfg.params.mode == BoundaryMode::dirichlet_left_control_right) w[0] = 0.0;
  return w;
}

InitialProjector make_projector(const ScenarioConfig& cfg) {
  return [cfg](std::shared_ptr<const Mesh> mesh) { return initial_field(cfg, std::move(mesh)); };
}

}  // namespace bbmb
