#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cqed/runner.hpp"

namespace cqed {

struct AxisRange {
  std::vector<double> values;  // explicit values win over the range
  double min = 0.0, max = 0.0;
  int points = 1;
  std::string scale = "linear";  // "linear" or "log"

  std::vector<double> resolve() const;
};

struct GaugeBasis {
  Rung rung;
  std::vector<Rung> ladder;
};

struct RunConfig {
  Problem problem;
  std::string model_type;
  Gauge gauge = Gauge::RAD;
  std::map<Gauge, GaugeBasis> bases;
  int n_matter_states = 60;

  double gamma_over_omega = 0.0;  // single-coupling commands
  AxisRange coupling;
  AxisRange k;
  AxisRange k_beta;
  double k_point = 0.0;  // spectrum command for k-resolved gauges
  int n_eigs = 10;
  double tolerance = 1e-6;
  bool parallel = true;

  bool photon_number = false;

  std::string output_directory;
  bool eigenvectors = false;
  bool wavefunctions = false;

  const GaugeBasis& basis_for(Gauge g) const;
};

// Throws Error(Config) naming the offending key path.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);
// Fully materialized config; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& c);

}  // namespace cqed
