#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vhed/phantom.hpp"
#include "vhed/spectral.hpp"

namespace vhed {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ReconstructionRoute { Fbp, Lambda, Both };

struct RunConfig {
  double grid_side_half = 2.0;
  int grid_exponent = 8;

  PhantomSpec phantom;
  std::string phantom_name;  // empty if the spec was given inline

  KGrid kgrid;
  int boundary_points = 64;

  CgoOptions solver;
  bool warm_start = true;

  cdouble averaging_weight{0.7071067811865476, 0.0};  // 1/sqrt(2)
  std::optional<cdouble> calibration;                 // nullopt: calibrate at run time

  ReconstructionRoute route = ReconstructionRoute::Both;

  std::string out_dir = "out";
  std::vector<std::string> formats{"vhed", "csv", "pgm"};
  std::string render = "real";
  std::optional<std::pair<double, double>> fixed_range;

  int workers = 1;
  bool verbose = false;
};

// Strict parse: unknown keys anywhere are rejected; every value is validated
// before any compute starts.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Canonical JSON snapshot of the configuration (written next to outputs).
std::string config_to_json(const RunConfig& c);

}  // namespace vhed
