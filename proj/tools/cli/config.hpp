#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "elasticflow/discretization.hpp"
#include "elasticflow/error.hpp"
#include "elasticflow/flow.hpp"

namespace elasticflow::cli {

/// Malformed or semantically invalid configuration; the message names the
/// offending field or the line of a parse error.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ObstacleSpec {
  enum class Type { Cone, Table, Constant } type = Type::Cone;
  double height = 0.0;
  std::optional<double> endpoint;  // cone only; defaults to -height
  std::filesystem::path path;
  double level = 0.0;
};

struct InitialSpec {
  enum class Type { Uc, Table, ScaledBump } type = Type::Uc;
  double c = 0.5;
  std::filesystem::path path;
  double scale = 0.01;
};

struct OutputSpec {
  std::string trajectory_csv = "trajectory.csv";
  std::vector<double> snapshots;
  std::string summary_json = "summary.json";
  std::optional<std::string> plot_svg;
};

struct CheckSpec {
  bool symmetry = false;
  bool dissipation = true;
  bool stanminimov = true;
  bool kkt = true;
  bool touch_window = false;
  bool navier = false;
};

struct RunConfig {
  std::size_t grid_n = 200;
  FlowConfig flow;
  ObstacleSpec obstacle;
  InitialSpec initial;
  OutputSpec outputs;
  CheckSpec checks;
  bool allow_invalid_obstacle = false;
  std::uint64_t seed = 0;
};

/// Strict schema: unknown keys are errors.  Relative table paths resolve
/// against base_dir.  allow_invalid forces allow_invalid_obstacle on.
RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                           bool allow_invalid = false);

nlohmann::json parse_json_file(const std::filesystem::path& path);

RunConfig load_config(const std::filesystem::path& path, bool allow_invalid = false);

Obstacle make_obstacle(const RunConfig& cfg);
GridFunction make_initial(const RunConfig& cfg, const Obstacle& psi);

/// Text for --help: every key with its default.
std::string config_reference();

}  // namespace elasticflow::cli
