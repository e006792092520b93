#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "elasticflow/discretization.hpp"
#include "elasticflow/flow.hpp"

namespace elasticflow::cli {

/// Opens path for writing or throws elasticflow::Error.
std::ofstream open_output(const std::filesystem::path& path);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Columns x,u,psi,gap.
void write_snapshot_csv(const std::filesystem::path& path, const GridFunction& u, const Obstacle& psi);

struct PlotSeries {
  std::string label;
  GridFunction values;
  std::string color = "#1f77b4";
  bool dashed = false;
};

/// Standalone SVG with one polyline per series on shared axes.  Identical
/// input gives identical bytes.
std::string plot_svg(const std::vector<PlotSeries>& series, const std::string& title);

void emit_plot(const std::vector<PlotSeries>& series, const std::filesystem::path& path,
               const std::string& title);

}  // namespace elasticflow::cli
