#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "elasticflow/grid.hpp"

namespace elasticflow {

/// %.15g, the precision of every number the tools write.
std::string format_number(double v);

/// Reads a `x,value` CSV with one row per node of a uniform grid.  The x
/// column must match i/n to 1e-9.  If expected_n is given, a different node
/// count is a ShapeError.  Format problems are reported with the line number.
GridFunction read_profile(const std::filesystem::path& path,
                          std::optional<std::size_t> expected_n = std::nullopt);

void write_profile(const std::filesystem::path& path, const GridFunction& u);

}  // namespace elasticflow
