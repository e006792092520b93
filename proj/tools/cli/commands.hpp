#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace elasticflow::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2, kNonconvergence = 3 };

/// Runs fn and maps escaping exceptions to exit codes, reporting them on err.
int guarded(const std::function<int()>& fn, std::ostream& err);

struct SimulateOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> resume;
  std::ostream* log = nullptr;
};

struct SimulateOutcome {
  int exit_code = kSuccess;
  double final_energy = 0.0;
  std::optional<std::size_t> touched_at_step;
  std::size_t steps = 0;
};

/// Writes the trajectory CSV, snapshots, summary JSON, final_iterate.csv and
/// the optional plot into out_dir.  Exit code 1 if an enabled check fails.
SimulateOutcome cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir,
                             const SimulateOptions& opt);

/// critical_profile.csv (x,u,uprime,psi), critical_residuals.json, critical.svg.
int cmd_critical(double height, std::size_t n, const std::filesystem::path& out_dir, std::ostream& log);

/// x,f,f_star,f_sym,v for the profile in input.
int cmd_rearrange(const std::filesystem::path& input, const std::filesystem::path& output, std::ostream& log);

/// One value per line at 15 significant digits.
int cmd_specialfn(const std::string& fn, const std::vector<double>& args, std::ostream& out);

struct ValidateOptions {
  bool quick = false;
  std::optional<std::uint64_t> seed;
  bool parallel = true;
};

/// Runs the acceptance suite and writes validation_report.json.
int cmd_validate(const ValidateOptions& opt, const std::filesystem::path& out_dir, std::ostream& log);

/// Sweep file: {"base": {...config...}, "cases": [{"name": "...", ...overrides}]}.
/// Each case's overrides are merged into base (JSON merge patch) and run into
/// out_dir/name; sweep_summary.csv collects one row per case.
int cmd_sweep(const std::filesystem::path& sweep_file, const std::filesystem::path& out_dir, unsigned jobs,
              bool allow_invalid, std::optional<std::uint64_t> seed, std::ostream& log);

}  // namespace elasticflow::cli
