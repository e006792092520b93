#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cli/commands.hpp"

namespace cli = elasticflow::cli;

int main(int argc, char** argv) {
  CLI::App app{"Elastic obstacle flow: simulation, critical points, rearrangements, validation"};
  app.require_subcommand(1);

  std::string config_path, out_dir, resume_dir;
  std::uint64_t seed = 0;
  bool allow_invalid = false;
  auto* simulate = app.add_subcommand("simulate", "Run the minimizing-movement flow from a JSON config");
  simulate->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out_dir, "Output directory")->required();
  auto* sim_seed = simulate->add_option("--seed", seed, "Seed recorded in the summary (overrides config)");
  simulate->add_flag("--allow-invalid-obstacle", allow_invalid, "Accept obstacles violating Assumption 1");
  simulate->add_option("--resume", resume_dir, "Continue from the checkpoint in this directory")
      ->check(CLI::ExistingDirectory);
  simulate->footer(cli::config_reference());

  double height = 0.0;
  std::size_t n = 400;
  auto* critical = app.add_subcommand("critical", "Symmetric critical point over a cone");
  critical->add_option("--height", height, "Cone height h > 0")->required();
  critical->add_option("--n", n, "Grid cells (even)")->capture_default_str();
  critical->add_option("--out", out_dir, "Output directory")->required();

  std::string input, output;
  auto* rearrange = app.add_subcommand("rearrange", "Rearrangements and comparison solution of a profile");
  rearrange->add_option("--input", input, "CSV x,value")->required()->check(CLI::ExistingFile);
  rearrange->add_option("--out", output, "CSV x,f,f_star,f_sym,v")->required();

  auto* specialfn = app.add_subcommand("specialfn", "Special functions");
  specialfn->require_subcommand(1);
  std::string fn;
  std::vector<double> args;
  auto* eval = specialfn->add_subcommand("eval", "Evaluate at each argument, one value per line");
  eval->add_option("--fn", fn, "g | ginv | c0 | h | hinv | uc (uc takes c then x values)")
      ->required()
      ->check(CLI::IsMember({"g", "ginv", "c0", "h", "hinv", "uc"}));
  eval->add_option("--args", args, "Arguments")->allow_extra_args();

  bool quick = false;
  bool serial = false;
  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");
  validate->add_flag("--quick", quick, "Smaller sample counts");
  validate->add_option("--out", out_dir, "Output directory")->required();
  auto* val_seed = validate->add_option("--seed", seed, "Seed of the property samplers");
  validate->add_flag("--serial", serial, "Run the criteria one after another");

  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Run several configurations concurrently");
  sweep->add_option("--config", config_path, "Sweep file {base, cases}")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Output directory, one subdirectory per case")->required();
  sweep->add_option("--jobs", jobs, "Concurrent cases")->capture_default_str();
  auto* sweep_seed = sweep->add_option("--seed", seed, "Seed recorded in each summary");
  sweep->add_flag("--allow-invalid-obstacle", allow_invalid, "Accept obstacles violating Assumption 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kSuccess : cli::kUsageError;
  }

  const auto opt_seed = [&](CLI::Option* o) {
    return o->count() ? std::optional<std::uint64_t>(seed) : std::nullopt;
  };

  return cli::guarded(
      [&]() -> int {
        if (*simulate) {
          const cli::RunConfig cfg = cli::load_config(config_path, allow_invalid);
          cli::SimulateOptions opt;
          opt.seed = opt_seed(sim_seed);
          if (!resume_dir.empty()) opt.resume = resume_dir;
          opt.log = &std::cout;
          return cli::cmd_simulate(cfg, out_dir, opt).exit_code;
        }
        if (*critical) return cli::cmd_critical(height, n, out_dir, std::cout);
        if (*rearrange) return cli::cmd_rearrange(input, output, std::cout);
        if (*specialfn) return cli::cmd_specialfn(fn, args, std::cout);
        if (*validate) {
          cli::ValidateOptions opt;
          opt.quick = quick;
          opt.seed = opt_seed(val_seed);
          opt.parallel = !serial && std::thread::hardware_concurrency() > 1;
          return cli::cmd_validate(opt, out_dir, std::cout);
        }
        return cli::cmd_sweep(config_path, out_dir, jobs, allow_invalid, opt_seed(sweep_seed), std::cout);
      },
      std::cerr);
}
