#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "cli/outputs.hpp"
#include "elasticflow/critical.hpp"
#include "elasticflow/profile_io.hpp"
#include "elasticflow/rearrange.hpp"
#include "elasticflow/specialfn.hpp"
#include "validation/suite.hpp"

namespace elasticflow::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Numbers in JSON carry 15 significant digits like every other output.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

json check_entry(bool pass, double measured, double bound) {
  return {{"status", pass ? "pass" : "fail"}, {"measured", num(measured)}, {"bound", num(bound)}};
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(path.string() + ": write failed");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(dir.string() + ": cannot create output directory");
}

const char* kL0Formula = "L0 = y^2 / (2 infE (5/(1+y^2) - 3)), y = G^-1(sqrt(E0))";

}  // namespace

int guarded(const std::function<int()>& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const StepNonconvergence& e) {
    err << "nonconvergence: " << e.what() << '\n';
    return kNonconvergence;
  } catch (const ConvergenceError& e) {
    err << "nonconvergence: " << e.what() << '\n';
    return kNonconvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

SimulateOutcome cmd_simulate(const RunConfig& cfg, const fs::path& out_dir, const SimulateOptions& opt) {
  ensure_dir(out_dir);
  const Obstacle psi = make_obstacle(cfg);
  const UniformGrid& grid = psi.grid();

  GridFunction u0 = make_initial(cfg, psi);
  double t_start = 0.0;
  json resumed_from = nullptr;
  if (opt.resume) {
    const json prev = parse_json_file(*opt.resume / cfg.outputs.summary_json);
    if (!prev.contains("final_time") || !prev["final_time"].is_number())
      throw ConfigError((*opt.resume / cfg.outputs.summary_json).string() + ": no final_time");
    t_start = prev["final_time"].get<double>();
    u0 = read_profile(*opt.resume / "final_iterate.csv", cfg.grid_n);
    if (!(cfg.flow.t_end - t_start >= cfg.flow.tau))
      throw ConfigError("t_end: checkpoint is already at t = " + format_number(t_start));
    resumed_from = {{"directory", opt.resume->string()}, {"time", num(t_start)}};
  }

  Trajectory traj = [&] {
    try {
      return run_flow(u0, psi, cfg.flow, t_start);
    } catch (const StepNonconvergence& e) {
      write_profile(out_dir / "partial_iterate.csv", e.partial());
      throw;
    }
  }();

  const double e0 = traj.energies.front();
  std::vector<std::string> warnings = traj.warnings;

  // Reference critical point, available for cone obstacles.
  std::optional<CriticalPoint> cp;
  if (cfg.obstacle.type == ObstacleSpec::Type::Cone) {
    const std::size_t n_even = grid.n() % 2 == 0 ? grid.n() : grid.n() + 1;
    cp = critical_profile(cfg.obstacle.height, UniformGrid(n_even));
  }
  // Without a critical point the smallest energy seen stands in for infE.
  const double inf_e = cp ? cp->energy : *std::min_element(traj.energies.begin(), traj.energies.end());
  json l0 = nullptr;
  double l0_value = 0.0;
  if (!(inf_e > 0.0)) {
    warnings.push_back("no touch window: infE estimate is not positive");
  } else if (!(e0 < touch_threshold())) {
    warnings.push_back("no touch window: E0 is not below G(sqrt(2/3))^2");
  } else {
    l0_value = touch_window(e0, inf_e);
    l0 = num(l0_value);
  }

  json checks = json::object();
  bool all_ok = true;
  const auto record = [&](const char* name, bool pass, double measured, double bound) {
    checks[name] = check_entry(pass, measured, bound);
    all_ok = all_ok && pass;
  };
  const DissipationReport dr = dissipation_report(traj, cfg.flow.inner_tol);
  if (cfg.checks.dissipation) record("dissipation", dr.ok, dr.lhs, dr.rhs);
  if (cfg.checks.stanminimov) {
    const auto v = first_stanminimov_violation(traj, cfg.flow.inner_tol);
    record("stanminimov", !v, v ? static_cast<double>(*v) : 0.0, 0.0);
  }
  if (cfg.checks.kkt) {
    double worst = 0.0;
    for (std::size_t k = 1; k <= traj.steps(); ++k)
      worst = std::max({worst, traj.kkt_stationarity[k] / traj.kkt_scale[k],
                        -traj.kkt_multiplier_min[k] / traj.kkt_scale[k]});
    record("kkt", worst <= cfg.flow.inner_tol, worst, cfg.flow.inner_tol);
  }
  if (cfg.checks.symmetry) {
    const double s = *std::max_element(traj.symmetry_residuals.begin(), traj.symmetry_residuals.end());
    record("symmetry", s <= 1e-10, s, 1e-10);
  }
  const TouchScan scan = scan_touch_windows(traj, l0_value);
  if (cfg.checks.touch_window) {
    if (l0.is_null()) record("touch_window", false, NAN, NAN);
    else record("touch_window", scan.ok, scan.longest_gap, l0_value);
    // A run shorter than L0 holds no full window, so the check says little.
    checks["touch_window"]["full_windows"] = scan.windows;
  }
  if (cfg.checks.navier) {
    // Reported only: a single run cannot fit the decay in h.
    const auto [left, right] = navier_diagnostic(traj.iterates.back());
    checks["navier"] = {{"status", "info"}, {"measured", num(std::max(left, right))}, {"h", num(grid.h())}};
  }

  std::optional<std::size_t> touched;
  for (std::size_t k = 0; k <= traj.steps(); ++k)
    if (traj.coincidence_counts[k] > 0) {
      touched = k;
      break;
    }

  write_trajectory_csv(out_dir / cfg.outputs.trajectory_csv, traj);
  json snapshots = json::array();
  for (std::size_t s = 0; s < cfg.outputs.snapshots.size(); ++s) {
    const double t = cfg.outputs.snapshots[s];
    if (t < traj.times.front() - 1e-12 || t > traj.times.back() + 1e-12) {
      warnings.push_back("snapshot at t = " + format_number(t) + " lies outside the computed run");
      continue;
    }
    const std::string file = "snapshot_" + std::to_string(s) + ".csv";
    write_snapshot_csv(out_dir / file, interpolate_constant(traj, t), psi);
    snapshots.push_back({{"time", num(t)}, {"file", file}});
  }
  write_profile(out_dir / "final_iterate.csv", traj.iterates.back());
  if (cfg.outputs.plot_svg) {
    std::vector<PlotSeries> series = {{"obstacle", psi.samples(), "#7f7f7f", true},
                                      {"initial", traj.iterates.front(), "#ff7f0e", false},
                                      {"final", traj.iterates.back(), "#1f77b4", false}};
    if (cp && cp->grid == grid) series.push_back({"critical point", cp->profile, "#2ca02c", true});
    emit_plot(series, out_dir / *cfg.outputs.plot_svg,
              "t = " + format_number(traj.times.back()) + ", E = " + format_number(traj.energies.back()));
  }

  json summary = {
      {"final_energy", num(traj.energies.back())},
      {"initial_energy", num(e0)},
      {"dissipation_lhs", num(dr.lhs)},
      {"dissipation_rhs", num(dr.rhs)},
      {"touched_at_step", touched ? json(*touched) : json(nullptr)},
      {"l0_window", l0},
      {"l0_formula", kL0Formula},
      {"inf_energy", num(inf_e)},
      {"inf_energy_source", cp ? "critical point" : "smallest energy of the run"},
      {"warnings", warnings},
      {"checks", checks},
      {"snapshots", snapshots},
      {"final_time", num(traj.times.back())},
      {"steps", traj.steps()},
      {"grid_n", grid.n()},
      {"tau", num(cfg.flow.tau)},
      {"seed", opt.seed.value_or(cfg.seed)},
      {"rng", "mt19937_64"},
      {"kkt_note", KKTReport::kNote},
      {"resumed_from", resumed_from},
  };
  write_json(out_dir / cfg.outputs.summary_json, summary);

  SimulateOutcome outcome;
  outcome.exit_code = all_ok ? kSuccess : kCheckFailure;
  outcome.final_energy = traj.energies.back();
  outcome.touched_at_step = touched;
  outcome.steps = traj.steps();
  if (opt.log) {
    auto& log = *opt.log;
    log << "steps " << traj.steps() << ", t = " << format_number(traj.times.back()) << ", E = "
        << format_number(e0) << " -> " << format_number(traj.energies.back()) << '\n';
    log << "first contact: " << (touched ? std::to_string(*touched) : std::string("none")) << '\n';
    for (const auto& w : warnings) log << "warning: " << w << '\n';
    for (const auto& [name, c] : checks.items())
      log << "check " << name << ": " << c["status"].get<std::string>() << '\n';
  }
  return outcome;
}

int cmd_critical(double height, std::size_t n, const fs::path& out_dir, std::ostream& log) {
  ensure_dir(out_dir);
  const UniformGrid grid(n);
  const CriticalPoint cp = critical_profile(height, grid);
  const Obstacle psi = Obstacle::cone(grid, height);

  {
    auto out = open_output(out_dir / "critical_profile.csv");
    out << "x,u,uprime,psi\n";
    for (std::size_t i = 0; i <= n; ++i)
      out << format_number(grid.x(i)) << ',' << format_number(cp.profile[i]) << ','
          << format_number(cp.slope_profile[i]) << ',' << format_number(psi[i]) << '\n';
  }

  FlowConfig fc;
  const StepResult disc = discrete_critical_point(cp, fc);
  const CriticalCheck chk = check_critical(disc.u, psi, fc.coincidence_tol_for(grid));
  double deviation = 0.0;
  for (std::size_t i = 0; i <= n; ++i) deviation = std::max(deviation, std::abs(disc.u[i] - cp.profile[i]));

  const auto& r = cp.residuals;
  const bool ok = r.height_residual <= 1e-9 && r.concavity_min > 0.0 && r.ode_residual <= 1e-6 &&
                  chk.vi_ok(1e-5) && r.h_roundtrip < 1e-10;
  json j = {
      {"height", num(height)},
      {"grid_n", n},
      {"A", num(cp.A)},
      {"i0", num(cp.i0)},
      {"energy", num(cp.energy)},
      {"h_roundtrip", num(r.h_roundtrip)},
      {"height_residual", num(r.height_residual)},
      {"ode_residual", num(r.ode_residual)},
      {"concavity_min", num(r.concavity_min)},
      {"vi_residual_sampled", num(r.vi_residual)},
      {"vi_scale", num(r.vi_scale)},
      {"discrete",
       {{"vi_residual", num(chk.vi_residual)},
        {"scale", num(chk.scale)},
        {"max_deviation_from_profile", num(deviation)},
        {"coincidence", chk.coincidence},
        {"energy", num(energy(disc.u))}}},
      {"status", ok ? "pass" : "fail"},
  };
  write_json(out_dir / "critical_residuals.json", j);
  emit_plot({{"obstacle", psi.samples(), "#7f7f7f", true}, {"critical point", cp.profile, "#2ca02c", false}},
            out_dir / "critical.svg", "critical point, height " + format_number(height));
  log << "A = " << format_number(cp.A) << ", u(1/2) = " << format_number(cp.profile[n / 2])
      << ", E = " << format_number(cp.energy) << ", " << (ok ? "pass" : "fail") << '\n';
  return ok ? kSuccess : kCheckFailure;
}

int cmd_rearrange(const fs::path& input, const fs::path& output, std::ostream& log) {
  const GridFunction f = read_profile(input);
  const RearrangedPair pair = rearrange(f);
  const GridFunction v = talenti_comparison(f);
  auto out = open_output(output);
  out << "x,f,f_star,f_sym,v\n";
  for (std::size_t i = 0; i <= f.n(); ++i)
    out << format_number(f.grid().x(i)) << ',' << format_number(f[i]) << ',' << format_number(pair.f_star[i])
        << ',' << format_number(pair.f_sym[i]) << ',' << format_number(v[i]) << '\n';
  if (!out) throw Error(output.string() + ": write failed");
  log << "wrote " << output.string() << " (" << f.n() + 1 << " nodes)\n";
  return kSuccess;
}

int cmd_specialfn(const std::string& fn, const std::vector<double>& args, std::ostream& out) {
  namespace sf = specialfn;
  const auto each = [&](auto&& f) {
    if (args.empty()) throw ParameterError("specialfn " + fn + ": needs at least one argument");
    for (double a : args) out << format_number(f(a)) << '\n';
  };
  if (fn == "c0") {
    if (!args.empty()) throw ParameterError("specialfn c0: takes no arguments");
    out << format_number(sf::c0()) << '\n';
  } else if (fn == "g") {
    each([](double s) { return sf::g(s); });
  } else if (fn == "ginv") {
    each([](double y) { return sf::g_inv(y); });
  } else if (fn == "h") {
    each([](double a) { return sf::h_of_A(a); });
  } else if (fn == "hinv") {
    each([](double h) { return sf::h_inv(h); });
  } else if (fn == "uc") {
    if (args.size() < 2) throw ParameterError("specialfn uc: expects c followed by one or more x");
    for (std::size_t i = 1; i < args.size(); ++i) out << format_number(sf::u_c_value(args[0], args[i])) << '\n';
  } else {
    throw ParameterError("specialfn: unknown function '" + fn + "' (g, ginv, c0, h, hinv, uc)");
  }
  return kSuccess;
}

int cmd_validate(const ValidateOptions& opt, const fs::path& out_dir, std::ostream& log) {
  ensure_dir(out_dir);
  validation::Options vo;
  vo.quick = opt.quick;
  vo.parallel = opt.parallel;
  if (opt.seed) vo.seed = *opt.seed;
  const validation::Report report = validation::run(vo);

  json criteria = json::array();
  for (const auto& c : report.criteria) {
    json checks = json::array();
    for (const auto& ch : c.checks)
      checks.push_back({{"name", ch.name},
                        {"status", ch.pass ? "pass" : "fail"},
                        {"measured", num(ch.measured)},
                        {"bound", num(ch.bound)},
                        {"tolerance", num(ch.tolerance)},
                        {"detail", ch.detail}});
    criteria.push_back({{"id", c.id},
                        {"title", c.title},
                        {"status", c.pass() ? "pass" : "fail"},
                        {"seconds", num(c.seconds)},
                        {"time_limit", num(c.time_limit)},
                        {"checks", checks}});
    log << validation::summary_line(c) << '\n';
  }
  write_json(out_dir / "validation_report.json", {{"pass", report.pass()},
                                                  {"quick", report.quick},
                                                  {"seed", report.seed},
                                                  {"rng", report.rng},
                                                  {"criteria", criteria}});
  return report.pass() ? kSuccess : kCheckFailure;
}

int cmd_sweep(const fs::path& sweep_file, const fs::path& out_dir, unsigned jobs, bool allow_invalid,
              std::optional<std::uint64_t> seed, std::ostream& log) {
  const json doc = parse_json_file(sweep_file);
  if (!doc.is_object()) throw ConfigError(sweep_file.string() + ": top level must be an object");
  for (const auto& [key, _] : doc.items())
    if (key != "base" && key != "cases") throw ConfigError(sweep_file.string() + ": " + key + ": unknown key");
  if (!doc.contains("cases") || !doc["cases"].is_array() || doc["cases"].empty())
    throw ConfigError(sweep_file.string() + ": cases: expected a nonempty array");
  const json base = doc.value("base", json::object());

  struct Case {
    std::string name;
    RunConfig cfg;
  };
  std::vector<Case> cases;
  for (std::size_t k = 0; k < doc["cases"].size(); ++k) {
    json patch = doc["cases"][k];
    const std::string where = sweep_file.string() + ": cases[" + std::to_string(k) + "]";
    if (!patch.is_object() || !patch.contains("name") || !patch["name"].is_string())
      throw ConfigError(where + ": needs a string name");
    const std::string name = patch["name"];
    if (name.empty() || fs::path(name).has_parent_path() || name == "." || name == "..")
      throw ConfigError(where + ".name: must be a plain directory name");
    for (const auto& c : cases)
      if (c.name == name) throw ConfigError(where + ".name: duplicate '" + name + "'");
    patch.erase("name");
    json merged = base;
    merged.merge_patch(patch);
    try {
      cases.push_back({name, config_from_json(merged, sweep_file.parent_path(), allow_invalid)});
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  ensure_dir(out_dir);

  std::vector<SimulateOutcome> outcomes(cases.size());
  std::vector<std::string> messages(cases.size());
  const auto run_case = [&](std::size_t k) {
    std::ostringstream err;
    SimulateOptions so;
    so.seed = seed;
    const int code = guarded(
        [&] {
          outcomes[k] = cmd_simulate(cases[k].cfg, out_dir / cases[k].name, so);
          return outcomes[k].exit_code;
        },
        err);
    outcomes[k].exit_code = code;
    messages[k] = err.str();
  };
  jobs = std::max(1u, jobs);
  for (std::size_t first = 0; first < cases.size(); first += jobs) {
    std::vector<std::future<void>> batch;
    for (std::size_t k = first; k < std::min(cases.size(), first + jobs); ++k)
      batch.push_back(std::async(std::launch::async, run_case, k));
    for (auto& f : batch) f.get();
  }

  auto out = open_output(out_dir / "sweep_summary.csv");
  out << "case,exit_code,final_energy,touched_at_step,steps\n";
  int worst = kSuccess;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& o = outcomes[k];
    out << cases[k].name << ',' << o.exit_code << ','
        << (o.exit_code <= kCheckFailure ? format_number(o.final_energy) : "") << ','
        << (o.touched_at_step ? std::to_string(*o.touched_at_step) : "") << ',' << o.steps << '\n';
    log << cases[k].name << ": exit " << o.exit_code << (messages[k].empty() ? "\n" : ", " + messages[k]);
    worst = std::max(worst, o.exit_code);
  }
  return worst;
}

}  // namespace elasticflow::cli
