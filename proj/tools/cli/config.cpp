#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "elasticflow/profile_io.hpp"
#include "elasticflow/specialfn.hpp"

namespace elasticflow::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kFlowKeys = {"tau",           "t_end",      "inner_tol",
                                         "inner_max_iter", "armijo_c",   "backtrack",
                                         "coincidence_tol", "inner_method", "stall_rate"};

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      throw ConfigError(where + (where.empty() ? "" : ".") + key + ": unknown key");
}

const json& object_at(const json& parent, const std::string& key, const std::string& where) {
  const json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(where + ": expected an object");
  return v;
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + ": must be finite");
  return d;
}

double positive(const json& obj, const std::string& key, const std::string& where) {
  const double d = number(obj, key, where);
  if (!(d > 0.0)) throw ConfigError(where + ": must be > 0");
  return d;
}

bool boolean(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(where + ": expected true or false");
  return v.get<bool>();
}

std::string string(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

std::uint64_t unsigned_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0))
    throw ConfigError(where + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string file_name(const json& obj, const std::string& key, const std::string& where) {
  const std::string s = string(obj, key, where);
  const std::filesystem::path p(s);
  if (s.empty() || p.is_absolute() || p.has_parent_path())
    throw ConfigError(where + ": must be a plain file name inside the output directory");
  return s;
}

void read_flow(const json& obj, const std::string& prefix, FlowConfig& f) {
  auto name = [&](const char* k) { return prefix + k; };
  if (obj.contains("tau")) f.tau = positive(obj, "tau", name("tau"));
  if (obj.contains("t_end")) f.t_end = positive(obj, "t_end", name("t_end"));
  if (obj.contains("inner_tol")) f.inner_tol = positive(obj, "inner_tol", name("inner_tol"));
  if (obj.contains("inner_max_iter")) {
    const auto v = unsigned_int(obj, "inner_max_iter", name("inner_max_iter"));
    if (v < 1 || v > 1'000'000) throw ConfigError(name("inner_max_iter") + ": must be in [1, 1e6]");
    f.inner_max_iter = static_cast<int>(v);
  }
  if (obj.contains("armijo_c")) f.armijo_c = positive(obj, "armijo_c", name("armijo_c"));
  if (obj.contains("backtrack")) f.backtrack = positive(obj, "backtrack", name("backtrack"));
  if (obj.contains("coincidence_tol")) {
    f.coincidence_tol = number(obj, "coincidence_tol", name("coincidence_tol"));
    if (f.coincidence_tol < 0.0) throw ConfigError(name("coincidence_tol") + ": must be >= 0");
  }
  if (obj.contains("stall_rate")) {
    f.stall_rate = number(obj, "stall_rate", name("stall_rate"));
    if (f.stall_rate < 0.0) throw ConfigError(name("stall_rate") + ": must be >= 0");
  }
  if (obj.contains("inner_method")) {
    const std::string m = string(obj, "inner_method", name("inner_method"));
    if (m == "projected_newton") f.method = InnerMethod::ProjectedNewton;
    else if (m == "projected_gradient") f.method = InnerMethod::ProjectedGradient;
    else throw ConfigError(name("inner_method") + ": expected \"projected_newton\" or \"projected_gradient\"");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

nlohmann::json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ":" + std::to_string(line_of(text, e.byte > 0 ? e.byte - 1 : 0)) +
                      ": parse error: " + e.what());
  }
}

RunConfig config_from_json(const json& j, const std::filesystem::path& base_dir, bool allow_invalid) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  std::set<std::string> top = {"grid_n", "flow", "obstacle", "initial", "outputs",
                               "checks", "allow_invalid_obstacle", "seed"};
  top.insert(kFlowKeys.begin(), kFlowKeys.end());
  reject_unknown(j, "", top);

  RunConfig cfg;
  try {
    if (j.contains("grid_n")) {
      const auto n = unsigned_int(j, "grid_n", "grid_n");
      if (n < 16) throw ConfigError("grid_n: must be >= 16 for flow runs");
      if (n > 1'000'000) throw ConfigError("grid_n: must be <= 1e6");
      cfg.grid_n = n;
    }
    read_flow(j, "", cfg.flow);
    if (j.contains("flow")) {
      const json& f = object_at(j, "flow", "flow");
      reject_unknown(f, "flow", kFlowKeys);
      for (const auto& [key, _] : f.items())
        if (j.contains(key)) throw ConfigError("flow." + key + ": also given at top level");
      read_flow(f, "flow.", cfg.flow);
    }
    if (j.contains("seed")) cfg.seed = unsigned_int(j, "seed", "seed");
    if (j.contains("allow_invalid_obstacle"))
      cfg.allow_invalid_obstacle = boolean(j, "allow_invalid_obstacle", "allow_invalid_obstacle");
    cfg.allow_invalid_obstacle = cfg.allow_invalid_obstacle || allow_invalid;

    if (!j.contains("obstacle")) throw ConfigError("obstacle: required");
    const json& ob = object_at(j, "obstacle", "obstacle");
    if (!ob.contains("type")) throw ConfigError("obstacle.type: required");
    const std::string otype = string(ob, "type", "obstacle.type");
    if (otype == "cone") {
      reject_unknown(ob, "obstacle", {"type", "height", "endpoint"});
      if (!ob.contains("height")) throw ConfigError("obstacle.height: required for a cone");
      cfg.obstacle.type = ObstacleSpec::Type::Cone;
      cfg.obstacle.height = positive(ob, "height", "obstacle.height");
      if (ob.contains("endpoint")) cfg.obstacle.endpoint = number(ob, "endpoint", "obstacle.endpoint");
      if (cfg.obstacle.endpoint && !(*cfg.obstacle.endpoint < 0.0) && !cfg.allow_invalid_obstacle)
        throw ConfigError("obstacle.endpoint: Assumption 1 needs psi < 0 at both ends "
                          "(set allow_invalid_obstacle to override)");
    } else if (otype == "table") {
      reject_unknown(ob, "obstacle", {"type", "path"});
      if (!ob.contains("path")) throw ConfigError("obstacle.path: required for a table");
      cfg.obstacle.type = ObstacleSpec::Type::Table;
      cfg.obstacle.path = resolve(base_dir, string(ob, "path", "obstacle.path"));
    } else if (otype == "constant") {
      reject_unknown(ob, "obstacle", {"type", "level"});
      if (!ob.contains("level")) throw ConfigError("obstacle.level: required for a constant obstacle");
      cfg.obstacle.type = ObstacleSpec::Type::Constant;
      cfg.obstacle.level = number(ob, "level", "obstacle.level");
      if (!cfg.allow_invalid_obstacle)
        throw ConfigError("obstacle.level: a constant obstacle violates Assumption 1 (psi < 0 at "
                          "both ends and psi > 0 somewhere); set allow_invalid_obstacle to override");
    } else {
      throw ConfigError("obstacle.type: expected \"cone\", \"table\" or \"constant\"");
    }

    if (!j.contains("initial")) throw ConfigError("initial: required");
    const json& in = object_at(j, "initial", "initial");
    if (!in.contains("type")) throw ConfigError("initial.type: required");
    const std::string itype = string(in, "type", "initial.type");
    if (itype == "uc") {
      reject_unknown(in, "initial", {"type", "c"});
      cfg.initial.type = InitialSpec::Type::Uc;
      if (in.contains("c")) cfg.initial.c = number(in, "c", "initial.c");
      if (!(cfg.initial.c > 0.0 && cfg.initial.c < specialfn::c0()))
        throw ConfigError("initial.c: must lie in (0, c0)");
    } else if (itype == "table") {
      reject_unknown(in, "initial", {"type", "path"});
      if (!in.contains("path")) throw ConfigError("initial.path: required for a table");
      cfg.initial.type = InitialSpec::Type::Table;
      cfg.initial.path = resolve(base_dir, string(in, "path", "initial.path"));
    } else if (itype == "scaled_bump") {
      reject_unknown(in, "initial", {"type", "scale"});
      cfg.initial.type = InitialSpec::Type::ScaledBump;
      if (in.contains("scale")) cfg.initial.scale = number(in, "scale", "initial.scale");
    } else {
      throw ConfigError("initial.type: expected \"uc\", \"table\" or \"scaled_bump\"");
    }

    if (j.contains("outputs")) {
      const json& o = object_at(j, "outputs", "outputs");
      reject_unknown(o, "outputs", {"trajectory_csv", "snapshots", "summary_json", "plot_svg"});
      if (o.contains("trajectory_csv"))
        cfg.outputs.trajectory_csv = file_name(o, "trajectory_csv", "outputs.trajectory_csv");
      if (o.contains("summary_json"))
        cfg.outputs.summary_json = file_name(o, "summary_json", "outputs.summary_json");
      if (o.contains("plot_svg")) cfg.outputs.plot_svg = file_name(o, "plot_svg", "outputs.plot_svg");
      if (o.contains("snapshots")) {
        const json& s = o.at("snapshots");
        if (!s.is_array()) throw ConfigError("outputs.snapshots: expected an array of times");
        for (std::size_t k = 0; k < s.size(); ++k) {
          const std::string where = "outputs.snapshots[" + std::to_string(k) + "]";
          if (!s[k].is_number()) throw ConfigError(where + ": expected a number");
          const double t = s[k].get<double>();
          if (!(t >= 0.0 && t <= cfg.flow.t_end))
            throw ConfigError(where + ": must lie in [0, t_end]");
          cfg.outputs.snapshots.push_back(t);
        }
      }
    }

    if (j.contains("checks")) {
      const json& c = object_at(j, "checks", "checks");
      reject_unknown(c, "checks", {"symmetry", "dissipation", "stanminimov", "kkt", "touch_window", "navier"});
      auto flag = [&](const char* k, bool& dst) {
        if (c.contains(k)) dst = boolean(c, k, std::string("checks.") + k);
      };
      flag("symmetry", cfg.checks.symmetry);
      flag("dissipation", cfg.checks.dissipation);
      flag("stanminimov", cfg.checks.stanminimov);
      flag("kkt", cfg.checks.kkt);
      flag("touch_window", cfg.checks.touch_window);
      flag("navier", cfg.checks.navier);
    }
    cfg.flow.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("flow: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, bool allow_invalid) {
  const json j = parse_json_file(path);
  try {
    return config_from_json(j, path.parent_path(), allow_invalid);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Obstacle make_obstacle(const RunConfig& cfg) {
  const UniformGrid grid(cfg.grid_n);
  Obstacle psi = [&] {
    switch (cfg.obstacle.type) {
      case ObstacleSpec::Type::Cone:
        return cfg.obstacle.endpoint ? Obstacle::cone(grid, cfg.obstacle.height, *cfg.obstacle.endpoint)
                                     : Obstacle::cone(grid, cfg.obstacle.height);
      case ObstacleSpec::Type::Table:
        return Obstacle::table(read_profile(cfg.obstacle.path, cfg.grid_n));
      case ObstacleSpec::Type::Constant:
        break;
    }
    return Obstacle::constant(grid, cfg.obstacle.level);
  }();
  if (!psi.assumption1_ok() && !cfg.allow_invalid_obstacle)
    throw ConfigError("obstacle: violates Assumption 1 (psi < 0 at both ends and psi > 0 "
                      "somewhere); set allow_invalid_obstacle to override");
  return psi;
}

GridFunction make_initial(const RunConfig& cfg, const Obstacle& psi) {
  const UniformGrid grid(cfg.grid_n);
  GridFunction u(grid);
  switch (cfg.initial.type) {
    case InitialSpec::Type::Uc: {
      const double c = cfg.initial.c;
      u = GridFunction::sample(grid, [c](double x) { return specialfn::u_c_value(c, x); });
      break;
    }
    case InitialSpec::Type::Table:
      u = read_profile(cfg.initial.path, cfg.grid_n);
      break;
    case InitialSpec::Type::ScaledBump: {
      const double s = cfg.initial.scale;
      u = GridFunction::sample(grid, [s](double x) { return 4.0 * s * x * (1.0 - x); });
      break;
    }
  }
  u[0] = 0.0;
  u[grid.n()] = 0.0;
  for (std::size_t i = 1; i < grid.n(); ++i)
    if (u[i] < psi[i])
      throw ConfigError("initial: data lies below the obstacle at x = " + format_number(grid.x(i)));
  return u;
}

std::string config_reference() {
  return R"(Config file (JSON, unknown keys rejected):
  grid_n                  cells of the uniform grid, >= 16            [200]
  tau                     time step                                   [1e-3]
  t_end                   final time                                  [1]
  inner_tol               KKT tolerance of each step (x scale)        [1e-8]
  inner_max_iter          inner iterations per step                   [200]
  armijo_c, backtrack     line search constants                       [1e-4, 0.5]
  coincidence_tol         contact tolerance, 0 = 10 inner_tol sqrt(h) [0]
  inner_method            projected_newton | projected_gradient       [projected_newton]
  stall_rate              stop once (E_k-1 - E_k)/tau falls below it  [0 = off]
  (the flow keys may also be grouped under "flow")
  obstacle                {type: cone, height[, endpoint = -height]}
                          {type: table, path}   CSV x,value
                          {type: constant, level}   needs allow_invalid_obstacle
  initial                 {type: uc, c [0.5]} | {type: table, path}
                          {type: scaled_bump, scale [0.01]}   scale 4x(1-x)
  outputs                 trajectory_csv [trajectory.csv], summary_json [summary.json],
                          snapshots [[]] times, plot_svg [none]
  checks                  symmetry [false], dissipation [true], stanminimov [true],
                          kkt [true], touch_window [false], navier [false]
  allow_invalid_obstacle  accept obstacles violating Assumption 1      [false]
  seed                    recorded in the summary                      [0]
)";
}

}  // namespace elasticflow::cli
