#include "cli/outputs.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "elasticflow/error.hpp"
#include "elasticflow/profile_io.hpp"

namespace elasticflow::cli {

namespace {

std::string fixed(double v, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string tick(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  return out;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  auto out = open_output(path);
  out << "step,time,energy,step_l2,coincidence_count,symmetry_residual,inner_iters,"
         "kkt_stationarity,kkt_multiplier_min\n";
  for (std::size_t k = 0; k <= traj.steps(); ++k) {
    out << k << ',' << format_number(traj.times[k]) << ',' << format_number(traj.energies[k]) << ','
        << format_number(traj.step_norms[k]) << ',' << traj.coincidence_counts[k] << ','
        << format_number(traj.symmetry_residuals[k]) << ',' << traj.inner_iterations[k] << ','
        << format_number(traj.kkt_stationarity[k]) << ',' << format_number(traj.kkt_multiplier_min[k])
        << '\n';
  }
  if (!out) throw Error(path.string() + ": write failed");
}

void write_snapshot_csv(const std::filesystem::path& path, const GridFunction& u, const Obstacle& psi) {
  require_same_grid(u, psi.samples(), "write_snapshot_csv");
  auto out = open_output(path);
  out << "x,u,psi,gap\n";
  for (std::size_t i = 0; i <= u.n(); ++i)
    out << format_number(u.grid().x(i)) << ',' << format_number(u[i]) << ',' << format_number(psi[i])
        << ',' << format_number(u[i] - psi[i]) << '\n';
  if (!out) throw Error(path.string() + ": write failed");
}

std::string plot_svg(const std::vector<PlotSeries>& series, const std::string& title) {
  if (series.empty()) throw PreconditionError("plot_svg: need at least one profile");
  constexpr double W = 640, H = 400, left = 70, right = 20, top = 40, bottom = 50;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series)
    for (double v : s.values.values()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const auto px = [&](double x) { return left + x * (W - left - right); };
  const auto py = [&](double y) { return H - bottom - (y - lo) / (hi - lo) * (H - top - bottom); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
         escape(title) + "</text>\n";
  // Axes, ticks at the ends and the middle.
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(H - bottom) + "\" x2=\"" + fixed(W - right) +
         "\" y2=\"" + fixed(H - bottom) + "\"/>\n";
  svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(left) + "\" y2=\"" +
         fixed(H - bottom) + "\"/>\n";
  svg += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double x : {0.0, 0.5, 1.0})
    svg += "<text x=\"" + fixed(px(x)) + "\" y=\"" + fixed(H - bottom + 16) + "\" text-anchor=\"middle\">" +
           fixed(x, 1) + "</text>\n";
  for (double y : {lo + pad, 0.5 * (lo + hi), hi - pad})
    svg += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(py(y) + 4) + "\" text-anchor=\"end\">" +
           tick(y) + "</text>\n";
  svg += "<text x=\"" + fixed(0.5 * (left + W - right)) + "\" y=\"" + fixed(H - 12) +
         "\" text-anchor=\"middle\">x</text>\n";
  svg += "<text x=\"18\" y=\"" + fixed(0.5 * (top + H - bottom)) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fixed(0.5 * (top + H - bottom)) + ")\">u</text>\n</g>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
    if (s.dashed) svg += " stroke-dasharray=\"6 4\"";
    svg += " points=\"";
    for (std::size_t i = 0; i <= s.values.n(); ++i) {
      if (i) svg += ' ';
      svg += fixed(px(s.values.grid().x(i))) + ',' + fixed(py(s.values[i]));
    }
    svg += "\"/>\n";
    const double ly = top + 14.0 * k + 6.0;
    svg += "<line x1=\"" + fixed(W - right - 150) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(W - right - 130) +
           "\" y2=\"" + fixed(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    svg += "<text x=\"" + fixed(W - right - 125) + "\" y=\"" + fixed(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::vector<PlotSeries>& series, const std::filesystem::path& path,
               const std::string& title) {
  const std::string svg = plot_svg(series, title);
  auto out = open_output(path);
  out << svg;
  if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace elasticflow::cli
