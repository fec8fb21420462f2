#include "ofuglb/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>

namespace ofuglb::harness {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
constexpr const char* kDashes[] = {"", "8 4", "2 3", "10 3 2 3", "4 4"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

RegretPlotData regret_plot_data(const std::vector<RunResultRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("plot_regret: no rows (zero repeats)");
  std::map<std::string, std::map<std::size_t, std::vector<double>>> grouped;
  std::map<std::string, std::map<int, bool>> repeat_ids;
  for (const RunResultRow& r : rows) {
    grouped[r.variant][r.t].push_back(r.cum_regret);
    repeat_ids[r.variant][r.repeat_id] = true;
  }

  RegretPlotData data;
  bool first = true;
  for (const auto& [variant, by_t] : grouped) {
    RegretSeries s;
    s.variant = variant;
    s.repeats = static_cast<int>(repeat_ids[variant].size());
    for (const auto& [t, values] : by_t) {
      const double n = static_cast<double>(values.size());
      double mean = 0.0;
      for (const double v : values) mean += v;
      mean /= n;
      double ss = 0.0;
      for (const double v : values) ss += (v - mean) * (v - mean);
      const double sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      s.t.push_back(static_cast<double>(t));
      s.mean.push_back(mean);
      s.sd.push_back(sd);
      const double hi = mean + sd;
      const double lo = mean - sd;
      if (first) {
        data.x_max = static_cast<double>(t);
        data.y_max = hi;
        data.y_min = std::min(0.0, lo);
        first = false;
      }
      data.x_max = std::max(data.x_max, static_cast<double>(t));
      data.y_max = std::max(data.y_max, hi);
      data.y_min = std::min(data.y_min, lo);
    }
    data.series.push_back(std::move(s));
  }
  return data;
}

std::string render_regret_svg(const std::vector<RunResultRow>& rows) {
  const RegretPlotData data = regret_plot_data(rows);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double x_span = data.x_max > 0.0 ? data.x_max : 1.0;
  const double y_span = data.y_max > data.y_min ? data.y_max - data.y_min : 1.0;
  const auto px = [&](double x) { return kLeft + plot_w * x / x_span; };
  const auto py = [&](double y) { return kTop + plot_h * (1.0 - (y - data.y_min) / y_span); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  // Axes and ticks.
  svg += "<path d=\"M" + num(kLeft) + " " + num(kTop) + " V" + num(kTop + plot_h) + " H" +
         num(kLeft + plot_w) + "\" stroke=\"black\" fill=\"none\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_span * i / 4.0;
    const double yv = data.y_min + y_span * i / 4.0;
    svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + label(xv) + "</text>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(yv) + 4) +
           "\" text-anchor=\"end\">" + label(yv) + "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 10) +
         "\" text-anchor=\"middle\">round t</text>\n";
  svg += "<text x=\"18\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num(kTop + plot_h / 2) + ")\">cumulative regret</text>\n";

  for (std::size_t k = 0; k < data.series.size(); ++k) {
    const RegretSeries& s = data.series[k];
    const std::string color = kColors[k % std::size(kColors)];
    const std::string dash = kDashes[k % std::size(kDashes)];
    std::string band = "M";
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      band += (i ? " L" : "") + num(px(s.t[i])) + " " + num(py(s.mean[i] + s.sd[i]));
    }
    for (std::size_t i = s.t.size(); i-- > 0;) {
      band += " L" + num(px(s.t[i])) + " " + num(py(s.mean[i] - s.sd[i]));
    }
    band += " Z";
    svg += "<path class=\"band\" d=\"" + band + "\" fill=\"" + color +
           "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    std::string line = "M";
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      line += (i ? " L" : "") + num(px(s.t[i])) + " " + num(py(s.mean[i]));
    }
    svg += "<path class=\"mean\" d=\"" + line + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"2\"" + (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") +
           "/>\n";
    const double ly = kTop + 20.0 * static_cast<double>(k + 1);
    svg += "<path d=\"M" + num(kLeft + plot_w + 15) + " " + num(ly) + " h30\" stroke=\"" + color +
           "\" stroke-width=\"2\"" + (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") +
           "/>\n";
    svg += "<text x=\"" + num(kLeft + plot_w + 52) + "\" y=\"" + num(ly + 4) + "\">" +
           escape(s.variant) + " (n=" + std::to_string(s.repeats) + ")</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

void plot_regret(const std::vector<RunResultRow>& rows, const std::filesystem::path& path) {
  write_text(render_regret_svg(rows), path);
}

std::vector<Eigen::Vector2d> trace_lr_boundary(const LRConfidenceSet& set, int rays) {
  if (set.space.dim != 2) throw std::invalid_argument("boundary tracing needs d = 2");
  if (rays < 3) throw std::invalid_argument("boundary tracing needs at least 3 rays");
  const Eigen::Vector2d c = set.center;
  const double S = set.space.radius;
  const auto inside = [&](const Eigen::Vector2d& p) { return lr_excess(set, p) <= set.radius_sq; };
  std::vector<Eigen::Vector2d> out;
  out.reserve(static_cast<std::size_t>(rays));
  for (int k = 0; k < rays; ++k) {
    const double a = 2.0 * std::numbers::pi * k / rays;
    const Eigen::Vector2d u(std::cos(a), std::sin(a));
    const double b = c.dot(u);
    const double r_max = std::max(0.0, -b + std::sqrt(std::max(0.0, b * b - c.squaredNorm() + S * S)));
    double r = r_max;
    if (!inside(c + r_max * u)) {
      double lo = 0.0;
      double hi = r_max;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (inside(c + mid * u) ? lo : hi) = mid;
      }
      r = lo;
    }
    out.push_back(c + r * u);
  }
  return out;
}

std::vector<Eigen::Vector2d> trace_ellipsoid_boundary(const EllipsoidConfidenceSet& set, int rays) {
  if (set.center.size() != 2) throw std::invalid_argument("boundary tracing needs d = 2");
  if (rays < 3) throw std::invalid_argument("boundary tracing needs at least 3 rays");
  const Eigen::Vector2d c = set.center;
  std::vector<Eigen::Vector2d> out;
  out.reserve(static_cast<std::size_t>(rays));
  for (int k = 0; k < rays; ++k) {
    const double a = 2.0 * std::numbers::pi * k / rays;
    const Eigen::Vector2d u(std::cos(a), std::sin(a));
    out.push_back(c + std::sqrt(set.gamma / u.dot(set.shape * u)) * u);
  }
  return out;
}

std::string render_cs_svg(const nlohmann::json& set_doc, const Eigen::VectorXd& theta_star) {
  if (!set_doc.is_object() || !set_doc.contains("kind") || !set_doc.contains("d")) {
    throw std::invalid_argument("not a confidence-set document");
  }
  if (set_doc.at("d").get<int>() != 2) throw std::invalid_argument("plot-cs supports d = 2 only");
  if (theta_star.size() != 2) throw std::invalid_argument("theta_star must have 2 coordinates");

  std::vector<Eigen::Vector2d> boundary;
  Eigen::Vector2d center;
  std::string title;
  const std::string kind = set_doc.at("kind").get<std::string>();
  if (kind == "lr") {
    const LRConfidenceSet set = lr_set_from_json(set_doc);
    boundary = trace_lr_boundary(set);
    center = set.center;
    title = "likelihood-ratio set, t = " + std::to_string(set.round());
  } else if (kind == "ellipsoid") {
    const EllipsoidConfidenceSet set = ellipsoid_set_from_json(set_doc);
    boundary = trace_ellipsoid_boundary(set);
    center = set.center;
    title = "ellipsoidal set, t = " + std::to_string(set.t);
  } else {
    throw std::invalid_argument("unknown set kind '" + kind + "'");
  }

  const Eigen::Vector2d star = theta_star;
  Eigen::Vector2d lo = star.cwiseMin(center);
  Eigen::Vector2d hi = star.cwiseMax(center);
  for (const auto& p : boundary) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double side = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9}) * 1.15;
  const Eigen::Vector2d mid = 0.5 * (lo + hi);
  const double size = 500.0;
  const double pad = 40.0;
  const auto px = [&](const Eigen::Vector2d& p) {
    return std::pair{pad + (size - 2 * pad) * ((p.x() - mid.x()) / side + 0.5),
                     pad + (size - 2 * pad) * (0.5 - (p.y() - mid.y()) / side)};
  };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<text x=\"250\" y=\"20\" text-anchor=\"middle\">" + escape(title) + "</text>\n";
  std::string d = "M";
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const auto [x, y] = px(boundary[i]);
    d += (i ? " L" : "") + num(x) + " " + num(y);
  }
  d += " Z";
  svg += "<path class=\"boundary\" d=\"" + d + "\" fill=\"#1f77b4\" fill-opacity=\"0.15\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  {
    const auto [x, y] = px(center);
    svg += "<circle class=\"theta-hat\" cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"4\" fill=\"black\"/>\n";
  }
  {
    const auto [x, y] = px(star);
    svg += "<path class=\"theta-star\" d=\"M" + num(x - 6) + " " + num(y - 6) + " L" + num(x + 6) + " " +
           num(y + 6) + " M" + num(x - 6) + " " + num(y + 6) + " L" + num(x + 6) + " " + num(y - 6) +
           "\" stroke=\"#d62728\" stroke-width=\"2.5\"/>\n";
  }
  svg += "<text x=\"20\" y=\"480\">black dot: estimate; red cross: true parameter</text>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

void plot_cs_boundary(const nlohmann::json& set_doc, const Eigen::VectorXd& theta_star,
                      const std::filesystem::path& path) {
  write_text(render_cs_svg(set_doc, theta_star), path);
}

}  // namespace ofuglb::harness
