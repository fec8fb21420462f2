#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "ofuglb/confidence_set.hpp"
#include "ofuglb/harness/results.hpp"

namespace ofuglb::harness {

struct RegretSeries {
  std::string variant;
  std::vector<double> t;
  std::vector<double> mean;
  /// Sample standard deviation over repeats; 0 for a single repeat.
  std::vector<double> sd;
  int repeats = 0;
};

struct RegretPlotData {
  std::vector<RegretSeries> series;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

/// Mean and std of cum_regret per variant and round. Throws on empty input.
RegretPlotData regret_plot_data(const std::vector<RunResultRow>& rows);
std::string render_regret_svg(const std::vector<RunResultRow>& rows);
void plot_regret(const std::vector<RunResultRow>& rows, const std::filesystem::path& path);

/// Boundary of a 2-D LR set by bisection along `rays` directions from the
/// centre, clipped to the ball.
std::vector<Eigen::Vector2d> trace_lr_boundary(const LRConfidenceSet& set, int rays = 360);
/// Boundary of a 2-D ellipsoid set in closed form along `rays` directions.
std::vector<Eigen::Vector2d> trace_ellipsoid_boundary(const EllipsoidConfidenceSet& set,
                                                      int rays = 360);

/// Renders a set document written by the run command. Throws unless d = 2.
std::string render_cs_svg(const nlohmann::json& set_doc, const Eigen::VectorXd& theta_star);
void plot_cs_boundary(const nlohmann::json& set_doc, const Eigen::VectorXd& theta_star,
                      const std::filesystem::path& path);

}  // namespace ofuglb::harness
