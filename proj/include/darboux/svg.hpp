#pragma once

#include <string>
#include <vector>

#include "darboux/grid.hpp"

namespace darboux {

struct PlotSeries {
  std::string label;
  Eigen::ArrayXd x;
  Eigen::ArrayXd y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label = "x";
  std::string y_label;
  std::vector<PlotSeries> series;
};

// Minimal deterministic polyline SVG; diagnostic plots, no dependencies.
void write_svg_plot(const std::string& path, const PlotSpec& plot);

// Convenience: one field component on the field's own grid.
enum class PlotComponent { Re, Im, Abs };
PlotSeries make_series(const std::string& label, const ComplexField& f, PlotComponent c,
                       const std::string& color, bool dashed = false,
                       int max_points = 2400);

}  // namespace darboux
