#pragma once

#include <string>
#include <vector>

namespace cmarl {

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<double> xs;
  std::vector<double> ys;
  // Optional band (same length as xs); drawn as a translucent ribbon.
  std::vector<double> band_lo;
  std::vector<double> band_hi;
};

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<SvgSeries>& series);

struct BarGroup {
  std::string label;             // e.g. "agent 0"
  std::vector<double> values;    // one per series
};

std::string bar_chart_svg(const std::string& title, const std::string& y_label,
                          const std::vector<std::string>& series_labels,
                          const std::vector<std::string>& series_colors,
                          const std::vector<BarGroup>& groups);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cmarl
