#pragma once

#include <string>
#include <vector>

namespace heightlab::cli {

struct Series {
  std::string label;
  std::vector<double> x, y;  // positive values, plotted on log-log axes
};

std::string loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series);

}  // namespace heightlab::cli
