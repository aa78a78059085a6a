#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dlab/util/numeric.hpp"

namespace dlab {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool annotate_fit = true;
};

/// Writes a self-contained log-log SVG; each series is drawn as markers plus its
/// least-squares line with the fitted slope printed in the legend.
void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series);

}  // namespace dlab
