#pragma once

#include <string>
#include <vector>

#include "hedonic/experiment.hpp"

namespace hedonic {

/// Horizontal gain bars, highest first. Names listed in `highlighted` (the
/// MLS numeric columns) get a distinct outline.
void write_importance_svg(const std::string& path,
                          const std::vector<std::pair<std::string, double>>& gains,
                          const std::vector<std::string>& highlighted,
                          const std::string& title);

/// Grouped R^2 bars per combination, one group row per target.
void write_report_svg(const std::string& path, const MetricReport& report);

}  // namespace hedonic
