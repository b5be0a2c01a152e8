#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hoco {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> pts;  // (x, y), both positive
};

// Self-contained log-log line chart, no external assets. fitline is
// (slope, intercept) in log space: it draws y = exp(intercept) * x^slope
// across the data range and annotates the slope.
std::string svg_loglog(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<SvgSeries>& series,
                       std::optional<std::pair<double, double>> fitline = std::nullopt);

}  // namespace hoco
