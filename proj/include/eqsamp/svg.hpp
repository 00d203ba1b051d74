#pragma once

#include <string>
#include <vector>

namespace eqsamp::svg {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal static line chart: axes, ticks, legend, one polyline per series.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       int width = 640, int height = 420);

}  // namespace eqsamp::svg
