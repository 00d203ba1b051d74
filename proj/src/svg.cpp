#include "eqsamp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace eqsamp::svg {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Round limits outward to a tidy tick step (1/2/5 ladder).
void nice_limits(double& lo, double& hi, double& step) {
  if (!(hi > lo)) hi = lo + 1.0;
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
  lo = std::floor(lo / step) * step;
  hi = std::ceil(hi / step) * step;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       int width, int height) {
  const double left = 64, right = 24, top = 36, bottom = 48;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = std::numeric_limits<double>::max(), x_hi = std::numeric_limits<double>::lowest();
  double y_lo = x_lo, y_hi = x_hi;
  for (const auto& s : series) {
    for (double v : s.x) { x_lo = std::min(x_lo, v); x_hi = std::max(x_hi, v); }
    for (double v : s.y) {
      if (std::isfinite(v)) { y_lo = std::min(y_lo, v); y_hi = std::max(y_hi, v); }
    }
  }
  if (series.empty() || !(x_hi >= x_lo)) { x_lo = 0; x_hi = 1; }
  if (!(y_hi >= y_lo)) { y_lo = 0; y_hi = 1; }
  double x_step = 1, y_step = 1;
  nice_limits(x_lo, x_hi, x_step);
  nice_limits(y_lo, y_hi, y_step);

  const auto map_x = [&](double v) { return left + (v - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto map_y = [&](double v) { return top + (y_hi - v) / (y_hi - y_lo) * plot_h; };

  std::ostringstream s;
  s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
    << "' viewBox='0 0 " << width << " " << height << "'>\n";
  s << "<rect width='" << width << "' height='" << height << "' fill='white'/>\n";
  s << "<text x='" << width / 2 << "' y='20' text-anchor='middle' font-size='14' "
       "font-family='sans-serif'>" << title << "</text>\n";

  for (double v = y_lo; v <= y_hi + 1e-9 * y_step; v += y_step) {
    const double y = map_y(v);
    s << "<line x1='" << fmt(left) << "' y1='" << fmt(y) << "' x2='" << fmt(left + plot_w)
      << "' y2='" << fmt(y) << "' stroke='#dddddd' stroke-width='1'/>\n";
    s << "<text x='" << fmt(left - 6) << "' y='" << fmt(y + 4)
      << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << fmt(v) << "</text>\n";
  }
  for (double v = x_lo; v <= x_hi + 1e-9 * x_step; v += x_step) {
    const double x = map_x(v);
    s << "<line x1='" << fmt(x) << "' y1='" << fmt(top + plot_h) << "' x2='" << fmt(x) << "' y2='"
      << fmt(top + plot_h + 4) << "' stroke='black' stroke-width='1'/>\n";
    s << "<text x='" << fmt(x) << "' y='" << fmt(top + plot_h + 18)
      << "' text-anchor='middle' font-size='11' font-family='sans-serif'>" << fmt(v) << "</text>\n";
  }
  s << "<rect x='" << fmt(left) << "' y='" << fmt(top) << "' width='" << fmt(plot_w)
    << "' height='" << fmt(plot_h) << "' fill='none' stroke='black' stroke-width='1'/>\n";
  s << "<text x='" << fmt(left + plot_w / 2) << "' y='" << fmt(top + plot_h + 36)
    << "' text-anchor='middle' font-size='12' font-family='sans-serif'>" << x_label << "</text>\n";
  s << "<text x='14' y='" << fmt(top + plot_h / 2)
    << "' text-anchor='middle' font-size='12' font-family='sans-serif' transform='rotate(-90 14 "
    << fmt(top + plot_h / 2) << ")'>" << y_label << "</text>\n";

  double legend_y = top + 12;
  for (const auto& sr : series) {
    s << "<polyline fill='none' stroke='" << sr.color << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      double yv = sr.y[i];
      if (!std::isfinite(yv)) yv = y_hi;
      s << fmt(map_x(sr.x[i])) << "," << fmt(map_y(yv)) << " ";
    }
    s << "'/>\n";
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      double yv = sr.y[i];
      if (!std::isfinite(yv)) yv = y_hi;
      s << "<circle cx='" << fmt(map_x(sr.x[i])) << "' cy='" << fmt(map_y(yv))
        << "' r='2.5' fill='" << sr.color << "'/>\n";
    }
    s << "<line x1='" << fmt(left + plot_w - 120) << "' y1='" << fmt(legend_y) << "' x2='"
      << fmt(left + plot_w - 96) << "' y2='" << fmt(legend_y) << "' stroke='" << sr.color
      << "' stroke-width='1.5'/>\n";
    s << "<text x='" << fmt(left + plot_w - 90) << "' y='" << fmt(legend_y + 4)
      << "' font-size='11' font-family='sans-serif'>" << sr.label << "</text>\n";
    legend_y += 16;
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace eqsamp::svg
