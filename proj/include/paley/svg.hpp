#pragma once
// Minimal SVG line plots for sweep and per-block diagnostics. CSV remains the
// canonical machine output; these are quick-look charts.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace paley::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

/// Log-log polyline chart. Non-positive values are dropped.
inline void write_loglog(const std::string& path, const std::string& title,
                         const std::vector<Series>& series) {
  const int W = 720, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] <= 0.0 || s.y[i] <= 0.0) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  if (!(xhi > 0.0 && yhi > 0.0)) return;
  if (xlo == xhi) xhi = xlo * 2.0;
  if (ylo == yhi) yhi = ylo * 2.0;
  auto px = [&](double x) {
    return ML + (std::log10(x) - std::log10(xlo)) / (std::log10(xhi) - std::log10(xlo)) * (W - ML - MR);
  };
  auto py = [&](double y) {
    return H - MB - (std::log10(y) - std::log10(ylo)) / (std::log10(yhi) - std::log10(ylo)) * (H - MT - MB);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-family='sans-serif' font-size='16'>"
     << title << "</text>\n";
  os << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='" << H - MB
     << "' stroke='black'/>\n";
  os << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
     << "' stroke='black'/>\n";
  // Decade ticks.
  for (int d = static_cast<int>(std::ceil(std::log10(xlo))); d <= std::floor(std::log10(xhi)); ++d) {
    const double x = px(std::pow(10.0, d));
    os << "<line x1='" << x << "' y1='" << H - MB << "' x2='" << x << "' y2='" << H - MB + 5
       << "' stroke='black'/><text x='" << x << "' y='" << H - MB + 20
       << "' text-anchor='middle' font-family='sans-serif' font-size='11'>1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(std::log10(ylo))); d <= std::floor(std::log10(yhi)); ++d) {
    const double y = py(std::pow(10.0, d));
    os << "<line x1='" << ML - 5 << "' y1='" << y << "' x2='" << ML << "' y2='" << y
       << "' stroke='black'/><text x='" << ML - 8 << "' y='" << y + 4
       << "' text-anchor='end' font-family='sans-serif' font-size='11'>1e" << d << "</text>\n";
  }
  int ci = 0;
  for (const auto& s : series) {
    os << "<polyline fill='none' stroke='" << colors[ci % 5] << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] <= 0.0 || s.y[i] <= 0.0) continue;
      os << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    os << "'/>\n";
    os << "<text x='" << W - MR - 10 << "' y='" << MT + 16 * (ci + 1)
       << "' text-anchor='end' font-family='sans-serif' font-size='12' fill='" << colors[ci % 5]
       << "'>" << s.label << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
}

}  // namespace paley::svg
