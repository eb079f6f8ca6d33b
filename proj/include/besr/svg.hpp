#pragma once

#include <array>
#include <string>
#include <vector>

namespace besr {

struct SvgSeries {
  std::string label;
  std::vector<std::array<double, 2>> pts;
  bool markers = false; // draw point circles instead of a line
};

struct SvgOptions {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  int width = 720, height = 480;
};

// minimal static plot: axes with ticks, optional decade scaling, polyline or
// marker series, legend. Output is self-contained and deterministic.
void write_svg_plot(const std::string& path, const SvgOptions& opts,
                    const std::vector<SvgSeries>& series);

} // namespace besr
