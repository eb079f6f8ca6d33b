#include "besr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "besr/csvio.hpp"

namespace besr {

namespace {

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  std::vector<double> ticks; // in transformed coordinates

  double transform(double v) const { return log ? std::log10(v) : v; }

  void fit(double vlo, double vhi) {
    lo = vlo;
    hi = vhi;
    if (!(hi > lo)) {
      const double pad = std::abs(lo) > 0 ? 0.1 * std::abs(lo) : 1.0;
      lo -= pad;
      hi += pad;
    }
    ticks.clear();
    if (log) {
      const int d0 = static_cast<int>(std::floor(lo));
      const int d1 = static_cast<int>(std::ceil(hi));
      for (int d = d0; d <= d1; ++d)
        if (d >= lo - 1e-9 && d <= hi + 1e-9) ticks.push_back(d);
      if (ticks.size() < 2) {
        ticks = {lo, hi};
      }
    } else {
      const double span = hi - lo;
      const double raw = span / 5.0;
      const double mag = std::pow(10.0, std::floor(std::log10(raw)));
      double step = mag;
      for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
          step = m * mag;
          break;
        }
      const double first = std::ceil(lo / step) * step;
      for (double v = first; v <= hi + 0.5 * step; v += step)
        ticks.push_back(v);
    }
  }

  std::string tick_label(double t) const {
    if (!log) return fmt(t);
    if (t == std::floor(t)) return "1e" + fmt(t);
    return fmt(std::pow(10.0, t));
  }
};

} // namespace

void write_svg_plot(const std::string& path, const SvgOptions& opts,
                    const std::vector<SvgSeries>& series) {
  const double W = opts.width, H = opts.height;
  const double ml = 74, mr = 18, mt = 34, mb = 52;

  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const auto& s : series)
    for (const auto& pt : s.pts) {
      double x = pt[0], y = pt[1];
      if (opts.logx && !(x > 0)) continue;
      if (opts.logy && !(y > 0)) continue;
      x = opts.logx ? std::log10(x) : x;
      y = opts.logy ? std::log10(y) : y;
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  if (!std::isfinite(xlo)) {
    xlo = 0;
    xhi = 1;
    ylo = 0;
    yhi = 1;
  }

  Axis ax, ay;
  ax.log = opts.logx;
  ay.log = opts.logy;
  ax.fit(xlo, xhi);
  ay.fit(ylo, yhi);

  auto px = [&](double x) {
    return ml + (ax.transform(x) - ax.lo) / (ax.hi - ax.lo) * (W - ml - mr);
  };
  auto py = [&](double y) {
    return H - mb - (ay.transform(y) - ay.lo) / (ay.hi - ay.lo) * (H - mt - mb);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) +
         "\" height=\"" + fmt(H) + "\" viewBox=\"0 0 " + fmt(W) + " " + fmt(H) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";

  if (!opts.title.empty())
    svg += "<text x=\"" + fmt(W / 2) + "\" y=\"20\" text-anchor=\"middle\" "
           "font-size=\"14\">" + escape(opts.title) + "</text>\n";

  // frame
  svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" +
         fmt(W - ml - mr) + "\" height=\"" + fmt(H - mt - mb) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks) {
    const double x = ml + (t - ax.lo) / (ax.hi - ax.lo) * (W - ml - mr);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" +
           fmt(x) + "\" y2=\"" + fmt(H - mb + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(H - mb + 18) +
           "\" text-anchor=\"middle\">" + escape(ax.tick_label(t)) + "</text>\n";
  }
  for (double t : ay.ticks) {
    const double y = H - mb - (t - ay.lo) / (ay.hi - ay.lo) * (H - mt - mb);
    svg += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(ml) + "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\">" + escape(ay.tick_label(t)) + "</text>\n";
  }

  if (!opts.xlabel.empty())
    svg += "<text x=\"" + fmt(ml + (W - ml - mr) / 2) + "\" y=\"" +
           fmt(H - 12) + "\" text-anchor=\"middle\">" + escape(opts.xlabel) +
           "</text>\n";
  if (!opts.ylabel.empty())
    svg += "<text x=\"16\" y=\"" + fmt(mt + (H - mt - mb) / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt(mt + (H - mt - mb) / 2) + ")\">" + escape(opts.ylabel) +
           "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* color = palette[ci % 6];
    if (s.markers) {
      for (const auto& pt : s.pts) {
        if ((opts.logx && !(pt[0] > 0)) || (opts.logy && !(pt[1] > 0))) continue;
        svg += "<circle cx=\"" + fmt(px(pt[0])) + "\" cy=\"" + fmt(py(pt[1])) +
               "\" r=\"3\" fill=\"" + color + "\"/>\n";
      }
    } else {
      std::string d;
      bool pen_up = true;
      for (const auto& pt : s.pts) {
        if ((opts.logx && !(pt[0] > 0)) || (opts.logy && !(pt[1] > 0)) ||
            !std::isfinite(pt[0]) || !std::isfinite(pt[1])) {
          pen_up = true;
          continue;
        }
        d += (pen_up ? "M" : "L") + fmt(px(pt[0])) + " " + fmt(py(pt[1]));
        pen_up = false;
      }
      if (!d.empty())
        svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
    }
    ++ci;
  }

  // legend, top right inside the frame
  double ly = mt + 14;
  ci = 0;
  for (const auto& s : series) {
    if (!s.label.empty()) {
      const char* color = palette[ci % 6];
      const double lx = W - mr - 150;
      svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
             fmt(lx + 22) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + color +
             "\" stroke-width=\"2\"/>\n";
      svg += "<text x=\"" + fmt(lx + 28) + "\" y=\"" + fmt(ly) + "\">" +
             escape(s.label) + "</text>\n";
      ly += 16;
    }
    ++ci;
  }

  svg += "</g>\n</svg>\n";
  write_text_atomic(path, svg);
}

} // namespace besr
