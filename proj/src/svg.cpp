#include "cmarl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmarl/errors.hpp"

namespace cmarl {

namespace {

constexpr double kWidth = 860, kHeight = 400;
constexpr double kLeft = 70, kRight = 180, kTop = 46, kBottom = 50;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Range {
  double lo = 0.0, hi = 1.0;
  double scale(double v, double span) const {
    if (hi == lo) return span * 0.5;
    return (v - lo) / (hi - lo) * span;
  }
};

void expand(Range& r, const std::vector<double>& vs, bool& first) {
  for (double v : vs) {
    if (!std::isfinite(v)) continue;
    if (first) {
      r.lo = r.hi = v;
      first = false;
    } else {
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  }
}

void chart_frame(std::ostringstream& out, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 const Range& xr, const Range& yr) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";
  out << "<g stroke=\"#333\" stroke-width=\"1\">"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + kPlotH << "\" x2=\"" << kLeft + kPlotW
      << "\" y2=\"" << kTop + kPlotH << "\"/>"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + kPlotH << "\"/></g>\n";
  // Min/mid/max ticks on both axes.
  for (int i = 0; i <= 2; ++i) {
    double f = i / 2.0;
    double xv = xr.lo + (xr.hi - xr.lo) * f;
    double yv = yr.lo + (yr.hi - yr.lo) * f;
    double x = kLeft + xr.scale(xv, kPlotW);
    double y = kTop + kPlotH - yr.scale(yv, kPlotH);
    out << "<text x=\"" << num(x) << "\" y=\"" << kTop + kPlotH + 18
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << tick(xv)
        << "</text>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << tick(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 12
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << x_label
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + kPlotH / 2
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 18 " << kTop + kPlotH / 2 << ")\">" << y_label
      << "</text>\n";
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<SvgSeries>& series) {
  Range xr, yr;
  bool fx = true, fy = true;
  for (const SvgSeries& s : series) {
    expand(xr, s.xs, fx);
    expand(yr, s.ys, fy);
    expand(yr, s.band_lo, fy);
    expand(yr, s.band_hi, fy);
  }

  std::ostringstream out;
  chart_frame(out, title, x_label, y_label, xr, yr);

  int legend_row = 0;
  for (const SvgSeries& s : series) {
    if (!s.band_lo.empty() && s.band_lo.size() == s.xs.size() &&
        s.band_hi.size() == s.xs.size()) {
      out << "<polygon fill=\"" << s.color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < s.xs.size(); ++i)
        out << num(kLeft + xr.scale(s.xs[i], kPlotW)) << ','
            << num(kTop + kPlotH - yr.scale(s.band_hi[i], kPlotH)) << ' ';
      for (std::size_t i = s.xs.size(); i-- > 0;)
        out << num(kLeft + xr.scale(s.xs[i], kPlotW)) << ','
            << num(kTop + kPlotH - yr.scale(s.band_lo[i], kPlotH)) << ' ';
      out << "\"/>\n";
    }
    if (!s.xs.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.xs.size(); ++i)
        out << num(kLeft + xr.scale(s.xs[i], kPlotW)) << ','
            << num(kTop + kPlotH - yr.scale(s.ys[i], kPlotH)) << ' ';
      out << "\"/>\n";
    }
    double ly = kTop + 10 + 18 * legend_row++;
    out << "<line x1=\"" << kLeft + kPlotW + 14 << "\" y1=\"" << num(ly) << "\" x2=\""
        << kLeft + kPlotW + 38 << "\" y2=\"" << num(ly) << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + kPlotW + 44 << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string bar_chart_svg(const std::string& title, const std::string& y_label,
                          const std::vector<std::string>& series_labels,
                          const std::vector<std::string>& series_colors,
                          const std::vector<BarGroup>& groups) {
  Range yr{0.0, 1.0};
  bool fy = true;
  for (const BarGroup& g : groups) expand(yr, g.values, fy);
  if (yr.lo > 0.0) yr.lo = 0.0;  // bars grow from zero

  Range xr{0.0, static_cast<double>(groups.empty() ? 1 : groups.size())};
  std::ostringstream out;
  chart_frame(out, title, "", y_label, xr, yr);

  const double group_w = groups.empty() ? kPlotW : kPlotW / groups.size();
  const std::size_t n_series = series_labels.size();
  const double bar_w = n_series ? group_w * 0.7 / static_cast<double>(n_series) : group_w;

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const BarGroup& g = groups[gi];
    double gx = kLeft + gi * group_w + group_w * 0.15;
    for (std::size_t si = 0; si < g.values.size() && si < n_series; ++si) {
      double h = yr.scale(g.values[si], kPlotH) - yr.scale(0.0, kPlotH);
      double y0 = kTop + kPlotH - yr.scale(g.values[si], kPlotH);
      out << "<rect x=\"" << num(gx + si * bar_w) << "\" y=\"" << num(y0) << "\" width=\""
          << num(bar_w * 0.92) << "\" height=\"" << num(h) << "\" fill=\""
          << series_colors[si % series_colors.size()] << "\"/>\n";
    }
    out << "<text x=\"" << num(gx + group_w * 0.35) << "\" y=\"" << kTop + kPlotH + 18
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << g.label
        << "</text>\n";
  }
  for (std::size_t si = 0; si < n_series; ++si) {
    double ly = kTop + 10 + 18 * static_cast<double>(si);
    out << "<rect x=\"" << kLeft + kPlotW + 14 << "\" y=\"" << num(ly - 8)
        << "\" width=\"12\" height=\"12\" fill=\"" << series_colors[si % series_colors.size()]
        << "\"/>\n";
    out << "<text x=\"" << kLeft + kPlotW + 32 << "\" y=\"" << num(ly + 2)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series_labels[si]
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace cmarl
