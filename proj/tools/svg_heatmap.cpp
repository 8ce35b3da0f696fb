#include "svg_heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace crowdbound::cli {

namespace {

struct Color {
  double r, g, b;
};

// Diverging blue -> white -> red scale centered at 0.5.
constexpr Color kLow{0.129, 0.400, 0.675};   // #2166ac
constexpr Color kMid{0.969, 0.969, 0.969};   // #f7f7f7
constexpr Color kHigh{0.698, 0.094, 0.169};  // #b2182b

std::string cell_color(double value) {
  const double v = std::clamp(value, 0.0, 1.0);
  const double t = v < 0.5 ? v / 0.5 : (v - 0.5) / 0.5;
  const Color& a = v < 0.5 ? kLow : kMid;
  const Color& b = v < 0.5 ? kMid : kHigh;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(255.0 * (a.r + (b.r - a.r) * t))),
                static_cast<int>(std::lround(255.0 * (a.g + (b.g - a.g) * t))),
                static_cast<int>(std::lround(255.0 * (a.b + (b.b - a.b) * t))));
  return buf;
}

void append_fmt(std::string& out, const char* fmt, auto... args) {
  char buf[512];
  const int len = std::snprintf(buf, sizeof buf, fmt, args...);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::string render_phase_svg(const PhaseGrid& grid, const std::string& title) {
  const std::size_t n_mu = grid.mu_axis.size();
  const std::size_t n_sigma = grid.sigma_axis.size();

  constexpr double kPlotW = 520.0;
  constexpr double kPlotH = 440.0;
  constexpr double kLeft = 76.0;
  constexpr double kTop = 48.0;
  constexpr double kBottom = 56.0;
  constexpr double kBarW = 18.0;
  constexpr double kBarGap = 28.0;
  constexpr double kRight = kBarGap + kBarW + 58.0;
  const double width = kLeft + kPlotW + kRight;
  const double height = kTop + kPlotH + kBottom;

  const double cell_w = kPlotW / static_cast<double>(n_mu);
  const double cell_h = kPlotH / static_cast<double>(n_sigma);

  std::string svg;
  svg.reserve(n_mu * n_sigma * 80 + 4096);
  append_fmt(svg,
             "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
             "viewBox=\"0 0 %.0f %.0f\">\n",
             width, height, width, height);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  append_fmt(svg,
             "<text x=\"%.1f\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
             "text-anchor=\"middle\">%s</text>\n",
             kLeft + kPlotW / 2.0, title.c_str());

  // cells: mu left to right, sigma bottom to top
  for (std::size_t i = 0; i < n_mu; ++i) {
    for (std::size_t j = 0; j < n_sigma; ++j) {
      const double x = kLeft + cell_w * static_cast<double>(i);
      const double y = kTop + kPlotH - cell_h * static_cast<double>(j + 1);
      append_fmt(svg, "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\"/>\n",
                 x, y, cell_w + 0.5, cell_h + 0.5, cell_color(grid.at(i, j).value).c_str());
    }
  }

  append_fmt(svg,
             "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
             "stroke=\"black\" stroke-width=\"1\"/>\n",
             kLeft, kTop, kPlotW, kPlotH);

  // axis ticks: five per axis
  for (int k = 0; k < 5; ++k) {
    const double f = static_cast<double>(k) / 4.0;
    const double mu = grid.mu_axis.front() + f * (grid.mu_axis.back() - grid.mu_axis.front());
    const double sigma =
        grid.sigma_axis.front() + f * (grid.sigma_axis.back() - grid.sigma_axis.front());
    const double x = kLeft + f * kPlotW;
    const double y = kTop + kPlotH - f * kPlotH;
    append_fmt(svg, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
               x, kTop + kPlotH, x, kTop + kPlotH + 5.0);
    append_fmt(svg,
               "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
               "text-anchor=\"middle\">%.3g</text>\n",
               x, kTop + kPlotH + 20.0, mu);
    append_fmt(svg, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
               kLeft - 5.0, y, kLeft, y);
    append_fmt(svg,
               "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
               "text-anchor=\"end\">%.3g</text>\n",
               kLeft - 9.0, y + 4.0, sigma);
  }

  append_fmt(svg,
             "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"14\" "
             "text-anchor=\"middle\">μ</text>\n",
             kLeft + kPlotW / 2.0, kTop + kPlotH + 42.0);
  append_fmt(svg,
             "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"14\" "
             "text-anchor=\"middle\" transform=\"rotate(-90 %.1f %.1f)\">σ</text>\n",
             kLeft - 48.0, kTop + kPlotH / 2.0, kLeft - 48.0, kTop + kPlotH / 2.0);

  // color bar, 0 at the bottom to 1 at the top
  const double bar_x = kLeft + kPlotW + kBarGap;
  constexpr int kBarSteps = 64;
  for (int k = 0; k < kBarSteps; ++k) {
    const double v = (static_cast<double>(k) + 0.5) / kBarSteps;
    const double y = kTop + kPlotH * (1.0 - static_cast<double>(k + 1) / kBarSteps);
    append_fmt(svg, "<rect x=\"%.1f\" y=\"%.2f\" width=\"%.1f\" height=\"%.2f\" fill=\"%s\"/>\n",
               bar_x, y, kBarW, kPlotH / kBarSteps + 0.5, cell_color(v).c_str());
  }
  append_fmt(svg,
             "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
             "stroke=\"black\" stroke-width=\"1\"/>\n",
             bar_x, kTop, kBarW, kPlotH);
  for (int k = 0; k <= 2; ++k) {
    const double v = static_cast<double>(k) / 2.0;
    const double y = kTop + kPlotH * (1.0 - v);
    append_fmt(svg,
               "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\">%.1f</text>\n",
               bar_x + kBarW + 6.0, y + 4.0, v);
  }
  append_fmt(svg,
             "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
             "text-anchor=\"middle\" transform=\"rotate(-90 %.1f %.1f)\">Ω estimate</text>\n",
             bar_x + kBarW + 44.0, kTop + kPlotH / 2.0, bar_x + kBarW + 44.0,
             kTop + kPlotH / 2.0);

  svg += "</svg>\n";
  return svg;
}

}  // namespace crowdbound::cli
