#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>

#include "cli/csv.hpp"

namespace talbot::cli {

namespace {

constexpr double W = 800.0, H = 500.0;
constexpr double ML = 70.0, MR = 20.0, MT = 40.0, MB = 50.0;

const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::vector<double>& x,
                          const std::vector<std::string>& series_names,
                          const std::vector<std::vector<double>>& series) {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (!x.empty()) {
    xmin = *std::min_element(x.begin(), x.end());
    xmax = *std::max_element(x.begin(), x.end());
  }
  bool first = true;
  for (const auto& s : series)
    for (const double v : s) {
      if (!std::isfinite(v)) continue;
      if (first) {
        ymin = ymax = v;
        first = false;
      } else {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  const auto px = [&](double v) { return ML + (v - xmin) / (xmax - xmin) * (W - ML - MR); };
  const auto py = [&](double v) { return H - MB - (v - ymin) / (ymax - ymin) * (H - MT - MB); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
  out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + title +
         "</text>\n";
  // axes
  out += "<polyline fill=\"none\" stroke=\"#000\" points=\"" + format_double(ML) + "," +
         format_double(MT) + " " + format_double(ML) + "," + format_double(H - MB) + " " +
         format_double(W - MR) + "," + format_double(H - MB) + "\"/>\n";
  out += "<text x=\"400\" y=\"490\" text-anchor=\"middle\" font-size=\"12\">" + x_label +
         "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    out += "<text x=\"" + format_double(px(xv)) + "\" y=\"" + format_double(H - MB + 16.0) +
           "\" text-anchor=\"middle\" font-size=\"10\">" + format_double(xv) + "</text>\n";
    out += "<text x=\"" + format_double(ML - 6.0) + "\" y=\"" + format_double(py(yv) + 3.0) +
           "\" text-anchor=\"end\" font-size=\"10\">" + format_double(yv) + "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 6];
    out += std::string("<polyline fill=\"none\" stroke=\"") + color + "\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < series[s].size(); ++i) {
      if (!std::isfinite(series[s][i])) continue;
      out += format_double(px(x[i])) + "," + format_double(py(series[s][i])) + " ";
    }
    out += "\"/>\n";
    if (s < series_names.size())
      out += std::string("<text x=\"") + format_double(W - MR - 10.0) + "\" y=\"" +
             format_double(MT + 16.0 * (static_cast<double>(s) + 1.0)) +
             "\" text-anchor=\"end\" font-size=\"11\" fill=\"" + color + "\">" +
             series_names[s] + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace talbot::cli
