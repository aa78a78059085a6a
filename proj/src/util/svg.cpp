#include "dlab/util/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dlab/util/csv.hpp"

namespace dlab {

namespace {

constexpr double kW = 640, kH = 440, kL = 70, kR = 20, kT = 40, kB = 50;
constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#17becf"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0)) continue;
      xmin = std::min(xmin, std::log10(s.x[i]));
      xmax = std::max(xmax, std::log10(s.x[i]));
      ymin = std::min(ymin, std::log10(s.y[i]));
      ymax = std::max(ymax, std::log10(s.y[i]));
    }
  if (!(xmax >= xmin)) xmin = 0, xmax = 1;
  if (!(ymax >= ymin)) ymin = 0, ymax = 1;
  if (xmax - xmin < 1e-9) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-9) ymin -= 0.5, ymax += 0.5;
  const double padx = 0.05 * (xmax - xmin), pady = 0.05 * (ymax - ymin);
  xmin -= padx, xmax += padx, ymin -= pady, ymax += pady;

  auto px = [&](double lx) { return kL + (lx - xmin) / (xmax - xmin) * (kW - kL - kR); };
  auto py = [&](double ly) { return kH - kB - (ly - ymin) / (ymax - ymin) * (kH - kT - kB); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << esc(title) << "</text>\n";
  o << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\""
    << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e)
    o << "<text x=\"" << num(px(e)) << "\" y=\"" << kH - kB + 16
      << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
  for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax)); ++e)
    o << "<text x=\"" << kL - 6 << "\" y=\"" << num(py(e) + 4)
      << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">"
    << esc(xlabel) << "</text>\n";
  o << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kH / 2 << ")\">" << esc(ylabel) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* col = kColors[si % kColors.size()];
    std::vector<double> fx, fy;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0)) continue;
      fx.push_back(s.x[i]);
      fy.push_back(s.y[i]);
      o << "<circle cx=\"" << num(px(std::log10(s.x[i]))) << "\" cy=\""
        << num(py(std::log10(s.y[i]))) << "\" r=\"3.5\" fill=\"" << col << "\"/>\n";
    }
    std::string legend = s.label;
    if (s.annotate_fit && fx.size() >= 2) {
      const auto fit = fit_loglog(fx, fy);
      const double x0 = *std::min_element(fx.begin(), fx.end());
      const double x1 = *std::max_element(fx.begin(), fx.end());
      o << "<line x1=\"" << num(px(std::log10(x0))) << "\" y1=\""
        << num(py(std::log10(fit.predict(x0)))) << "\" x2=\"" << num(px(std::log10(x1)))
        << "\" y2=\"" << num(py(std::log10(fit.predict(x1)))) << "\" stroke=\"" << col
        << "\" stroke-dasharray=\"5,3\"/>\n";
      legend += " (slope " + format_double(std::round(fit.slope * 1000) / 1000) + ")";
    }
    o << "<text x=\"" << kL + 10 << "\" y=\"" << kT + 16 + 16 * si << "\" fill=\"" << col
      << "\">" << esc(legend) << "</text>\n";
  }
  o << "</svg>\n";
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << o.str();
}

}  // namespace dlab
