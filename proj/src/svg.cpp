#include "darboux/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace darboux {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 520;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

PlotSeries make_series(const std::string& label, const ComplexField& f, PlotComponent c,
                       const std::string& color, bool dashed, int max_points) {
  const int n = f.size();
  const int stride = std::max(1, n / max_points);
  const int m = (n + stride - 1) / stride;
  PlotSeries s;
  s.label = label;
  s.color = color;
  s.dashed = dashed;
  s.x.resize(m);
  s.y.resize(m);
  for (int j = 0, i = 0; i < n; i += stride, ++j) {
    s.x[j] = f.grid.x(i);
    switch (c) {
      case PlotComponent::Re: s.y[j] = f.values[i].real(); break;
      case PlotComponent::Im: s.y[j] = f.values[i].imag(); break;
      case PlotComponent::Abs: s.y[j] = std::abs(f.values[i]); break;
    }
  }
  return s;
}

void write_svg_plot(const std::string& path, const PlotSpec& plot) {
  if (plot.series.empty()) throw std::invalid_argument("write_svg_plot: no series");
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : plot.series) {
    xmin = std::min(xmin, s.x.minCoeff());
    xmax = std::max(xmax, s.x.maxCoeff());
    ymin = std::min(ymin, s.y.minCoeff());
    ymax = std::max(ymax, s.y.maxCoeff());
  }
  if (ymax - ymin < 1e-12) {
    ymax += 1.0;
    ymin -= 1.0;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double pw = kWidth - kMarginL - kMarginR;
  const double ph = kHeight - kMarginT - kMarginB;
  auto px = [&](double x) { return kMarginL + pw * (x - xmin) / (xmax - xmin); };
  auto py = [&](double y) { return kMarginT + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << plot.title << "</text>\n";

  // frame and ticks
  out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << kHeight - kMarginB + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(xv) << "</text>\n";
    out << "<text x=\"" << kMarginL - 8 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(yv)
        << "</text>\n";
  }
  if (ymin < 0.0 && ymax > 0.0)
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << py(0.0) << "\" x2=\""
        << kMarginL + pw << "\" y2=\"" << py(0.0) << "\" stroke=\"#bbb\"/>\n";
  out << "<text x=\"" << kMarginL + pw / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << plot.x_label << "</text>\n";

  for (const auto& s : plot.series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.3\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (int i = 0; i < s.x.size(); ++i)
      out << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
    out << "\"/>\n";
  }

  // legend
  int ly = kMarginT + 16;
  for (const auto& s : plot.series) {
    out << "<line x1=\"" << kMarginL + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << kMarginL + 44 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
        << "/>\n";
    out << "<text x=\"" << kMarginL + 50 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace darboux
