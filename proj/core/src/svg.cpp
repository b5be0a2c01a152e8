#include "hoco/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hoco {

namespace {
const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string tick_label(double log10v) {
  const double r = std::round(log10v);
  if (std::abs(log10v - r) < 1e-9) {
    std::ostringstream os;
    os << "1e" << static_cast<long>(r);
    return os.str();
  }
  return fmt(std::pow(10.0, log10v));
}
}  // namespace

std::string svg_loglog(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<SvgSeries>& series,
                       std::optional<std::pair<double, double>> fitline) {
  double lx_min = 0, lx_max = 0, ly_min = 0, ly_max = 0;
  bool first = true;
  for (const auto& s : series)
    for (const auto& [x, y] : s.pts) {
      if (!(x > 0.0) || !(y > 0.0))
        throw std::invalid_argument("svg_loglog: coordinates must be positive");
      const double lx = std::log10(x), ly = std::log10(y);
      if (first) { lx_min = lx_max = lx; ly_min = ly_max = ly; first = false; }
      lx_min = std::min(lx_min, lx); lx_max = std::max(lx_max, lx);
      ly_min = std::min(ly_min, ly); ly_max = std::max(ly_max, ly);
    }
  if (first) throw std::invalid_argument("svg_loglog: no data");
  if (lx_max - lx_min < 1e-12) { lx_min -= 0.5; lx_max += 0.5; }
  if (ly_max - ly_min < 1e-12) { ly_min -= 0.5; ly_max += 0.5; }
  const double pad_x = 0.04 * (lx_max - lx_min), pad_y = 0.06 * (ly_max - ly_min);
  lx_min -= pad_x; lx_max += pad_x; ly_min -= pad_y; ly_max += pad_y;

  const double W = 640, Hh = 440, L = 70, R = 20, Tm = 36, B = 52;
  const double pw = W - L - R, ph = Hh - Tm - B;
  const auto X = [&](double x) { return L + pw * (std::log10(x) - lx_min) / (lx_max - lx_min); };
  const auto Y = [&](double y) { return Tm + ph * (1.0 - (std::log10(y) - ly_min) / (ly_max - ly_min)); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hh
     << "\" viewBox=\"0 0 " << W << " " << Hh << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << Hh << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\" font-weight=\"bold\">" << title << "</text>\n";

  // frame
  os << "<rect x=\"" << L << "\" y=\"" << Tm << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"#333\"/>\n";

  // decade grid + labels
  for (long e = static_cast<long>(std::ceil(lx_min)); e <= static_cast<long>(std::floor(lx_max)); ++e) {
    const double px = L + pw * (e - lx_min) / (lx_max - lx_min);
    os << "<line x1=\"" << px << "\" y1=\"" << Tm << "\" x2=\"" << px << "\" y2=\"" << Tm + ph
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << px << "\" y=\"" << Tm + ph + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(e) << "</text>\n";
  }
  for (long e = static_cast<long>(std::ceil(ly_min)); e <= static_cast<long>(std::floor(ly_max)); ++e) {
    const double py = Tm + ph * (1.0 - (e - ly_min) / (ly_max - ly_min));
    os << "<line x1=\"" << L << "\" y1=\"" << py << "\" x2=\"" << L + pw << "\" y2=\"" << py
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(e) << "</text>\n";
  }
  os << "<text x=\"" << L + pw / 2 << "\" y=\"" << Hh - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xlabel
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << Tm + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
     << Tm + ph / 2 << ")\">" << ylabel << "</text>\n";

  if (fitline) {
    const auto [slope, intercept] = *fitline;
    const double x0 = std::pow(10.0, lx_min + pad_x), x1 = std::pow(10.0, lx_max - pad_x);
    const double y0 = std::exp(intercept) * std::pow(x0, slope);
    const double y1 = std::exp(intercept) * std::pow(x1, slope);
    os << "<line x1=\"" << X(x0) << "\" y1=\"" << Y(y0) << "\" x2=\"" << X(x1) << "\" y2=\""
       << Y(y1) << "\" stroke=\"#555\" stroke-dasharray=\"6 4\"/>\n";
    os << "<text x=\"" << L + pw - 8 << "\" y=\"" << Tm + 16
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">slope "
       << fmt(slope) << "</text>\n";
  }

  int ci = 0;
  double legend_y = Tm + 14;
  for (const auto& s : series) {
    const char* color = kPalette[ci % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& [x, y] : s.pts) os << fmt(X(x)) << "," << fmt(Y(y)) << " ";
    os << "\"/>\n";
    for (const auto& [x, y] : s.pts)
      os << "<circle cx=\"" << fmt(X(x)) << "\" cy=\"" << fmt(Y(y)) << "\" r=\"2.6\" fill=\""
         << color << "\"/>\n";
    if (!s.label.empty()) {
      os << "<rect x=\"" << L + 10 << "\" y=\"" << legend_y - 8
         << "\" width=\"12\" height=\"4\" fill=\"" << color << "\"/>\n";
      os << "<text x=\"" << L + 28 << "\" y=\"" << legend_y
         << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
      legend_y += 15;
    }
    ++ci;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hoco
