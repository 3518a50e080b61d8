#include "output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spinlimit/errors.hpp"

namespace spinlimit::cli {

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// XML comments must not contain "--".
std::string comment_safe(std::string s) {
  for (std::size_t p = s.find("--"); p != std::string::npos; p = s.find("--")) s.replace(p, 2, "- -");
  return s;
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(*path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open '" + *path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw ValidationError("failed writing '" + *path + "'");
}

std::string svg_line_chart(const ChartSpec& spec, const std::vector<Series>& series) {
  constexpr double W = 800, H = 600;
  constexpr double left = 80, right = 600, top = 60, bottom = 530;

  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      if (std::isfinite(y)) {
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  if (x0 > x1) x0 = 0, x1 = 1;
  if (y0 > y1) y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-9) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
  const auto py = [&](double y) { return bottom - (y - y0) / (y1 - y0) * (bottom - top); };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<!-- " << comment_safe(spec.comment) << " -->\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << ' ' << H
    << "\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fixed2((left + right) / 2) << "\" y=\"30\" text-anchor=\"middle\" font-size=\"18\">"
    << xml_escape(spec.title) << "</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\""
    << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double yv = y0 + (y1 - y0) * k / 4.0;
    o << "<line x1=\"" << fixed2(px(xv)) << "\" y1=\"" << bottom << "\" x2=\"" << fixed2(px(xv))
      << "\" y2=\"" << bottom + 6 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fixed2(px(xv)) << "\" y=\"" << bottom + 22
      << "\" text-anchor=\"middle\" font-size=\"13\">" << tick_label(xv) << "</text>\n";
    o << "<line x1=\"" << left - 6 << "\" y1=\"" << fixed2(py(yv)) << "\" x2=\"" << left
      << "\" y2=\"" << fixed2(py(yv)) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << left - 10 << "\" y=\"" << fixed2(py(yv) + 4)
      << "\" text-anchor=\"end\" font-size=\"13\">" << tick_label(yv) << "</text>\n";
  }
  o << "<text x=\"" << fixed2((left + right) / 2) << "\" y=\"" << bottom + 50
    << "\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(spec.x_label) << "</text>\n";
  o << "<text x=\"22\" y=\"" << fixed2((top + bottom) / 2) << "\" text-anchor=\"middle\" font-size=\"15\" "
    << "transform=\"rotate(-90 22 " << fixed2((top + bottom) / 2) << ")\">" << xml_escape(spec.y_label)
    << "</text>\n";

  std::size_t colour = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* stroke = s.dashed ? "black" : kPalette[colour++ % kPalette.size()];
    o << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.8\"";
    if (s.dashed) o << " stroke-dasharray=\"6 4\"";
    o << " points=\"";
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(y)) continue;
      o << (first ? "" : " ") << fixed2(px(x)) << ',' << fixed2(py(y));
      first = false;
    }
    o << "\"/>\n";
    const double ly = top + 10 + 22.0 * static_cast<double>(i);
    o << "<line x1=\"615\" y1=\"" << fixed2(ly) << "\" x2=\"645\" y2=\"" << fixed2(ly) << "\" stroke=\""
      << stroke << "\" stroke-width=\"1.8\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    o << "<text x=\"652\" y=\"" << fixed2(ly + 4) << "\" font-size=\"13\">" << xml_escape(s.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace spinlimit::cli
