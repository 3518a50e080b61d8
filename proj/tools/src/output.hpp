#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spinlimit::cli {

/// Round-trip decimal form, 17 significant digits, '.' separator.
std::string num(double v);

/// Writes @p text to @p path, or to stdout when no path is given.
void write_output(const std::optional<std::string>& path, const std::string& text);

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  /// Embedded verbatim as an XML comment at the top of the document.
  std::string comment;
};

/// Line chart in a fixed 800x600 viewBox, one polyline per series.
std::string svg_line_chart(const ChartSpec& spec, const std::vector<Series>& series);

}  // namespace spinlimit::cli
