#include "hjcrit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace hjcrit {

namespace {

constexpr int kWidth = 960;
constexpr int kHeight = 600;
constexpr double kLeft = 90, kRight = 180, kTop = 40, kBottom = 60;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(const char* pattern, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::string emit_plot(const CsvTable& table, const PlotOptions& options) {
  if (table.rows.empty()) throw InvalidArgument("plot: CSV has no data rows");
  if (options.columns.empty()) throw InvalidArgument("plot: no columns requested");
  const std::size_t tau_col = table.column("tau");
  std::vector<std::size_t> cols;
  for (const auto& c : options.columns) cols.push_back(table.column(c));

  const auto ty = [&](double v) { return options.log_y ? std::log10(v) : v; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (!row[tau_col]) continue;
    x0 = std::min(x0, *row[tau_col]);
    x1 = std::max(x1, *row[tau_col]);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto& v = row[cols[k]];
      if (!v) continue;
      if (options.log_y && !(*v > 0.0)) {
        std::ostringstream msg;
        msg << "plot: log axis needs positive values; column '" << options.columns[k] << "' is "
            << fmt("%.17g", *v) << " in data row " << r + 1 << " (tau = " << fmt("%.17g", *row[tau_col])
            << ")";
        throw InvalidArgument(msg.str());
      }
      y0 = std::min(y0, ty(*v));
      y1 = std::max(y1, ty(*v));
    }
  }
  if (!std::isfinite(y0)) throw InvalidArgument("plot: requested columns have no values");
  if (options.reference && (!options.log_y || *options.reference > 0.0)) {
    y0 = std::min(y0, ty(*options.reference));
    y1 = std::max(y1, ty(*options.reference));
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  const auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"monospace\">\n";
  s << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0;
    const double yv = y0 + (y1 - y0) * i / 5.0;
    s << "<line x1=\"" << fmt("%.2f", px(xv)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << fmt("%.2f", px(xv))
      << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fmt("%.2f", px(xv)) << "\" y=\"" << kTop + ph + 20
      << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt("%.4g", xv) << "</text>\n";
    const std::string label = options.log_y ? "1e" + fmt("%.3g", yv) : fmt("%.4g", yv);
    s << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt("%.2f", py(yv)) << "\" x2=\"" << kLeft << "\" y2=\""
      << fmt("%.2f", py(yv)) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt("%.2f", py(yv) + 4)
      << "\" font-size=\"12\" text-anchor=\"end\">" << label << "</text>\n";
  }
  s << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
    << "\" font-size=\"14\" text-anchor=\"middle\">tau</text>\n";

  for (std::size_t k = 0; k < cols.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& row : table.rows) {
      if (!row[tau_col] || !row[cols[k]]) continue;
      s << (first ? "" : " ") << fmt("%.2f", px(*row[tau_col])) << "," << fmt("%.2f", py(ty(*row[cols[k]])));
      first = false;
    }
    s << "\"/>\n";
    const double ly = kTop + 20 + 20 * static_cast<double>(k);
    s << "<line x1=\"" << kLeft + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 40 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << kLeft + pw + 45 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << options.columns[k]
      << "</text>\n";
  }
  if (options.reference && (!options.log_y || *options.reference > 0.0)) {
    const double yr = py(ty(*options.reference));
    s << "<line x1=\"" << kLeft << "\" y1=\"" << fmt("%.2f", yr) << "\" x2=\"" << kLeft + pw << "\" y2=\""
      << fmt("%.2f", yr) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    s << "<text x=\"" << kLeft + pw + 15 << "\" y=\"" << fmt("%.2f", yr + 4) << "\" font-size=\"12\">"
      << options.reference_label << " = " << fmt("%.6g", *options.reference) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void write_plot(const std::string& path, const CsvTable& table, const PlotOptions& options) {
  const std::string svg = emit_plot(table, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << svg;
}

}  // namespace hjcrit
