#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hjcrit/csv.hpp"

namespace hjcrit {

struct PlotOptions {
  std::vector<std::string> columns;
  bool log_y = false;
  std::optional<double> reference;  ///< horizontal line, e.g. M★ for rescaled_mass
  std::string reference_label = "M*";
};

/// 960×600 SVG of τ against the chosen columns. Deterministic: same table and
/// options give the same bytes. Throws InvalidArgument on an empty table, a
/// missing column, or a nonpositive value on a log axis (naming the row).
std::string emit_plot(const CsvTable& table, const PlotOptions& options);

/// Renders first, writes only on success.
void write_plot(const std::string& path, const CsvTable& table, const PlotOptions& options);

}  // namespace hjcrit
