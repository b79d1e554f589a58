#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hjcrit/physical.hpp"
#include "hjcrit/similarity.hpp"

namespace hjcrit {

inline constexpr std::array<std::string_view, 11> kCsvColumns = {
    "tau", "t", "mass", "l1", "l2", "linf", "h1m", "dissipation", "omega_ratio", "manifold_remainder",
    "rescaled_mass"};

/// One output row; t is always e^τ - 1, empty optionals become empty cells.
struct CsvRow {
  double tau = 0.0;
  std::optional<double> mass, l1, l2, linf, h1m, dissipation, omega_ratio, manifold_remainder,
      rescaled_mass;
};

CsvRow to_row(const DiagnosticsRecord& r);
/// Physical records carry τ = ln(1+t), mass, l1 and linf only.
CsvRow to_row(const PhysicalRecord& r);

/// %.17g numbers, LF line endings, header row.
std::string format_csv(const std::vector<CsvRow>& rows);
void write_csv(const std::string& path, const std::vector<CsvRow>& rows);

/// Parsed CSV with empty cells kept as nullopt.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;

  /// Index of a column; throws InvalidArgument naming the missing column.
  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(std::string_view text, const std::string& source = "<csv>");
CsvTable read_csv(const std::string& path);

}  // namespace hjcrit
