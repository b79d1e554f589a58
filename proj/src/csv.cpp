#include "hjcrit/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hjcrit {

CsvRow to_row(const DiagnosticsRecord& r) {
  CsvRow row;
  row.tau = r.tau;
  row.mass = r.mass;
  row.l1 = r.l1;
  row.l2 = r.l2;
  row.linf = r.linf;
  row.h1m = r.h1m;
  row.dissipation = r.dissipation;
  row.omega_ratio = r.omega_ratio;
  row.manifold_remainder = r.manifold_remainder;
  row.rescaled_mass = r.rescaled_mass;
  return row;
}

CsvRow to_row(const PhysicalRecord& r) {
  CsvRow row;
  row.tau = std::log1p(r.t);
  row.mass = r.mass;
  row.l1 = r.l1;
  row.linf = r.linf;
  return row;
}

namespace {

void put(std::string& out, const std::optional<double>& v) {
  out += ',';
  if (!v) return;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  out += buf;
}

}  // namespace

std::string format_csv(const std::vector<CsvRow>& rows) {
  std::string out;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) out += ',';
    out += kCsvColumns[i];
  }
  out += '\n';
  for (const CsvRow& r : rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", r.tau);
    out += buf;
    put(out, std::expm1(r.tau));
    for (const auto* v : {&r.mass, &r.l1, &r.l2, &r.linf, &r.h1m, &r.dissipation, &r.omega_ratio,
                          &r.manifold_remainder, &r.rescaled_mass}) {
      put(out, *v);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << format_csv(rows);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  std::string have;
  for (const auto& h : header) have += (have.empty() ? "" : ", ") + h;
  throw InvalidArgument("column '" + name + "' not in CSV (have: " + have + ")");
}

CsvTable parse_csv(std::string_view text, const std::string& source) {
  CsvTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (t.header.empty()) {
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw InvalidArgument(source + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(t.header.size()) + " cells, got " + std::to_string(cells.size()));
    }
    std::vector<std::optional<double>> row;
    for (const auto& c : cells) {
      if (c.empty()) {
        row.emplace_back();
        continue;
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != c.size()) {
        throw InvalidArgument(source + ":" + std::to_string(line_no) + ": not a number: " + c);
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path);
}

}  // namespace hjcrit
