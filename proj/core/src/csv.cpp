#include "overdamp/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "overdamp/errors.hpp"

namespace overdamp::io {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw NumericalError("format_number: conversion failed");
  }
  return std::string(buf.data(), end);
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw DomainError("CsvTable: no column named '" + std::string(name) + "'");
}

std::vector<double> CsvTable::numbers(std::string_view name) const {
  const std::size_t col = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const std::string& cell = row.at(col);
    if (cell == "nan") {
      out.push_back(std::nan(""));
      continue;
    }
    if (cell == "inf" || cell == "-inf") {
      out.push_back(cell[0] == '-' ? -INFINITY : INFINITY);
      continue;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
      throw DomainError("CsvTable: non-numeric cell '" + cell + "' in column '" +
                        std::string(name) + "'");
    }
    out.push_back(v);
  }
  return out;
}

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

} // namespace

void write_csv(std::ostream& out, const CsvTable& table) {
  out << "# " << table.provenance << '\n';
  write_row(out, table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw DomainError("write_csv: row width does not match the header");
    }
    write_row(out, row);
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw DomainError("read_csv: missing '# ' provenance line");
  }
  table.provenance = line.substr(2);
  if (!std::getline(in, line)) {
    throw DomainError("read_csv: missing header line");
  }
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw DomainError("read_csv: row width does not match the header");
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

} // namespace overdamp::io
