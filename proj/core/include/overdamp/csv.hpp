#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace overdamp::io {

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

/// CSV table whose first line is "# " followed by a one-line JSON provenance record.
struct CsvTable {
  std::string provenance;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; DomainError when absent.
  std::size_t column(std::string_view name) const;
  /// Numeric view of one column; DomainError on a non-numeric cell.
  std::vector<double> numbers(std::string_view name) const;
};

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);

} // namespace overdamp::io
