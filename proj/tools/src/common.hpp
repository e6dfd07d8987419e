#pragma once

#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "overdamp/csv.hpp"

namespace overdamp::cli {

using Json = nlohmann::ordered_json;

struct Session {
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  std::string output;
  std::string format;
  std::string config;
  bool deterministic = false;
  unsigned threads = 0;
};

/// Bad command-line input that the parser itself cannot catch.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct TimeGrid {
  double t_max = std::numeric_limits<double>::quiet_NaN();
  int points = 201;
  std::vector<double> times;
};

void add_time_grid(CLI::App& app, TimeGrid& grid);

/// Explicit --times, else `points` samples on [0, t_max] (t_max falling back to `fallback`).
std::vector<double> make_times(const TimeGrid& grid, std::optional<double> fallback);

struct Range {
  double from = 0.0;
  double to = 0.0;
  int count = 11;
};

void add_range(CLI::App& app, Range& range, const std::string& what);

/// Evenly spaced values; a zero-length range gives one value.
std::vector<double> make_range(const Range& range);

/// "qbm rates" for the leaf subcommand.
std::string command_path(const CLI::App& leaf);

Json provenance(const Session& session, const CLI::App& leaf);

/// Writes `record` as JSON (default) or as a one-row CSV.
void emit_record(const Session& session, const CLI::App& leaf, Json record);

/// Writes `table` as CSV (default) or as JSON columns/rows.
void emit_table(const Session& session, const CLI::App& leaf, io::CsvTable table);

/// Writes a CSV file with provenance to `path`.
void write_table_file(const Session& session, const CLI::App& leaf, const std::string& path,
                      io::CsvTable table);

std::string cell(double value);
std::string cell(const std::optional<double>& value);

/// JSON number, or null for non-finite and empty values.
Json number(double value);
Json number(const std::optional<double>& value);

void register_spin_boson(CLI::App& root, Session& session);
void register_spin_gorm(CLI::App& root, Session& session);
void register_loop(CLI::App& root, Session& session);
void register_qbm(CLI::App& root, Session& session);
void register_figures(CLI::App& root, Session& session);

} // namespace overdamp::cli
