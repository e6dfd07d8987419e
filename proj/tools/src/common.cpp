#include "common.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "overdamp/errors.hpp"

namespace overdamp::cli {

void add_time_grid(CLI::App& app, TimeGrid& grid) {
  app.add_option("--t-max", grid.t_max, "Final time of the uniform grid");
  app.add_option("--points", grid.points, "Number of time samples including t = 0");
  app.add_option("--times", grid.times, "Explicit time samples (override --t-max/--points)");
}

std::vector<double> make_times(const TimeGrid& grid, std::optional<double> fallback) {
  if (!grid.times.empty()) {
    for (double t : grid.times) {
      if (!(t >= 0.0) || !std::isfinite(t)) throw UsageError("--times: samples must be finite and >= 0");
    }
    return grid.times;
  }
  if (grid.points < 1) {
    throw UsageError("--points: time grid is empty");
  }
  const double t_max = std::isnan(grid.t_max) ? fallback.value_or(grid.t_max) : grid.t_max;
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw UsageError("--t-max: must be given as a finite value >= 0");
  }
  std::vector<double> times(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) {
    times[i] = grid.points == 1 ? t_max : t_max * i / (grid.points - 1);
  }
  return times;
}

void add_range(CLI::App& app, Range& range, const std::string& what) {
  app.add_option("--from", range.from, "First " + what)->required();
  app.add_option("--to", range.to, "Last " + what)->required();
  app.add_option("--count", range.count, "Number of grid points");
}

std::vector<double> make_range(const Range& range) {
  if (!std::isfinite(range.from) || !std::isfinite(range.to)) {
    throw UsageError("--from/--to: must be finite");
  }
  if (range.to < range.from) {
    throw UsageError("--to: range must be increasing");
  }
  if (range.from == range.to) return {range.from};
  if (range.count < 1) {
    throw UsageError("--count: must be >= 1");
  }
  if (range.count == 1) return {range.from};
  std::vector<double> out(static_cast<std::size_t>(range.count));
  for (int i = 0; i < range.count; ++i) {
    out[i] = range.from + (range.to - range.from) * i / (range.count - 1);
  }
  out.back() = range.to;
  return out;
}

std::string command_path(const CLI::App& leaf) {
  std::vector<std::string> names;
  for (const CLI::App* app = &leaf; app != nullptr && app->get_parent() != nullptr;
       app = app->get_parent()) {
    names.push_back(app->get_name());
  }
  std::string path;
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    if (!path.empty()) path += ' ';
    path += *it;
  }
  return path;
}

namespace {

Json parse_scalar(const std::string& text) {
  long long i = 0;
  const auto [iptr, iec] = std::from_chars(text.data(), text.data() + text.size(), i);
  if (iec == std::errc{} && iptr == text.data() + text.size()) return i;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc{} && ptr == text.data() + text.size()) {
    return number(v);
  }
  return text;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

void add_options(Json& params, const CLI::App& app) {
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name == "output" || name == "format" ||
        name == "deterministic" || name == "threads" || name == "version") {
      continue;
    }
    if (opt->get_expected_min() == 0) {
      params[name] = opt->count() > 0;
      continue;
    }
    std::vector<std::string> values = opt->results();
    if (values.empty()) {
      const std::string def = opt->get_default_str();
      if (def.empty()) continue;
      values = {def};
    }
    if (values.size() == 1 && opt->get_expected_max() <= 1) {
      params[name] = parse_scalar(values.front());
    } else {
      Json list = Json::array();
      for (const auto& v : values) list.push_back(parse_scalar(v));
      params[name] = std::move(list);
    }
  }
}

std::ostream& sink(const Session& session, std::ofstream& file) {
  if (session.output.empty() || session.output == "-") return *session.out;
  file.open(session.output, std::ios::binary);
  if (!file) {
    throw UsageError("--output: cannot open '" + session.output + "' for writing");
  }
  return file;
}

std::string format_of(const Session& session, const char* fallback) {
  const std::string f = session.format.empty() ? fallback : session.format;
  if (f != "csv" && f != "json") {
    throw UsageError("--format: expected csv or json");
  }
  return f;
}

std::string json_cell(const Json& v) {
  if (v.is_null()) return "nan";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number()) return io::format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

} // namespace

Json provenance(const Session& session, const CLI::App& leaf) {
  Json params = Json::object();
  std::vector<const CLI::App*> chain;
  for (const CLI::App* app = &leaf; app != nullptr; app = app->get_parent()) chain.push_back(app);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) add_options(params, **it);

  Json p;
  p["tool"] = "overdamp";
  p["version"] = OVERDAMP_VERSION;
  p["command"] = command_path(leaf);
  p["parameters"] = std::move(params);
  if (!session.deterministic) p["timestamp"] = timestamp();
  return p;
}

void emit_record(const Session& session, const CLI::App& leaf, Json record) {
  std::ofstream file;
  std::ostream& os = sink(session, file);
  if (format_of(session, "json") == "json") {
    record["provenance"] = provenance(session, leaf);
    os << record.dump(2) << '\n';
    return;
  }
  io::CsvTable table;
  table.provenance = provenance(session, leaf).dump();
  std::vector<std::string> row;
  for (const auto& [key, value] : record.items()) {
    table.header.push_back(key);
    row.push_back(json_cell(value));
  }
  table.rows.push_back(std::move(row));
  io::write_csv(os, table);
}

void emit_table(const Session& session, const CLI::App& leaf, io::CsvTable table) {
  std::ofstream file;
  std::ostream& os = sink(session, file);
  if (format_of(session, "csv") == "csv") {
    table.provenance = provenance(session, leaf).dump();
    io::write_csv(os, table);
    return;
  }
  Json doc;
  doc["columns"] = table.header;
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json jr = Json::array();
    for (const auto& c : r) jr.push_back(parse_scalar(c));
    rows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(rows);
  doc["provenance"] = provenance(session, leaf);
  os << doc.dump() << '\n';
}

void write_table_file(const Session& session, const CLI::App& leaf, const std::string& path,
                      io::CsvTable table) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw UsageError("--out-dir: cannot write '" + path + "'");
  }
  table.provenance = provenance(session, leaf).dump();
  io::write_csv(file, table);
}

std::string cell(double value) { return io::format_number(value); }

std::string cell(const std::optional<double>& value) {
  return value ? io::format_number(*value) : "nan";
}

Json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

Json number(const std::optional<double>& value) {
  return value ? number(*value) : Json(nullptr);
}

} // namespace overdamp::cli
