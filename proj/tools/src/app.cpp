#include "overdamp_cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "common.hpp"
#include "overdamp/errors.hpp"

namespace overdamp::cli {

namespace {

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return io::format_number(v.get<double>());
  throw UsageError("--config: unsupported value " + v.dump());
}

// Config keys become flags appended after the command line; flags already
// present on the command line win.
std::vector<std::string> inject_config(std::vector<std::string> args) {
  const std::string path = config_path(args);
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) {
    throw UsageError("--config: cannot read '" + path + "'");
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  if (!doc.is_object()) {
    throw UsageError("--config: expected a JSON object");
  }
  std::vector<std::string> extra;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = key.rfind("--", 0) == 0 ? key : "--" + key;
    if (flag == "--config" || has_flag(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      extra.push_back(flag);
      for (const auto& v : value) extra.push_back(scalar_text(v));
    } else if (!value.is_null()) {
      extra.push_back(flag);
      extra.push_back(scalar_text(value));
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

} // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Session session;
  session.out = &out;
  session.err = &err;
  if (const char* env = std::getenv("OVERDAMP_TEST_MODE"); env != nullptr && *env != '\0') {
    session.deterministic = true;
  }

  CLI::App app("Relaxation rates, modes and trajectories of damped quantum systems", "overdamp");
  app.set_version_flag("--version", std::string(OVERDAMP_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--config", session.config, "JSON file whose keys mirror the flags");
  app.add_option("-o,--output", session.output, "Output file (default: stdout)");
  app.add_option("--format", session.format, "csv or json (default depends on the command)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--deterministic", session.deterministic, "Suppress the provenance timestamp");
  app.add_option("--threads", session.threads, "Worker threads for sweeps (0 = all cores)");

  register_spin_boson(app, session);
  register_spin_gorm(app, session);
  register_loop(app, session);
  register_qbm(app, session);
  register_figures(app, session);

  try {
    std::vector<std::string> args = inject_config(raw_args);
    std::reverse(args.begin(), args.end()); // CLI11 consumes the vector from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

} // namespace overdamp::cli
