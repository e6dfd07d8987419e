#include <cmath>
#include <filesystem>
#include <memory>

#include "common.hpp"
#include "overdamp/parallel.hpp"
#include "overdamp/spin_gorm.hpp"

namespace overdamp::cli {

namespace {

struct FigureArgs {
  std::string out_dir = ".";
  double eta = 0.2;
  double omega0 = 0.01;
  Range omega_range{0.001, 0.45, 200};
  Range eta_range{0.01, 0.3, 291};
  int n_total = 1500;
  std::uint64_t seed = 1;
  double delta_eps = 0.025;
  std::vector<double> etas{0.08, 0.14, 0.20};
  int points = 301;
};

std::string target(const FigureArgs& a, const char* name) {
  std::filesystem::create_directories(a.out_dir);
  return (std::filesystem::path(a.out_dir) / name).string();
}

void report(const Session& session, const CLI::App& leaf, const std::string& path, std::size_t rows) {
  Json rec;
  rec["file"] = path;
  rec["rows"] = rows;
  emit_record(session, leaf, std::move(rec));
}

} // namespace

void register_figures(CLI::App& root, Session& session) {
  auto args = std::make_shared<FigureArgs>();
  CLI::App* group = root.add_subcommand("figures", "CSV datasets behind the spin-GORM figures");
  group->require_subcommand(1);
  group->add_option("--out-dir", args->out_dir, "Directory for the CSV files");

  CLI::App* fig1 = group->add_subcommand("fig1", "Gamma^2 and Omega^2 + Gamma^2 against omega0");
  fig1->add_option("--eta", args->eta, "Coupling strength");
  fig1->add_option("--from", args->omega_range.from, "Smallest omega0");
  fig1->add_option("--to", args->omega_range.to, "Largest omega0");
  fig1->add_option("--count", args->omega_range.count, "Number of omega0 values");
  fig1->callback([&session, args, fig1] {
    const auto omegas = make_range(args->omega_range);
    const auto rows = parallel_map(
        omegas.size(),
        [&](std::size_t i) {
          const gorm::GormModel model(args->n_total, args->eta, omegas[i]);
          const auto r = gorm::gorm_rates(model, 0.0);
          return std::vector<std::string>{cell(omegas[i]), cell(r.gamma * r.gamma),
                                          cell(r.omega2_plus_gamma2())};
        },
        session.threads);
    io::CsvTable table;
    table.header = {"omega0", "gamma2", "omega2_plus_gamma2"};
    table.rows = rows;
    const auto path = target(*args, "fig1.csv");
    write_table_file(session, *fig1, path, std::move(table));
    report(session, *fig1, path, rows.size());
  });

  CLI::App* fig1b = group->add_subcommand("fig1b", "|Re s3| and |Re s4| against eta");
  fig1b->add_option("--omega0", args->omega0, "Spin frequency");
  fig1b->add_option("--from", args->eta_range.from, "Smallest eta");
  fig1b->add_option("--to", args->eta_range.to, "Largest eta");
  fig1b->add_option("--count", args->eta_range.count, "Number of eta values");
  fig1b->callback([&session, args, fig1b] {
    const auto etas = make_range(args->eta_range);
    const auto rows = parallel_map(
        etas.size(),
        [&](std::size_t i) {
          const gorm::GormModel model(args->n_total, etas[i], args->omega0);
          const auto r = gorm::gorm_rates(model, 0.0).markov();
          const auto s = spin::modes(r);
          const auto regime = spin::classify(r, model.spin());
          return std::vector<std::string>{cell(etas[i]), cell(std::abs(s[2].real())),
                                          cell(std::abs(s[3].real())),
                                          std::string(spin::regime_name(regime))};
        },
        session.threads);
    io::CsvTable table;
    table.header = {"eta", "abs_re_s3", "abs_re_s4", "regime"};
    table.rows = rows;
    const auto path = target(*args, "fig1b.csv");
    write_table_file(session, *fig1b, path, std::move(table));
    report(session, *fig1b, path, rows.size());
  });

  CLI::App* fig2 = group->add_subcommand("fig2", "Exact and Redfield trajectories across eta_c");
  fig2->add_option("--n", args->n_total, "Total dimension N (default 1500; 3000 for the larger run)");
  fig2->add_option("--omega0", args->omega0, "Spin frequency");
  fig2->add_option("--seed", args->seed, "GOE sampling seed");
  fig2->add_option("--delta-eps", args->delta_eps, "Microcanonical window width");
  fig2->add_option("--etas", args->etas, "Coupling strengths");
  fig2->add_option("--points", args->points, "Time samples per trajectory on [0, 3 / Gamma]");
  fig2->callback([&session, args, fig2] {
    if (args->points < 1) {
      throw UsageError("--points: time grid is empty");
    }
    const spin::BlochVector b0{std::sqrt(8.0) / 3.0, 0.0, 1.0 / 3.0};
    const gorm::MicrocanonicalWindow window(0.0, args->delta_eps);
    const auto blocks = parallel_map(
        args->etas.size(),
        [&](std::size_t k) {
          const gorm::GormModel model(args->n_total, args->etas[k], args->omega0);
          const double horizon = 3.0 / gorm::gorm_rates(model, 0.0).gamma;
          std::vector<double> times(static_cast<std::size_t>(args->points));
          for (int i = 0; i < args->points; ++i) {
            times[i] = args->points == 1 ? 0.0 : horizon * i / (args->points - 1);
          }
          const auto sample = gorm::sample_goe(model, args->seed);
          const auto exact = gorm::exact_evolve(model, sample, window, b0, times);
          const auto redfield = gorm::redfield_evolve(model, 0.0, b0, times);
          std::vector<std::vector<std::string>> rows;
          for (std::size_t i = 0; i < times.size(); ++i) {
            const auto& e = exact.b[i];
            const auto& r = redfield.b[i];
            rows.push_back({cell(args->etas[k]), cell(times[i]), cell(e.x), cell(e.y), cell(e.z),
                            cell(r.x), cell(r.y), cell(r.z)});
          }
          return rows;
        },
        session.threads);
    io::CsvTable table;
    table.header = {"eta", "t", "x_exact", "y_exact", "z_exact", "x_redfield", "y_redfield",
                    "z_redfield"};
    for (const auto& block : blocks) table.rows.insert(table.rows.end(), block.begin(), block.end());
    const std::size_t n_rows = table.rows.size();
    const auto path = target(*args, "fig2.csv");
    write_table_file(session, *fig2, path, std::move(table));
    report(session, *fig2, path, n_rows);
  });
}

} // namespace overdamp::cli
