#include <cmath>
#include <memory>

#include "common.hpp"
#include "overdamp/errors.hpp"
#include "overdamp/spin_gorm.hpp"

namespace overdamp::cli {

namespace {

struct GormArgs {
  int n_total = 1500;
  double eta = 0.0;
  double omega0 = 0.01;
  double eps = 0.0;
  double delta_eps = 0.025;
  double hbar = 1.0;
  std::uint64_t seed = 1;
  std::string method = "exact";
  spin::BlochVector b0{std::sqrt(8.0) / 3.0, 0.0, 1.0 / 3.0};
  TimeGrid grid;
};

gorm::GormModel model_of(const GormArgs& a) {
  return gorm::GormModel(a.n_total, a.eta, a.omega0, a.hbar);
}

std::vector<double> times_of(const GormArgs& a, const gorm::GormRates& r) {
  const double fallback = r.gamma > 0.0 ? 3.0 / r.gamma : 10.0 / a.omega0;
  return make_times(a.grid, fallback);
}

spin::Trajectory exact_trajectory(const GormArgs& a, std::span<const double> times) {
  const auto model = model_of(a);
  const auto sample = gorm::sample_goe(model, a.seed);
  return gorm::exact_evolve(model, sample, gorm::MicrocanonicalWindow(a.eps, a.delta_eps), a.b0,
                            times);
}

void add_initial_state(CLI::App& app, GormArgs& a) {
  app.add_option("--x0", a.b0.x, "Initial x");
  app.add_option("--y0", a.b0.y, "Initial y");
  app.add_option("--z0", a.b0.z, "Initial z");
}

} // namespace

void register_spin_gorm(CLI::App& root, Session& session) {
  auto args = std::make_shared<GormArgs>();
  CLI::App* group =
      root.add_subcommand("spin-gorm", "Spin coupled to a random-matrix (GOE) bath");
  group->require_subcommand(1);
  group->add_option("--n", args->n_total, "Total Hilbert-space dimension N (even)");
  group->add_option("--omega0", args->omega0, "Spin frequency");
  group->add_option("--eps", args->eps, "Microcanonical bath energy");
  group->add_option("--delta-eps", args->delta_eps, "Microcanonical window width");
  group->add_option("--hbar", args->hbar, "Planck constant");
  group->add_option("--seed", args->seed, "GOE sampling seed");

  CLI::App* rates = group->add_subcommand("rates", "Markovian rates from the semicircle bath");
  rates->add_option("--eta", args->eta, "Coupling strength")->required();
  rates->callback([&session, args, rates] {
    const auto model = model_of(*args);
    const auto r = gorm::gorm_rates(model, args->eps);
    Json rec;
    rec["N"] = args->n_total;
    rec["eta"] = args->eta;
    rec["omega0"] = args->omega0;
    rec["eps"] = args->eps;
    rec["delta_eps"] = args->delta_eps;
    rec["seed"] = args->seed;
    rec["gamma"] = r.gamma;
    rec["omega2"] = r.omega2;
    rec["z_inf"] = number(r.z_inf);
    rec["regime"] = std::string(spin::regime_name(spin::classify(r.markov(), model.spin())));
    rec["eta_c"] = number(gorm::eta_critical(args->omega0, args->hbar, args->eps));
    emit_record(session, *rates, std::move(rec));
  });

  CLI::App* eta_c = group->add_subcommand("eta-c", "Critical coupling where Omega^2 = 0");
  eta_c->callback([&session, args, eta_c] {
    const auto value = gorm::eta_critical(args->omega0, args->hbar, args->eps);
    if (!value) {
      throw DomainError("--omega0: no critical coupling below eta = 1 for these parameters");
    }
    Json rec;
    rec["omega0"] = args->omega0;
    rec["eps"] = args->eps;
    rec["eta_c"] = *value;
    emit_record(session, *eta_c, std::move(rec));
  });

  CLI::App* evolve = group->add_subcommand("evolve", "Exact or Redfield Bloch-vector trajectory");
  evolve->add_option("--eta", args->eta, "Coupling strength")->required();
  evolve->add_option("--method", args->method, "exact | redfield")
      ->check(CLI::IsMember({"exact", "redfield"}));
  add_initial_state(*evolve, *args);
  add_time_grid(*evolve, args->grid);
  evolve->callback([&session, args, evolve] {
    const auto model = model_of(*args);
    const auto times = times_of(*args, gorm::gorm_rates(model, args->eps));
    const auto traj = args->method == "exact"
                          ? exact_trajectory(*args, times)
                          : gorm::redfield_evolve(model, args->eps, args->b0, times);
    io::CsvTable table;
    table.header = {"t", "x", "y", "z"};
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
      const auto& b = traj.b[i];
      table.rows.push_back({cell(traj.t[i]), cell(b.x), cell(b.y), cell(b.z)});
    }
    emit_table(session, *evolve, std::move(table));
  });

  CLI::App* compare = group->add_subcommand("compare", "Exact against Redfield dynamics");
  compare->add_option("--eta", args->eta, "Coupling strength")->required();
  add_initial_state(*compare, *args);
  add_time_grid(*compare, args->grid);
  compare->callback([&session, args, compare] {
    const auto model = model_of(*args);
    const auto times = times_of(*args, gorm::gorm_rates(model, args->eps));
    const auto exact = exact_trajectory(*args, times);
    const auto redfield = gorm::redfield_evolve(model, args->eps, args->b0, times);
    if (session.format == "json") {
      const auto dev = gorm::compare_exact_redfield(exact, redfield);
      const auto sample = gorm::sample_goe(model, args->seed);
      Json rec;
      rec["N"] = args->n_total;
      rec["eta"] = args->eta;
      rec["seed"] = args->seed;
      rec["shell_size"] =
          gorm::shell_size(sample, gorm::MicrocanonicalWindow(args->eps, args->delta_eps));
      const char* axes[] = {"x", "y", "z"};
      for (int k = 0; k < 3; ++k) rec[std::string("sup_") + axes[k]] = dev.sup[k];
      for (int k = 0; k < 3; ++k) rec[std::string("rms_") + axes[k]] = dev.rms[k];
      emit_record(session, *compare, std::move(rec));
      return;
    }
    io::CsvTable table;
    table.header = {"t", "x_exact", "y_exact", "z_exact", "x_redfield", "y_redfield", "z_redfield"};
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto& e = exact.b[i];
      const auto& r = redfield.b[i];
      table.rows.push_back({cell(times[i]), cell(e.x), cell(e.y), cell(e.z), cell(r.x), cell(r.y),
                            cell(r.z)});
    }
    emit_table(session, *compare, std::move(table));
  });
}

} // namespace overdamp::cli
